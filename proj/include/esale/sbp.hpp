#pragma once

#include <esale/types.hpp>

#include <span>
#include <vector>

namespace esale {

/// Legendre-Gauss-Lobatto nodes and weights on [-1, 1].
struct NodeSet1D {
  int p = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return p + 1; }
};

/// Diagonal-norm collocation SBP operator. Dense matrices are row-major,
/// (p+1)x(p+1).
struct Operator1D {
  NodeSet1D nodeset;
  std::vector<double> H;  // diagonal entries of the norm
  std::vector<double> D;
  std::vector<double> Q;
  std::vector<double> E;
  std::vector<double> tL;
  std::vector<double> tR;

  int p() const { return nodeset.p; }
  int n() const { return nodeset.p + 1; }
  double d(int i, int j) const { return D[i * n() + j]; }
  double q(int i, int j) const { return Q[i * n() + j]; }
  double e(int i, int j) const { return E[i * n() + j]; }
  /// Smallest gap between consecutive nodes.
  double min_spacing() const;
};

NodeSet1D build_lgl_nodeset(int p);
Operator1D build_operator(int p);

/// Nodes of an element are ordered with xi_3 varying fastest:
/// idx = (i*n + j)*n + k for (xi_1, xi_2, xi_3) indices (i, j, k).
inline int node_index(int n, int i, int j, int k) { return (i * n + j) * n + k; }

/// Stride between consecutive nodes along direction dir (0-based).
inline int line_stride(int n, int dir) { return dir == 0 ? n * n : (dir == 1 ? n : 1); }

/// Apply D along every line of direction dir (1, 2 or 3) of a tensor-product
/// field with `ncomp` interleaved components per node.
void apply_line_derivative(const Operator1D& op, std::span<const double> field,
                           int direction, std::span<double> out, int ncomp = 1);

std::vector<double> apply_line_derivative(const Operator1D& op,
                                          const std::vector<double>& field,
                                          int direction);

/// Plain-text dump of D, H and E for audits.
std::string dump_operator(const Operator1D& op);

}  // namespace esale

#pragma once

#include <esale/sbp.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace esale {

/// Time-dependent map from computational vertex positions to physical space.
struct MotionSpec {
  enum class Kind { Static, VortexMap, ShockMap, PeriodicBox };
  Kind kind = Kind::Static;
  double A1 = 0.0, A2 = 0.0, A3 = 0.0;
  double nu = 0.0;
  double omega = 0.0;
  double K = 1.0;  // vortex map z scaling
  double perturbation_fraction = 0.0;
  std::uint64_t seed = 0;

  static MotionSpec make_static();
  static MotionSpec vortex(int K);
  static MotionSpec shock(std::uint64_t seed, double perturbation = 0.25);
  static MotionSpec periodic_box();

  /// Physical position of a computational point at time tau.
  Vec3 position(const Vec3& X, double tau) const;
  /// d(position)/d(tau).
  Vec3 velocity(const Vec3& X, double tau) const;
};

enum class FaceKind { Interior, Dirichlet, Periodic };

struct FaceLink {
  FaceKind kind = FaceKind::Dirichlet;
  int neighbor = -1;
  int neighbor_face = -1;
};

/// Structured hexahedral mesh of [-1,1]^3 in computational space.
/// Faces are numbered 0..5 as (xi_1 = -1, xi_1 = +1, xi_2 = -1, ...).
struct Mesh {
  std::array<int, 3> K{1, 1, 1};
  std::array<bool, 3> periodic{false, false, false};
  MotionSpec motion;
  std::vector<Vec3> vertices;  // computational coordinates
  std::vector<std::array<int, 8>> elem_vertices;
  std::vector<std::array<FaceLink, 6>> faces;

  int num_elements() const { return static_cast<int>(elem_vertices.size()); }
  int element_id(int i, int j, int k) const { return (i * K[1] + j) * K[2] + k; }
  int vertex_id(int i, int j, int k) const { return (i * (K[1] + 1) + j) * (K[2] + 1) + k; }
  std::string dump() const;
};

Mesh build_mesh(int K1, int K2, int K3, const MotionSpec& motion,
                std::array<bool, 3> periodic_dirs = {false, false, false});

/// Node coordinates and velocities of an element.
struct ElementCoords {
  std::vector<Vec3> x;
  std::vector<Vec3> xdot;
};

/// Metric terms a_lm = J dxi_l/dx_m (stored at [node*9 + l*3 + m]), mesh
/// velocity metrics b_l = J dxi_l/dt ([node*3 + l]) and J = det(dx/dxi).
struct ElementGeometry {
  std::vector<Vec3> x;
  std::vector<Vec3> xdot;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> Jdet;

  Vec3 a_row(int node, int l) const {
    const double* p = &a[node * 9 + l * 3];
    return Vec3(p[0], p[1], p[2]);
  }
};

struct Metrics {
  std::vector<double> a;
  std::vector<double> Jdet;
};

/// Precomputed tensor-product node tables for one operator.
class ElementLayout {
 public:
  explicit ElementLayout(const Operator1D& op);
  const Operator1D& op() const { return *op_; }
  int n() const { return n_; }
  int num_nodes() const { return n_ * n_ * n_; }
  int face_size() const { return n_ * n_; }
  /// Volume node index of the k-th node on face f.
  int face_node(int f, int k) const { return face_nodes_[f][k]; }
  /// Trilinear shape-function values (8 per node).
  const std::vector<std::array<double, 8>>& shape() const { return shape_; }

 private:
  const Operator1D* op_;
  int n_;
  std::array<std::vector<int>, 6> face_nodes_;
  std::vector<std::array<double, 8>> shape_;
};

ElementCoords element_coordinates(const Mesh& mesh, int element, const ElementLayout& layout,
                                  double tau);

/// Conservative curl-form metrics and determinant Jacobian. Throws
/// MeshTangling if J <= 0 at any node.
Metrics compute_metrics(const std::vector<Vec3>& x, const Operator1D& op);

/// b_l = -sum_m a_lm xdot_m.
std::vector<double> mesh_velocity_metrics(const std::vector<double>& a,
                                          const std::vector<Vec3>& xdot);

/// dJ_int/dtau = -sum_l D_l b_l.
std::vector<double> advance_integrated_jacobian(const std::vector<double>& b,
                                                const Operator1D& op);

ElementGeometry element_geometry(const Mesh& mesh, int element, const ElementLayout& layout,
                                 double tau);

/// max over nodes and m of |sum_l D_l a_lm| divided by max |a|.
double gcl_residual(const std::vector<double>& a, const Operator1D& op);
/// Per-node version of gcl_residual.
std::vector<double> gcl_residual_field(const std::vector<double>& a, const Operator1D& op);

}  // namespace esale

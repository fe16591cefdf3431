#pragma once

#include <esale/ec_flux.hpp>
#include <esale/mesh.hpp>
#include <esale/viscous.hpp>

#include <functional>
#include <vector>

namespace esale {

struct RhsConfig {
  bool spatial_dissipation = true;        // Y |Lambda| Y^T jump penalty
  bool mesh_velocity_dissipation = true;  // |b_l| Y Y^T jump penalty
  bool viscous = false;
  TwoPointFluxKind usc_kind = TwoPointFluxKind::Usc2;

  void set_dissipation(bool on) { spatial_dissipation = mesh_velocity_dissipation = on; }
};

/// Exact/boundary state at a physical point and time.
using StateFn = std::function<State5(const Vec3& x, double t)>;

/// State plus integrated Jacobian, both flat per element and node. Q holds
/// the conserved product J_int * q, five values per node.
struct CoupledState {
  std::vector<double> Q;
  std::vector<double> J;

  CoupledState& axpy(double alpha, const CoupledState& x);
};

// Element-level building blocks (exposed for tests and bindings).

/// Hadamard-form volume residual of one element: for each node i and
/// direction l, sum_j D_ij [(a_l(i)+a_l(j)) . Fsc(q_i,q_j) + (b_l(i)+b_l(j)) Usc(q_i,q_j)].
std::vector<Vec5> volume_terms(const std::vector<State5>& q, const ElementGeometry& geo,
                               const Operator1D& op, const GasParams& g,
                               TwoPointFluxKind usc_kind = TwoPointFluxKind::Usc2);

/// Entropy-conservative SAT at one face node (added to d(Jq)/dtau). `side`
/// is +1 on a xi_l = +1 face and -1 on a xi_l = -1 face; a_l and b_l are the
/// metric row and mesh-velocity metric at the node.
Vec5 interface_sat(const State5& q_self, const State5& q_nb, const Vec3& a_l, double b_l,
                   int side, double w_end, const GasParams& g,
                   TwoPointFluxKind usc_kind = TwoPointFluxKind::Usc2);

/// Entropy-stable jump dissipation at one face node (added to d(Jq)/dtau).
Vec5 interface_dissipation(const State5& q_self, const State5& q_nb, const Vec3& a_l, double b_l,
                           double w_end, const GasParams& g, bool spatial = true,
                           bool mesh_velocity = true);

/// Dirichlet boundary SAT: the interface terms with the neighbor replaced by
/// the exact state at the face node.
Vec5 dirichlet_sat(const State5& q_self, const State5& q_exact, const Vec3& a_l, double b_l,
                   int side, double w_end, const GasParams& g, const RhsConfig& cfg);

/// Semi-discrete operator on a whole mesh.
class Discretization {
 public:
  Discretization(Mesh mesh, int p, GasParams gas, RhsConfig cfg, StateFn boundary = {});

  const Mesh& mesh() const { return mesh_; }
  const Operator1D& op() const { return op_; }
  const ElementLayout& layout() const { return layout_; }
  const GasParams& gas() const { return gas_; }
  const RhsConfig& config() const { return cfg_; }
  RhsConfig& config() { return cfg_; }
  bool moving() const { return moving_; }
  int num_elements() const { return mesh_.num_elements(); }
  int nodes_per_element() const { return layout_.num_nodes(); }
  std::size_t num_nodes() const {
    return static_cast<std::size_t>(num_elements()) * nodes_per_element();
  }

  /// Geometry of every element at tau (cached).
  const std::vector<ElementGeometry>& geometry(double tau);
  /// dJ/dtau from the temporal GCL at tau, flat per node.
  const std::vector<double>& jacobian_rate(double tau);

  /// Initial coupled state: q from `fn` at the nodes at time tau, J_int = J_det.
  CoupledState initialize(const StateFn& fn, double tau);

  /// Time derivative of the coupled state.
  void rates(double tau, const CoupledState& y, CoupledState& dy);

  /// Nodal q = Q / J_int.
  std::vector<State5> primitive_states(const CoupledState& y) const;

  /// sum over nodes of H * (J_int q): discrete conserved totals.
  Vec5 conserved_totals(const CoupledState& y) const;
  /// sum over nodes of H * J_int * S(q).
  double entropy_total(const CoupledState& y) const;
  /// d/dtau of entropy_total given the rates at the same state.
  double entropy_rate(const CoupledState& y, const CoupledState& dy) const;

  /// Tensor-product quadrature weight of a volume node.
  double node_weight(int node) const { return wvol_[node]; }

  /// Auxiliary LDG gradients Theta_n (n = 0..2) of the entropy variables,
  /// flat [element][node][n]; boundary traces use the Dirichlet state.
  std::vector<Vec5> ldg_gradients(double tau, const CoupledState& y);

 private:
  void prepare_nodes(double tau, const CoupledState& y);
  void prepare_boundary(double tau);
  void add_inviscid(int e, double* out);
  void compute_viscous_fluxes(int e);
  void add_viscous(int e, double* out);
  void neighbor_node(int e, int f, int k, const FluxPoint*& fp, const Vec5*& q,
                     const Vec5*& w) const;

  Mesh mesh_;
  Operator1D op_;
  ElementLayout layout_;
  GasParams gas_;
  RhsConfig cfg_;
  StateFn boundary_;
  bool moving_;
  std::vector<double> wvol_;

  double geo_tau_ = 0.0;
  bool geo_valid_ = false;
  std::vector<ElementGeometry> geo_;
  std::vector<double> dJ_;

  // Per-stage work arrays.
  std::vector<Vec5> q_;
  std::vector<FluxPoint> fp_;
  std::vector<Vec5> w_;
  std::vector<Vec5> theta_;  // [node][n]
  std::vector<Vec5> fvisc_;  // [node][l]
  // Dirichlet ghost data indexed by boundary slot [element][face] -> offset.
  std::vector<int> bslot_;
  std::vector<Vec5> gq_;
  std::vector<FluxPoint> gfp_;
  std::vector<Vec5> gw_;
  double prepared_tau_ = 0.0;
};

}  // namespace esale

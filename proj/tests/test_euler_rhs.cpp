#include <esale/euler_rhs.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace esale;

namespace {

constexpr double kPi = std::numbers::pi;

State5 smooth_state(const Vec3& x, const GasParams& g) {
  const double rho = 1.0 + 0.2 * std::sin(kPi * x[0]) * std::cos(kPi * x[1]) + 0.1 * std::sin(kPi * x[2]);
  const Vec3 V(0.3 + 0.1 * std::cos(kPi * x[1]), 0.2 + 0.1 * std::sin(kPi * x[2]),
               0.1 + 0.1 * std::cos(kPi * x[0]));
  const double T = 1.0 + 0.1 * std::sin(kPi * (x[0] - x[2]));
  return state_from_primitive(rho, V, T, g);
}

State5 random_state(std::mt19937_64& rng, const GasParams& g) {
  std::uniform_real_distribution<double> lg(std::log(0.5), std::log(2.0));
  std::uniform_real_distribution<double> uv(-1.0, 1.0);
  return state_from_primitive(std::exp(lg(rng)), Vec3(uv(rng), uv(rng), uv(rng)),
                              std::exp(lg(rng)), g);
}

Discretization periodic_box(int p, bool dissipation) {
  RhsConfig cfg;
  cfg.set_dissipation(dissipation);
  return Discretization(build_mesh(2, 2, 2, MotionSpec::periodic_box(), {true, true, true}), p,
                        GasParams{}, cfg);
}

}  // namespace

TEST(VolumeTerms, LineSumsTelescopeToFaceFluxes) {
  // On an affine static element, sum_i w_i sum_j D_ij (2a) . Fsc(q_i, q_j)
  // collapses to the face values a . F(q) by symmetry of Fsc and Q + Q^T = E.
  const GasParams g;
  const Operator1D op = build_operator(3);
  const ElementLayout layout(op);
  const Mesh mesh = build_mesh(2, 1, 1, MotionSpec::make_static());
  const ElementGeometry geo = element_geometry(mesh, 1, layout, 0.0);
  std::mt19937_64 rng(31);
  std::vector<State5> q(layout.num_nodes());
  for (auto& s : q) s = random_state(rng, g);
  const auto res = volume_terms(q, geo, op, g);
  const int n = op.n();
  Vec5 lhs = Vec5::Zero(), rhs = Vec5::Zero();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const int I = node_index(n, i, j, k);
        lhs += op.H[i] * op.H[j] * op.H[k] * res[I];
      }
    }
  }
  for (int f = 0; f < 6; ++f) {
    const int l = f / 2;
    const double side = (f % 2 == 0) ? -1.0 : 1.0;
    for (int k = 0; k < layout.face_size(); ++k) {
      const int I = layout.face_node(f, k);
      const int idx[3] = {I / (n * n), (I / n) % n, I % n};
      double wf = 1.0;
      for (int d = 0; d < 3; ++d) {
        if (d != l) wf *= op.H[idx[d]];
      }
      Vec5 F = Vec5::Zero();
      for (int m = 0; m < 3; ++m) F += geo.a[I * 9 + l * 3 + m] * physical_flux(q[I], m + 1, g);
      rhs += side * wf * F;
    }
  }
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-13 * rhs.cwiseAbs().maxCoeff() + 1e-14);
}

TEST(VolumeTerms, ConstantStateOnMovingElement) {
  // sum_j D_ij (a_i + a_j) = D_ij a_j (GCL) so the volume term of a constant
  // state reduces to sum_l D_l a_l . F + D_l b_l q = -q dJ/dtau.
  const GasParams g;
  const Operator1D op = build_operator(4);
  const ElementLayout layout(op);
  const Mesh mesh = build_mesh(2, 2, 2, MotionSpec::shock(4, 0.2));
  const State5 q0 = state_from_primitive(1.1, Vec3(0.3, -0.2, 0.5), 0.9, g);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry geo = element_geometry(mesh, e, layout, 0.3);
    const auto res = volume_terms(std::vector<State5>(layout.num_nodes(), q0), geo, op, g);
    const auto dJ = advance_integrated_jacobian(geo.b, op);
    for (int i = 0; i < layout.num_nodes(); ++i) {
      EXPECT_LT((res[i] + q0 * dJ[i]).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(InterfaceSat, VanishesForEqualStates) {
  const GasParams g;
  const State5 q = state_from_primitive(1.0, Vec3(0.2, 0.1, 0.0), 1.3, g);
  const Vec5 s = interface_sat(q, q, Vec3(0.4, 0.1, -0.2), 0.3, 1, 1.0 / 6.0, g);
  EXPECT_LT(s.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(InterfaceSat, EntropyFluxTelescopes) {
  // w (W_L . SAT_L + W_R . SAT_R) = (a . F^S + b S)_L - (a . F^S + b S)_R.
  const GasParams g;
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (TwoPointFluxKind kind : {TwoPointFluxKind::Usc1, TwoPointFluxKind::Usc2}) {
    for (int t = 0; t < 200; ++t) {
      const State5 qL = random_state(rng, g), qR = random_state(rng, g);
      const Vec3 a(u(rng), u(rng), u(rng));
      const double b = u(rng);
      const double w = 0.1;
      const Vec5 sL = interface_sat(qL, qR, a, b, +1, w, g, kind);
      const Vec5 sR = interface_sat(qR, qL, a, b, -1, w, g, kind);
      const double lhs = w * (entropy_vars(qL, g).dot(sL) + entropy_vars(qR, g).dot(sR));
      const EntropyAndFlux eL = entropy_and_flux(qL, g), eR = entropy_and_flux(qR, g);
      const double rhs = (a.dot(eL.F) + b * eL.S) - (a.dot(eR.F) + b * eR.S);
      EXPECT_NEAR(lhs, rhs, 1e-12);
    }
  }
}

TEST(InterfaceDissipation, MatchesEigenvectorFormAndIsDissipative) {
  const GasParams g;
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const State5 qL = random_state(rng, g), qR = random_state(rng, g);
    const Vec3 a(u(rng), u(rng), u(rng));
    const double b = u(rng);
    const double w = 0.2;
    const Vec5 dW = entropy_vars(qL, g) - entropy_vars(qR, g);
    const Eigensystem es = entropy_scaled_eigensystem(roe_average(qL, qR, g), a, 0.0, g);
    Vec5 lam = es.lambda.cwiseAbs() + Vec5::Constant(std::abs(b));
    const Vec5 ref = -(1.0 / w) * es.Y * lam.asDiagonal() * es.Y.transpose() * dW;
    const Vec5 d = interface_dissipation(qL, qR, a, b, w, g);
    EXPECT_LT((d - ref).cwiseAbs().maxCoeff(), 1e-11 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
    const Vec5 spatial_only = interface_dissipation(qL, qR, a, b, w, g, true, false);
    const Vec5 ref_s = -(1.0 / w) * es.Y * es.lambda.cwiseAbs().asDiagonal() * es.Y.transpose() * dW;
    EXPECT_LT((spatial_only - ref_s).cwiseAbs().maxCoeff(), 1e-11 * std::max(1.0, ref_s.cwiseAbs().maxCoeff()));
    const Vec5 mesh_only = interface_dissipation(qL, qR, a, b, w, g, false, true);
    const Vec5 ref_m = -(std::abs(b) / w) * es.Y * es.Y.transpose() * dW;
    EXPECT_LT((mesh_only - ref_m).cwiseAbs().maxCoeff(), 1e-11 * std::max(1.0, ref_m.cwiseAbs().maxCoeff()));
    EXPECT_EQ(interface_dissipation(qL, qR, a, b, w, g, false, false), Vec5::Zero());
    // Opposite sides receive opposite contributions; the pair removes entropy.
    const Vec5 dR = interface_dissipation(qR, qL, a, b, w, g);
    EXPECT_LT((d + dR).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, d.cwiseAbs().maxCoeff()));
    EXPECT_LE(dW.dot(d), 1e-14);
  }
}

TEST(Discretization, RejectsInconsistentConfiguration) {
  const Mesh closed = build_mesh(1, 1, 1, MotionSpec::make_static());
  RhsConfig cfg;
  EXPECT_THROW(Discretization(closed, 2, GasParams{}, cfg), ContractViolation);
  cfg.viscous = true;
  const StateFn fn = [](const Vec3&, double) { return State5(1.0, 0.0, 0.0, 0.0, 2.5); };
  EXPECT_THROW(Discretization(closed, 2, GasParams{}, cfg, fn), ConfigError);
  cfg.viscous = false;
  cfg.usc_kind = TwoPointFluxKind::IsmailRoeF;
  EXPECT_THROW(Discretization(closed, 2, GasParams{}, cfg, fn), ConfigError);
  EXPECT_THROW(Discretization(closed, 0, GasParams{}, RhsConfig{}, fn), ConfigError);
}

TEST(Discretization, InitializeStoresJacobianWeightedState) {
  Discretization d = periodic_box(2, true);
  const GasParams g;
  const CoupledState y = d.initialize([&](const Vec3& x, double) { return smooth_state(x, g); }, 0.25);
  const auto& geo = d.geometry(0.25);
  const auto q = d.primitive_states(y);
  const int N = d.nodes_per_element();
  for (int e = 0; e < d.num_elements(); ++e) {
    for (int i = 0; i < N; ++i) {
      EXPECT_DOUBLE_EQ(y.J[e * N + i], geo[e].Jdet[i]);
      EXPECT_LT((q[e * N + i] - smooth_state(geo[e].x[i], g)).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(Discretization, FreestreamIsPreservedOnMovingMesh) {
  const GasParams g;
  const State5 q0 = state_from_primitive(1.0, Vec3(0.4, -0.1, 0.2), 1.0, g);
  const StateFn fn = [&](const Vec3&, double) { return q0; };
  for (int usc : {1, 2}) {
    RhsConfig cfg;
    cfg.usc_kind = parse_usc_kind(usc);
    Discretization d(build_mesh(2, 2, 2, MotionSpec::shock(3, 0.25)), 3, g, cfg, fn);
    for (double tau : {0.0, 0.2, 0.45}) {
      CoupledState y = d.initialize(fn, tau);
      CoupledState dy = y;
      d.rates(tau, y, dy);
      // d(Jq)/dtau = q dJ/dtau for a uniform state.
      for (std::size_t i = 0; i < y.J.size(); ++i) {
        for (int c = 0; c < 5; ++c) EXPECT_NEAR(dy.Q[i * 5 + c], q0[c] * dy.J[i], 1e-12);
      }
    }
  }
}

TEST(Discretization, PeriodicConservationAndEntropy) {
  // Nodal noise makes the trace discontinuous so the interface dissipation acts.
  const GasParams g;
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> noise(-0.02, 0.02);
  const StateFn fn = [&](const Vec3& x, double) {
    State5 q = smooth_state(x, g);
    for (int c = 0; c < 5; ++c) q[c] *= 1.0 + noise(rng);
    return q;
  };
  for (bool diss : {false, true}) {
    Discretization d = periodic_box(3, diss);
    for (double tau : {0.1, 0.6}) {
      CoupledState y = d.initialize(fn, tau);
      CoupledState dy = y;
      d.rates(tau, y, dy);
      const Vec5 rate = d.conserved_totals(dy);
      double scale = 0.0;
      for (double v : dy.Q) scale += std::abs(v);
      EXPECT_LT(rate.cwiseAbs().maxCoeff(), 1e-13 * scale);
      const double s = d.entropy_rate(y, dy);
      if (diss) {
        EXPECT_LT(s, -1e-8);
      } else {
        EXPECT_LT(std::abs(s), 1e-12 * scale);
      }
      // Total J tracks the fixed domain volume.
      double dvol = 0.0;
      for (std::size_t i = 0; i < dy.J.size(); ++i) dvol += d.node_weight(i % d.nodes_per_element()) * dy.J[i];
      EXPECT_LT(std::abs(dvol), 1e-13);
    }
  }
}

TEST(Discretization, EntropyRateIsDerivativeOfEntropyTotal) {
  const GasParams g;
  Discretization d = periodic_box(2, true);
  CoupledState y = d.initialize([&](const Vec3& x, double) { return smooth_state(x, g); }, 0.0);
  CoupledState dy = y;
  d.rates(0.0, y, dy);
  const double h = 1e-6;
  CoupledState yp = y, ym = y;
  yp.axpy(h, dy);
  ym.axpy(-h, dy);
  const double fd = (d.entropy_total(yp) - d.entropy_total(ym)) / (2.0 * h);
  EXPECT_NEAR(d.entropy_rate(y, dy), fd, 1e-7 * std::max(1.0, std::abs(fd)));
}

TEST(Discretization, InadmissibleStateIsReported) {
  const GasParams g;
  Discretization d = periodic_box(2, true);
  CoupledState y = d.initialize([&](const Vec3& x, double) { return smooth_state(x, g); }, 0.0);
  y.Q[4] = -1.0;  // negative total energy at the first node
  CoupledState dy = y;
  EXPECT_THROW(d.rates(0.0, y, dy), InadmissibleState);
}

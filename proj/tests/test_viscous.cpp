#include <esale/euler_rhs.hpp>
#include <esale/viscous.hpp>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace esale;

namespace {

constexpr double kPi = std::numbers::pi;

GasParams viscous_gas() {
  GasParams g;
  g.mu = 0.05;
  g.Pr = 0.72;
  return g;
}

State5 random_state(std::mt19937_64& rng, const GasParams& g) {
  std::uniform_real_distribution<double> lg(std::log(0.2), std::log(5.0));
  std::uniform_real_distribution<double> uv(-1.5, 1.5);
  return state_from_primitive(std::exp(lg(rng)), Vec3(uv(rng), uv(rng), uv(rng)),
                              std::exp(lg(rng)), g);
}

State5 smooth_state(const Vec3& x, const GasParams& g) {
  const double rho = 1.0 + 0.2 * std::sin(kPi * x[0]) * std::cos(kPi * x[1]);
  const Vec3 V(0.3 + 0.1 * std::cos(kPi * x[1]), 0.2 + 0.1 * std::sin(kPi * x[2]),
               0.1 * std::cos(kPi * x[0]));
  const double T = 1.0 + 0.1 * std::sin(kPi * (x[0] - x[2]));
  return state_from_primitive(rho, V, T, g);
}

}  // namespace

TEST(ViscousFlux, SimpleShear) {
  const GasParams g = viscous_gas();
  Mat3 gradV = Mat3::Zero();
  gradV(0, 1) = 2.0;  // dV1/dx2
  Vec5 Fv[3];
  viscous_flux_from_primitive_gradients(Vec3(1.0, 0.0, 0.0), gradV, Vec3::Zero(), g, Fv);
  EXPECT_DOUBLE_EQ(Fv[1][1], 2.0 * g.mu);
  EXPECT_DOUBLE_EQ(Fv[0][2], 2.0 * g.mu);
  EXPECT_DOUBLE_EQ(Fv[1][4], 2.0 * g.mu);  // V . tau
  EXPECT_DOUBLE_EQ(Fv[0][1], 0.0);
  EXPECT_DOUBLE_EQ(Fv[2][4], 0.0);
}

TEST(ViscousFlux, HeatConductionOnly) {
  const GasParams g = viscous_gas();
  Vec5 Fv[3];
  viscous_flux_from_primitive_gradients(Vec3::Zero(), Mat3::Zero(), Vec3(0.0, 0.0, 3.0), g, Fv);
  EXPECT_DOUBLE_EQ(Fv[2][4], 3.0 * g.kappa());
  EXPECT_DOUBLE_EQ(g.kappa(), g.cp() * g.mu / g.Pr);
}

TEST(ViscousFlux, EntropyGradientPathMatchesPrimitivePath) {
  const GasParams g = viscous_gas();
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const State5 q = random_state(rng, g);
    const Primitive p = primitive_from_state(q, g);
    // Perturb W along each direction and difference to get dW/dx_j for a
    // linear primitive field.
    Mat3 gradV;
    Vec3 gradT, gradRho;
    for (int i = 0; i < 3; ++i) {
      gradT[i] = u(rng);
      gradRho[i] = u(rng);
      for (int j = 0; j < 3; ++j) gradV(i, j) = u(rng);
    }
    Vec5 gW[3];
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
      auto at = [&](double s) {
        return entropy_vars(state_from_primitive(p.rho + s * gradRho[j], p.V + s * gradV.col(j),
                                                 p.T + s * gradT[j], g),
                            g);
      };
      gW[j] = (at(h) - at(-h)) / (2.0 * h);
    }
    Vec5 a[3], b[3];
    viscous_flux_from_wgrad(p.V, p.T, gW, g, a);
    viscous_flux_from_primitive_gradients(p.V, gradV, gradT, g, b);
    const ViscousCoeffs C = c_matrices(q, g);
    for (int m = 0; m < 3; ++m) {
      const double scale = std::max(1e-3, b[m].cwiseAbs().maxCoeff());
      EXPECT_LT((a[m] - b[m]).cwiseAbs().maxCoeff() / scale, 1e-7);
      Vec5 c = Vec5::Zero();
      for (int j = 0; j < 3; ++j) c += C.C[m][j] * gW[j];
      EXPECT_LT((c - a[m]).cwiseAbs().maxCoeff() / scale, 1e-10);
    }
  }
}

TEST(ViscousCoefficients, BlockSymmetryAndSemidefiniteness) {
  const GasParams g = viscous_gas();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const ViscousCoeffs C = c_matrices(random_state(rng, g), g);
    Eigen::Matrix<double, 15, 15> big;
    for (int m = 0; m < 3; ++m) {
      for (int j = 0; j < 3; ++j) {
        big.block<5, 5>(5 * m, 5 * j) = C.C[m][j];
        EXPECT_LT((C.C[m][j] - C.C[j][m].transpose()).cwiseAbs().maxCoeff(), 1e-13);
      }
    }
    // First row and column of every block vanish (no mass diffusion).
    for (int r = 0; r < 15; r += 5) {
      EXPECT_EQ(big.row(r).cwiseAbs().maxCoeff(), 0.0);
      EXPECT_EQ(big.col(r).cwiseAbs().maxCoeff(), 0.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 15, 15>> es(big);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12 * big.cwiseAbs().maxCoeff());

    Mat3 xxi = Mat3::Identity();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) xxi(i, j) += 0.3 * u(rng);
    }
    if (xxi.determinant() < 0.2) continue;
    const double J = xxi.determinant();
    const Mat3 am = J * xxi.inverse();
    double a[9];
    for (int l = 0; l < 3; ++l) {
      for (int m = 0; m < 3; ++m) a[l * 3 + m] = am(l, m);
    }
    const CBlocks ch = chat_matrices(C, a, J);
    for (int l = 0; l < 3; ++l) {
      for (int n = 0; n < 3; ++n) {
        EXPECT_LT((ch[l][n] - ch[n][l].transpose()).cwiseAbs().maxCoeff(),
                  1e-12 * std::max(1.0, ch[l][n].cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST(ViscousDiscretization, UniformStateHasNoViscousContribution) {
  const GasParams g = viscous_gas();
  const State5 q0 = state_from_primitive(1.0, Vec3(0.3, 0.2, -0.1), 1.2, g);
  const StateFn fn = [&](const Vec3&, double) { return q0; };
  RhsConfig inv;
  RhsConfig visc;
  visc.viscous = true;
  Discretization a(build_mesh(2, 2, 2, MotionSpec::shock(1, 0.2)), 3, g, inv, fn);
  Discretization b(build_mesh(2, 2, 2, MotionSpec::shock(1, 0.2)), 3, g, visc, fn);
  const CoupledState y = a.initialize(fn, 0.3);
  CoupledState da = y, db = y;
  a.rates(0.3, y, da);
  b.rates(0.3, y, db);
  for (std::size_t i = 0; i < da.Q.size(); ++i) EXPECT_NEAR(da.Q[i], db.Q[i], 1e-12);
  for (const Vec5& th : b.ldg_gradients(0.3, y)) EXPECT_LT(th.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ViscousDiscretization, LdgGradientOfLinearField) {
  // On a static affine grid, Theta_n equals the exact d W / d xi_n when W is
  // a polynomial of degree <= p that is continuous across elements.
  GasParams g = viscous_gas();
  const Vec3 grad(0.05, -0.02, 0.03);
  auto state = [&](const Vec3& x, double) {
    EntropyVars5 w;
    w << -1.0 + grad.dot(x), 0.1, 0.05, 0.0, -1.0;
    return state_from_entropy_vars(w, g);
  };
  RhsConfig cfg;
  cfg.viscous = true;
  Discretization d(build_mesh(2, 3, 2, MotionSpec::make_static()), 2, g, cfg, state);
  const CoupledState y = d.initialize(state, 0.0);
  const auto theta = d.ldg_gradients(0.0, y);
  const Vec3 dxi(2.0 / 2.0 / 2.0, 2.0 / 3.0 / 2.0, 2.0 / 2.0 / 2.0);  // dx_n/dxi_n
  for (std::size_t i = 0; i < d.num_nodes(); ++i) {
    for (int n = 0; n < 3; ++n) {
      EXPECT_NEAR(theta[i * 3 + n][0], grad[n] * dxi[n], 1e-13);
      for (int c = 1; c < 5; ++c) EXPECT_NEAR(theta[i * 3 + n][c], 0.0, 1e-13);
    }
  }
}

TEST(ViscousDiscretization, PeriodicViscousTermsDissipateAndConserve) {
  const GasParams g = viscous_gas();
  const StateFn fn = [&](const Vec3& x, double) { return smooth_state(x, g); };
  RhsConfig inv;
  inv.set_dissipation(false);
  RhsConfig visc = inv;
  visc.viscous = true;
  const Mesh mesh = build_mesh(2, 2, 2, MotionSpec::periodic_box(), {true, true, true});
  Discretization a(mesh, 3, g, inv);
  Discretization b(mesh, 3, g, visc);
  for (double tau : {0.0, 0.4}) {
    const CoupledState y = a.initialize(fn, tau);
    CoupledState da = y, db = y;
    a.rates(tau, y, da);
    b.rates(tau, y, db);
    const double viscous_part = b.entropy_rate(y, db) - a.entropy_rate(y, da);
    EXPECT_LT(viscous_part, 0.0);
    double scale = 0.0;
    for (double v : db.Q) scale += std::abs(v);
    EXPECT_LT(b.conserved_totals(db).cwiseAbs().maxCoeff(), 1e-13 * scale);
  }
}

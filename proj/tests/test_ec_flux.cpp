#include <esale/ec_flux.hpp>

#include <gtest/gtest.h>
#include <mpfr.h>

#include <cmath>
#include <random>

using namespace esale;

namespace {

// (b - a) / (ln b - ln a) in 200-bit arithmetic.
double log_mean_mpfr(double a, double b) {
  if (a == b) return a;
  mpfr_t A, B, num, la, lb;
  for (mpfr_t* v : {&A, &B, &num, &la, &lb}) mpfr_init2(*v, 200);
  mpfr_set_d(A, a, MPFR_RNDN);
  mpfr_set_d(B, b, MPFR_RNDN);
  mpfr_sub(num, B, A, MPFR_RNDN);
  mpfr_log(la, A, MPFR_RNDN);
  mpfr_log(lb, B, MPFR_RNDN);
  mpfr_sub(lb, lb, la, MPFR_RNDN);
  mpfr_div(num, num, lb, MPFR_RNDN);
  const double r = mpfr_get_d(num, MPFR_RNDN);
  for (mpfr_t* v : {&A, &B, &num, &la, &lb}) mpfr_clear(*v);
  return r;
}

State5 random_state(std::mt19937_64& rng, const GasParams& g) {
  std::uniform_real_distribution<double> lg(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> uv(-2.0, 2.0);
  return state_from_primitive(std::exp(lg(rng)), Vec3(uv(rng), uv(rng), uv(rng)),
                              std::exp(lg(rng)), g);
}

}  // namespace

TEST(LogMean, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(log_mean(2.0, 2.0), 2.0);
  EXPECT_NEAR(log_mean(1.0, std::exp(1.0)), std::exp(1.0) - 1.0, 1e-15);
  EXPECT_NEAR(log_mean(1.0, 4.0), 3.0 / std::log(4.0), 1e-15);
  EXPECT_EQ(log_mean(0.3, 7.0), log_mean(7.0, 0.3));
}

TEST(LogMean, RejectsNonpositive) {
  EXPECT_THROW(log_mean(0.0, 1.0), ContractViolation);
  EXPECT_THROW(log_mean(1.0, -2.0), ContractViolation);
}

TEST(LogMean, MatchesHighPrecisionAcrossRatios) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> la(-8.0, 8.0);
  std::uniform_real_distribution<double> lr(-12.0, 6.0);
  double worst = 0.0;
  for (int t = 0; t < 20000; ++t) {
    const double a = std::exp(la(rng));
    const double ratio = 1.0 + std::pow(10.0, lr(rng));
    const double b = (t % 2 == 0) ? a * ratio : a / ratio;
    const double ref = log_mean_mpfr(a, b);
    worst = std::max(worst, std::abs(log_mean(a, b) - ref) / ref);
  }
  EXPECT_LT(worst, 1e-14);
}

TEST(LogMean, ContinuousAcrossSeriesSwitch) {
  // (b - a)/(b + a) = 1e-2 is where the series takes over.
  const double a = 1.0;
  for (double f : {0.0099999, 0.01, 0.0100001}) {
    const double b = (1.0 + f) / (1.0 - f);
    EXPECT_NEAR(log_mean(a, b), log_mean_mpfr(a, b), 1e-14);
  }
}

TEST(IsmailRoe, ConsistencySymmetryShuffle) {
  const GasParams g;
  std::mt19937_64 rng(21);
  for (int t = 0; t < 2000; ++t) {
    const State5 uL = random_state(rng, g), uR = random_state(rng, g);
    const Vec5 dW = entropy_vars(uL, g) - entropy_vars(uR, g);
    const Potentials pL = potentials(uL, g), pR = potentials(uR, g);
    for (int m = 1; m <= 3; ++m) {
      const State5 f = fsc_ismail_roe(uL, uR, m, g);
      EXPECT_LT((f - fsc_ismail_roe(uR, uL, m, g)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_NEAR(dW.dot(f), pL.psi[m - 1] - pR.psi[m - 1], 1e-12);
      const State5 fp = physical_flux(uL, m, g);
      EXPECT_LT((fsc_ismail_roe(uL, uL, m, g) - fp).cwiseAbs().maxCoeff(),
                1e-12 * std::max(1.0, fp.cwiseAbs().maxCoeff()));
    }
  }
}

TEST(IsmailRoe, NormalContractionIsLinear) {
  const GasParams g;
  std::mt19937_64 rng(22);
  const State5 uL = random_state(rng, g), uR = random_state(rng, g);
  const Vec3 n(0.3, -1.2, 0.7);
  const Vec5 direct = ismail_roe_normal(make_flux_point(uL, g), make_flux_point(uR, g), n, g);
  Vec5 sum = Vec5::Zero();
  for (int m = 1; m <= 3; ++m) sum += n[m - 1] * fsc_ismail_roe(uL, uR, m, g);
  EXPECT_LT((direct - sum).cwiseAbs().maxCoeff(), 1e-13 * sum.cwiseAbs().maxCoeff());
}

TEST(PhysicalFlux, AtRest) {
  const GasParams g;
  const State5 u = state_from_primitive(2.0, Vec3::Zero(), 1.5, g);
  for (int m = 1; m <= 3; ++m) {
    const State5 f = physical_flux(u, m, g);
    for (int c = 0; c < 5; ++c) EXPECT_DOUBLE_EQ(f[c], c == m ? 3.0 : 0.0);
  }
  EXPECT_THROW(physical_flux(u, 0, g), ContractViolation);
  EXPECT_THROW(fsc_ismail_roe(u, u, 4, g), ContractViolation);
}

TEST(MeshVelocityFlux, ConsistencySymmetryShuffle) {
  const GasParams g;
  std::mt19937_64 rng(23);
  for (TwoPointFluxKind k : {TwoPointFluxKind::Usc1, TwoPointFluxKind::Usc2}) {
    for (int t = 0; t < 2000; ++t) {
      const State5 uL = random_state(rng, g), uR = random_state(rng, g);
      const State5 f = usc_flux(k, uL, uR, g);
      EXPECT_LT((f - usc_flux(k, uR, uL, g)).cwiseAbs().maxCoeff(), 1e-12);
      const Vec5 dW = entropy_vars(uL, g) - entropy_vars(uR, g);
      EXPECT_NEAR(dW.dot(f), potentials(uL, g).phi - potentials(uR, g).phi, 1e-12);
      EXPECT_LT((usc_flux(k, uL, uL, g) - uL).cwiseAbs().maxCoeff(),
                1e-12 * std::max(1.0, uL.cwiseAbs().maxCoeff()));
    }
  }
}

TEST(MeshVelocityFlux, KindSelection) {
  const GasParams g;
  const State5 u = state_from_primitive(1.0, Vec3::Zero(), 1.0, g);
  EXPECT_THROW(usc_flux(TwoPointFluxKind::IsmailRoeF, u, u, g), ContractViolation);
  EXPECT_EQ(parse_usc_kind(1), TwoPointFluxKind::Usc1);
  EXPECT_EQ(parse_usc_kind(2), TwoPointFluxKind::Usc2);
  EXPECT_THROW(parse_usc_kind(3), ConfigError);
}

TEST(MeshVelocityFlux, GasConstantAndGammaEnterConsistently) {
  GasParams g;
  g.gamma = 1.3;
  g.R = 2.2;
  std::mt19937_64 rng(24);
  for (TwoPointFluxKind k : {TwoPointFluxKind::Usc1, TwoPointFluxKind::Usc2}) {
    for (int t = 0; t < 200; ++t) {
      const State5 uL = random_state(rng, g), uR = random_state(rng, g);
      const Vec5 dW = entropy_vars(uL, g) - entropy_vars(uR, g);
      EXPECT_NEAR(dW.dot(usc_flux(k, uL, uR, g)), potentials(uL, g).phi - potentials(uR, g).phi,
                  1e-11);
      for (int m = 1; m <= 3; ++m) {
        EXPECT_NEAR(dW.dot(fsc_ismail_roe(uL, uR, m, g)),
                    potentials(uL, g).psi[m - 1] - potentials(uR, g).psi[m - 1], 1e-11);
      }
    }
  }
}

#include <esale/ec_flux.hpp>

namespace esale {

FluxPoint make_flux_point(const State5& u, const GasParams& g) {
  FluxPoint f;
  f.rho = u[0];
  f.T = temperature(u, g);
  for (int c = 0; c < 3; ++c) f.u[c] = u[1 + c] / f.rho;
  f.v2 = f.u[0] * f.u[0] + f.u[1] * f.u[1] + f.u[2] * f.u[2];
  f.p = f.rho * g.R * f.T;
  f.lnrho = std::log(f.rho);
  f.lnT = std::log(f.T);
  f.z1 = std::sqrt(f.rho / f.p);
  f.z5 = std::sqrt(f.rho * f.p);
  const double lnRT = std::log(g.R) + f.lnT;
  f.lnz1 = -0.5 * lnRT;
  f.lnz5 = f.lnrho + 0.5 * lnRT;
  const double sT = std::sqrt(f.T);
  f.isT = 1.0 / sT;
  f.rsT = f.rho * sT;
  f.beta = 1.0 / f.T;
  return f;
}

double log_mean(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ContractViolation("log_mean requires positive arguments");
  const double f = (b - a) / (b + a);
  const double uu = f * f;
  if (uu < 1e-4) {
    const double F = 1.0 + uu * (1.0 / 3.0 + uu * (1.0 / 5.0 + uu * (1.0 / 7.0)));
    return 0.5 * (a + b) / F;
  }
  // Odd in (a, b) swap numerator and denominator alike, so the result is symmetric.
  return (b - a) / std::log(b / a);
}

State5 physical_flux(const State5& u, int m, const GasParams& g) {
  if (m < 1 || m > 3) throw ContractViolation("flux direction must be 1, 2 or 3");
  const FluxPoint a = make_flux_point(u, g);
  Vec3 n = Vec3::Zero();
  n[m - 1] = 1.0;
  return normal_flux(a, n, g);
}

State5 fsc_ismail_roe(const State5& uL, const State5& uR, int m, const GasParams& g) {
  if (m < 1 || m > 3) throw ContractViolation("flux direction must be 1, 2 or 3");
  Vec3 n = Vec3::Zero();
  n[m - 1] = 1.0;
  return ismail_roe_normal(make_flux_point(uL, g), make_flux_point(uR, g), n, g);
}

State5 usc_flux(TwoPointFluxKind kind, const State5& uL, const State5& uR, const GasParams& g) {
  if (kind == TwoPointFluxKind::IsmailRoeF) {
    throw ContractViolation("usc_flux takes Usc1 or Usc2");
  }
  return usc_kernel(kind, make_flux_point(uL, g), make_flux_point(uR, g), g);
}

TwoPointFluxKind parse_usc_kind(int k) {
  if (k == 1) return TwoPointFluxKind::Usc1;
  if (k == 2) return TwoPointFluxKind::Usc2;
  throw ConfigError("usc kind must be 1 or 2, got " + std::to_string(k));
}

}  // namespace esale

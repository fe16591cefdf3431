#pragma once

#include <esale/gas.hpp>

#include <cmath>

namespace esale {

enum class TwoPointFluxKind { IsmailRoeF, Usc1, Usc2 };

/// Per-node quantities reused by every two-point flux evaluation that
/// touches the node.
struct FluxPoint {
  double rho, u[3], T, p;
  double v2;          // |V|^2
  double lnrho, lnT;
  double z1, z5;      // sqrt(rho/p), sqrt(rho*p)
  double lnz1, lnz5;
  double isT, rsT;    // 1/sqrt(T), rho*sqrt(T)
  double beta;        // 1/T
};

FluxPoint make_flux_point(const State5& u, const GasParams& g);

/// Logarithmic mean with logs supplied by the caller.
inline double log_mean_from_logs(double a, double b, double lna, double lnb) {
  const double f = (b - a) / (b + a);
  const double uu = f * f;
  if (uu < 1e-4) {
    const double F = 1.0 + uu * (1.0 / 3.0 + uu * (1.0 / 5.0 + uu * (1.0 / 7.0)));
    return 0.5 * (a + b) / F;
  }
  return (b - a) / (lnb - lna);
}

/// (b - a) / (ln b - ln a); throws ContractViolation for nonpositive input.
double log_mean(double a, double b);

/// Euler flux along Cartesian direction m (1, 2, 3).
State5 physical_flux(const State5& u, int m, const GasParams& g);

/// n . F(u) for an arbitrary direction n.
inline Vec5 normal_flux(const FluxPoint& a, const Vec3& n, const GasParams& g) {
  const double un = a.u[0] * n[0] + a.u[1] * n[1] + a.u[2] * n[2];
  const double mflux = a.rho * un;
  Vec5 f;
  f[0] = mflux;
  f[1] = mflux * a.u[0] + a.p * n[0];
  f[2] = mflux * a.u[1] + a.p * n[1];
  f[3] = mflux * a.u[2] + a.p * n[2];
  f[4] = mflux * (g.cp() * a.T + 0.5 * a.v2);
  return f;
}

/// Ismail-Roe flux contracted with direction n: sum_m n_m Fsc_m(a, b).
inline Vec5 ismail_roe_normal(const FluxPoint& a, const FluxPoint& b, const Vec3& n,
                              const GasParams& g) {
  const double z1a = 0.5 * (a.z1 + b.z1);
  const double z5a = 0.5 * (a.z5 + b.z5);
  const double z1l = log_mean_from_logs(a.z1, b.z1, a.lnz1, b.lnz1);
  const double z5l = log_mean_from_logs(a.z5, b.z5, a.lnz5, b.lnz5);
  const double inv_z1a = 1.0 / z1a;
  const double rho = z1a * z5l;
  double uh[3];
  for (int c = 0; c < 3; ++c) uh[c] = 0.5 * (a.z1 * a.u[c] + b.z1 * b.u[c]) * inv_z1a;
  const double p1 = z5a * inv_z1a;
  const double gam = g.gamma;
  const double p2 = (gam + 1.0) / (2.0 * gam) * z5l / z1l + (gam - 1.0) / (2.0 * gam) * p1;
  const double H = gam * p2 / (rho * (gam - 1.0)) +
                   0.5 * (uh[0] * uh[0] + uh[1] * uh[1] + uh[2] * uh[2]);
  const double un = uh[0] * n[0] + uh[1] * n[1] + uh[2] * n[2];
  const double mflux = rho * un;
  Vec5 f;
  f[0] = mflux;
  f[1] = mflux * uh[0] + p1 * n[0];
  f[2] = mflux * uh[1] + p1 * n[1];
  f[3] = mflux * uh[2] + p1 * n[2];
  f[4] = mflux * H;
  return f;
}

/// Two-point mesh-velocity flux built from Z = [rho, V, 1/T].
inline Vec5 usc2(const FluxPoint& a, const FluxPoint& b, const GasParams& g) {
  const double rl = log_mean_from_logs(a.rho, b.rho, a.lnrho, b.lnrho);
  const double bl = log_mean_from_logs(a.beta, b.beta, -a.lnT, -b.lnT);
  double va[3];
  double va2 = 0.0;
  for (int c = 0; c < 3; ++c) {
    va[c] = 0.5 * (a.u[c] + b.u[c]);
    va2 += va[c] * va[c];
  }
  Vec5 f;
  f[0] = rl;
  f[1] = rl * va[0];
  f[2] = rl * va[1];
  f[3] = rl * va[2];
  f[4] = rl * (g.R / ((g.gamma - 1.0) * bl) + va2 - 0.25 * (a.v2 + b.v2));
  return f;
}

/// Two-point mesh-velocity flux built from Z = [1/sqrt(T), V/sqrt(T), rho*sqrt(T)].
inline Vec5 usc1(const FluxPoint& a, const FluxPoint& b, const GasParams& g) {
  const double z1a = 0.5 * (a.isT + b.isT);
  const double z5a = 0.5 * (a.rsT + b.rsT);
  const double z1l = log_mean_from_logs(a.isT, b.isT, -0.5 * a.lnT, -0.5 * b.lnT);
  const double z5l =
      log_mean_from_logs(a.rsT, b.rsT, a.lnrho + 0.5 * a.lnT, b.lnrho + 0.5 * b.lnT);
  double zv[3];
  double zv2 = 0.0;
  for (int c = 0; c < 3; ++c) {
    zv[c] = 0.5 * (a.u[c] * a.isT + b.u[c] * b.isT);
    zv2 += zv[c] * zv[c];
  }
  Vec5 f;
  f[0] = z5l * z1a;
  f[1] = z5l * zv[0];
  f[2] = z5l * zv[1];
  f[3] = z5l * zv[2];
  f[4] = 0.5 * z5l *
         (g.R * (g.gamma + 1.0) / (z1l * (g.gamma - 1.0)) + (zv2 - g.R * z5a / z5l) / z1a);
  return f;
}

inline Vec5 usc_kernel(TwoPointFluxKind kind, const FluxPoint& a, const FluxPoint& b,
                       const GasParams& g) {
  return kind == TwoPointFluxKind::Usc1 ? usc1(a, b, g) : usc2(a, b, g);
}

/// Ismail-Roe flux along Cartesian direction m (1, 2, 3).
State5 fsc_ismail_roe(const State5& uL, const State5& uR, int m, const GasParams& g);

/// Entropy-conservative two-point flux for the mesh-velocity terms.
State5 usc_flux(TwoPointFluxKind kind, const State5& uL, const State5& uR, const GasParams& g);

TwoPointFluxKind parse_usc_kind(int k);

}  // namespace esale

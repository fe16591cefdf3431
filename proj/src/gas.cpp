#include <esale/gas.hpp>

#include <cmath>

namespace esale {

void GasParams::validate() const {
  if (!(gamma > 1.0)) throw ConfigError("gamma must exceed 1");
  if (!(R > 0.0)) throw ConfigError("gas constant must be positive");
  if (!(mu >= 0.0)) throw ConfigError("viscosity must be nonnegative");
  if (!(Pr > 0.0)) throw ConfigError("Prandtl number must be positive");
  if (!(Tref > 0.0) || !(rhoref > 0.0)) throw ConfigError("reference state must be positive");
}

double temperature(const State5& u, const GasParams& g) {
  const double rho = u[0];
  if (!(rho > 0.0)) throw InadmissibleState(rho, std::nan(""));
  const double ke = 0.5 * (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]) / rho;
  const double T = (u[4] - ke) / (rho * g.cv());
  if (!(T > 0.0)) throw InadmissibleState(rho, T);
  return T;
}

double specific_entropy(double rho, double T, const GasParams& g) {
  return g.cv() * std::log(T / g.Tref) - g.R * std::log(rho / g.rhoref);
}

Primitive primitive_from_state(const State5& u, const GasParams& g) {
  Primitive w;
  w.rho = u[0];
  w.T = temperature(u, g);
  w.V = u.segment<3>(1) / w.rho;
  w.P = w.rho * g.R * w.T;
  w.s = specific_entropy(w.rho, w.T, g);
  w.H = g.cp() * w.T + 0.5 * w.V.squaredNorm();
  return w;
}

State5 state_from_primitive(double rho, const Vec3& V, double T, const GasParams& g) {
  if (!(rho > 0.0) || !(T > 0.0)) throw InadmissibleState(rho, T);
  State5 u;
  u[0] = rho;
  u.segment<3>(1) = rho * V;
  u[4] = rho * (g.cv() * T + 0.5 * V.squaredNorm());
  return u;
}

EntropyAndFlux entropy_and_flux(const State5& u, const GasParams& g) {
  const Primitive w = primitive_from_state(u, g);
  EntropyAndFlux r;
  r.S = -w.rho * w.s;
  r.F = r.S * w.V;
  return r;
}

EntropyVars5 entropy_vars(const State5& u, const GasParams& g) {
  const Primitive w = primitive_from_state(u, g);
  EntropyVars5 v;
  v[0] = g.cp() - w.s - 0.5 * w.V.squaredNorm() / w.T;
  v.segment<3>(1) = w.V / w.T;
  v[4] = -1.0 / w.T;
  return v;
}

State5 state_from_entropy_vars(const EntropyVars5& w, const GasParams& g) {
  if (!(w[4] < 0.0)) throw InadmissibleState(std::nan(""), w[4] < 0.0 ? -1.0 / w[4] : -1.0);
  const double T = -1.0 / w[4];
  const Vec3 V = w.segment<3>(1) * T;
  const double s = g.cp() - w[0] - 0.5 * V.squaredNorm() / T;
  const double rho = g.rhoref * std::exp((g.cv() * std::log(T / g.Tref) - s) / g.R);
  return state_from_primitive(rho, V, T, g);
}

Potentials potentials(const State5& u, const GasParams& g) {
  const Primitive w = primitive_from_state(u, g);
  Potentials r;
  r.phi = g.R * w.rho;
  r.psi = g.R * w.rho * w.V;
  return r;
}

Mat5 dU_dW(const State5& u, const GasParams& g) {
  const Primitive w = primitive_from_state(u, g);
  const double rho = w.rho, T = w.T;
  const Vec3& V = w.V;
  const double cv = g.cv();
  // Jacobians with respect to primitives (rho, V, T).
  Mat5 dUdP = Mat5::Zero();
  dUdP(0, 0) = 1.0;
  for (int i = 0; i < 3; ++i) {
    dUdP(1 + i, 0) = V[i];
    dUdP(1 + i, 1 + i) = rho;
    dUdP(4, 1 + i) = rho * V[i];
  }
  dUdP(4, 0) = cv * T + 0.5 * V.squaredNorm();
  dUdP(4, 4) = rho * cv;

  Mat5 dWdP = Mat5::Zero();
  dWdP(0, 0) = g.R / rho;
  for (int i = 0; i < 3; ++i) {
    dWdP(0, 1 + i) = -V[i] / T;
    dWdP(1 + i, 1 + i) = 1.0 / T;
    dWdP(1 + i, 4) = -V[i] / (T * T);
  }
  dWdP(0, 4) = -cv / T + 0.5 * V.squaredNorm() / (T * T);
  dWdP(4, 4) = 1.0 / (T * T);

  Mat5 A = dUdP * dWdP.inverse();
  return 0.5 * (A + A.transpose());
}

State5 roe_average(const State5& uL, const State5& uR, const GasParams& g) {
  const Primitive a = primitive_from_state(uL, g);
  const Primitive b = primitive_from_state(uR, g);
  const double sa = std::sqrt(a.rho), sb = std::sqrt(b.rho);
  const double inv = 1.0 / (sa + sb);
  const double rho = sa * sb;
  const Vec3 V = (sa * a.V + sb * b.V) * inv;
  const double H = (sa * a.H + sb * b.H) * inv;
  const double T = (H - 0.5 * V.squaredNorm()) / g.cp();
  return state_from_primitive(rho, V, T, g);
}

Eigensystem entropy_scaled_eigensystem(const State5& u, const Vec3& n, double bn,
                                       const GasParams& g) {
  const Primitive w = primitive_from_state(u, g);
  return eigensystem_from_primitive(w.rho, w.V, w.T, n, bn, g);
}

Eigensystem eigensystem_from_primitive(double rho, const Vec3& V, double T, const Vec3& n,
                                       double bn, const GasParams& g) {
  const double nn = n.norm();
  if (!(nn > 0.0)) throw ContractViolation("eigensystem requested for a zero-length normal");
  const Vec3 nh = n / nn;
  const double H = g.cp() * T + 0.5 * V.squaredNorm();

  // Orthonormal tangents spanning the degenerate convective subspace.
  int k = 0;
  if (std::abs(nh[1]) < std::abs(nh[k])) k = 1;
  if (std::abs(nh[2]) < std::abs(nh[k])) k = 2;
  Vec3 e = Vec3::Zero();
  e[k] = 1.0;
  const Vec3 t1 = (e - e.dot(nh) * nh).normalized();
  const Vec3 t2 = nh.cross(t1);

  const double a = std::sqrt(g.gamma * g.R * T);
  const double un = V.dot(nh);

  Mat5 Rm;
  Rm.col(0) << 1.0, V - a * nh, H - un * a;
  Rm.col(1) << 1.0, V, 0.5 * V.squaredNorm();
  Rm.col(2) << 0.0, t1, V.dot(t1);
  Rm.col(3) << 0.0, t2, V.dot(t2);
  Rm.col(4) << 1.0, V + a * nh, H + un * a;

  const double sac = rho / (2.0 * g.gamma * g.R);
  Vec5 scale;
  scale << sac, rho * (g.gamma - 1.0) / (g.gamma * g.R), rho * T, rho * T, sac;

  Eigensystem es;
  for (int c = 0; c < 5; ++c) es.Y.col(c) = Rm.col(c) * std::sqrt(scale[c]);
  const double vn = V.dot(n);
  es.lambda << vn - a * nn, vn, vn, vn, vn + a * nn;
  es.lambda.array() += bn;
  return es;
}

}  // namespace esale

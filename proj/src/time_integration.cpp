#include <esale/time_integration.hpp>

#include <cmath>

namespace esale {

const RkScheme& RkScheme::rk4_3_5() {
  static const RkScheme s = [] {
    RkScheme r;
    r.a = {970286171893.0 / 4311952581923.0, 6584761158862.0 / 12103376702013.0,
           2251764453980.0 / 15575788980749.0, 26877169314380.0 / 34165994151039.0, 0.0};
    r.b = {1153189308089.0 / 22510343858157.0, 1772645290293.0 / 4653164025191.0,
           -1672844663538.0 / 4480602732383.0, 2114624349019.0 / 3568978502595.0,
           5198255086312.0 / 14908931495163.0};
    r.bhat = {1016888040809.0 / 7410784769900.0, 11231460423587.0 / 58533540763752.0,
              -1563879915014.0 / 6823010717585.0, 606302364029.0 / 971179775848.0,
              1097981568119.0 / 3980877426909.0};
    // Stage times follow from the two-register Butcher tableau.
    r.c[0] = 0.0;
    for (int i = 1; i < kStages; ++i) {
      double ci = r.a[i - 1];
      for (int j = 0; j + 1 < i; ++j) ci += r.b[j];
      r.c[i] = ci;
    }
    return r;
  }();
  return s;
}

double RkScheme::order_condition_residual() const {
  constexpr int s = kStages;
  double A[s][s] = {};
  for (int i = 1; i < s; ++i) {
    for (int j = 0; j + 1 < i; ++j) A[i][j] = b[j];
    A[i][i - 1] = a[i - 1];
  }
  auto dot = [](const auto& w, auto f) {
    double acc = 0.0;
    for (int i = 0; i < s; ++i) acc += w[i] * f(i);
    return acc;
  };
  auto Ac = [&](int i, int power) {
    double acc = 0.0;
    for (int j = 0; j < s; ++j) acc += A[i][j] * std::pow(c[j], power);
    return acc;
  };
  auto AAc = [&](int i) {
    double acc = 0.0;
    for (int j = 0; j < s; ++j) acc += A[i][j] * Ac(j, 1);
    return acc;
  };
  double worst = 0.0;
  auto check = [&](double v, double target) { worst = std::max(worst, std::abs(v - target)); };
  for (const auto* w : {&b, &bhat}) {
    check(dot(*w, [](int) { return 1.0; }), 1.0);
    check(dot(*w, [&](int i) { return c[i]; }), 0.5);
    check(dot(*w, [&](int i) { return c[i] * c[i]; }), 1.0 / 3.0);
    check(dot(*w, [&](int i) { return Ac(i, 1); }), 1.0 / 6.0);
  }
  check(dot(b, [&](int i) { return c[i] * c[i] * c[i]; }), 0.25);
  check(dot(b, [&](int i) { return c[i] * Ac(i, 1); }), 0.125);
  check(dot(b, [&](int i) { return Ac(i, 2); }), 1.0 / 12.0);
  check(dot(b, [&](int i) { return AAc(i); }), 1.0 / 24.0);
  return worst;
}

void rk_step(const RkScheme& rk, const RhsFn& rhs, double tau, double dt, CoupledState& y,
             CoupledState& error) {
  CoupledState X = y;
  CoupledState k;
  error.Q.assign(y.Q.size(), 0.0);
  error.J.assign(y.J.size(), 0.0);
  for (int i = 0; i < RkScheme::kStages; ++i) {
    rhs(tau + rk.c[i] * dt, X, k);
    y.axpy(dt * rk.b[i], k);
    error.axpy(dt * (rk.b[i] - rk.bhat[i]), k);
    if (i + 1 < RkScheme::kStages) {
      X = y;
      X.axpy(dt * (rk.a[i] - rk.b[i]), k);
    }
  }
}

double select_dt(Discretization& disc, double tau, const CoupledState& y, double cfl) {
  if (!(cfl > 0.0)) throw ConfigError("CFL number must be positive");
  const auto& geo = disc.geometry(tau);
  const GasParams& g = disc.gas();
  const double h = disc.op().min_spacing();
  const int N = disc.nodes_per_element();
  const bool visc = disc.config().viscous;
  double lam_max = 0.0;
  for (int e = 0; e < disc.num_elements(); ++e) {
    for (int i = 0; i < N; ++i) {
      const std::size_t idx = static_cast<std::size_t>(e) * N + i;
      State5 q;
      for (int c = 0; c < 5; ++c) q[c] = y.Q[idx * 5 + c] / y.J[idx];
      const Primitive w = primitive_from_state(q, g);
      const double c = std::sqrt(g.gamma * g.R * w.T);
      const double J = geo[e].Jdet[i];
      double inv = 0.0, sq = 0.0;
      for (int l = 0; l < 3; ++l) {
        const Vec3 al = geo[e].a_row(i, l);
        const double an = al.norm();
        inv += std::abs(w.V.dot(al) + geo[e].b[i * 3 + l]) + c * an;
        sq += an * an;
      }
      double lam = inv / (J * h);
      if (visc) {
        const double nu = std::max(4.0 * g.mu / (3.0 * w.rho), g.gamma * g.mu / (g.Pr * w.rho));
        lam += nu * sq / (J * J * h * h);
      }
      lam_max = std::max(lam_max, lam);
    }
  }
  return cfl / lam_max;
}

}  // namespace esale

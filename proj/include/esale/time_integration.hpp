#pragma once

#include <esale/euler_rhs.hpp>

#include <array>
#include <functional>

namespace esale {

/// Five-stage, fourth-order, two-register Runge-Kutta pair with a
/// third-order embedded solution.
struct RkScheme {
  static constexpr int kStages = 5;
  std::array<double, kStages> a{};     // sub-diagonal a_{i+1,i}
  std::array<double, kStages> b{};     // 4th-order weights
  std::array<double, kStages> bhat{};  // embedded 3rd-order weights
  std::array<double, kStages> c{};     // stage times

  static const RkScheme& rk4_3_5();
  /// Residual of the order conditions up to order 4 (b) and order 3 (bhat).
  double order_condition_residual() const;
};

/// Generic coupled-state right-hand side.
using RhsFn = std::function<void(double tau, const CoupledState& y, CoupledState& dy)>;

struct StepResult {
  /// Difference between the 4th- and 3rd-order solutions.
  CoupledState error;
};

/// Advances y in place by dt; `error` receives the embedded estimate.
void rk_step(const RkScheme& rk, const RhsFn& rhs, double tau, double dt, CoupledState& y,
             CoupledState& error);

struct StepController {
  enum class Mode { Fixed, Cfl };
  Mode mode = Mode::Cfl;
  double cfl = 0.5;
  double dt = 0.0;
};

/// CFL-limited step from the inviscid (and, if enabled, viscous) spectral
/// radius estimate over all nodes.
double select_dt(Discretization& disc, double tau, const CoupledState& y, double cfl);

}  // namespace esale

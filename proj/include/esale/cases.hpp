#pragma once

#include <esale/time_integration.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace esale {

struct VortexParams {
  double Minf = 0.5;
  double Vinf = 0.25;
  double eps = 5.0;
  double x0 = -0.25;
  double y0 = 0.0;
  double alpha = 0.0;
  /// Subtract both velocity perturbations (a strain field, which does not
  /// satisfy the Euler equations). The default is the rotational vortex.
  bool strain_signs = false;
};

/// Nondimensionalization shared by the benchmarks: rho_inf = T_inf = 1 and
/// R = 1 / (gamma M^2), so the sound speed at T = 1 is 1/M.
GasParams benchmark_gas(double mach, double mu = 0.0, double Pr = 0.72);

State5 exact_vortex(const Vec3& x, double t, const VortexParams& vp, const GasParams& g);

struct ShockParams {
  double mach = 2.5;
  double reynolds = 10.0;
  double Pr = 0.75;
  Vec3 normal = Vec3(std::sqrt(0.5), 0.5, 0.5);
  double shock_speed = -1.0;  // along the normal, with quiescent upstream gas
  double position0 = 0.0;     // n . x of the profile center at t = 0
};

/// Steady 1-D viscous shock (Pr = 3/4) with unit upstream velocity and
/// density in the shock frame.
class ViscousShockProfile {
 public:
  ViscousShockProfile(const ShockParams& sp, const GasParams& g);
  /// Velocity ratio u/u_upstream at shock-frame coordinate s.
  double velocity_ratio(double s) const;
  /// Shock-frame coordinate at velocity ratio v.
  double coordinate(double v) const;
  double downstream_ratio() const { return vf_; }
  double alpha() const { return alpha_; }
  /// Shock-frame (rho, u, T).
  std::array<double, 3> shock_frame_state(double s) const;

 private:
  double vf_;
  double alpha_;
  double center_;
  double H_;
  GasParams g_;
};

State5 exact_viscous_shock(const Vec3& x, double t, const ViscousShockProfile& prof,
                           const ShockParams& sp, const GasParams& g);

struct ErrorReport {
  double l2 = 0.0;
  double linf = 0.0;
  std::array<double, 5> l2_var{};
  std::array<double, 5> linf_var{};
};

ErrorReport error_norms(Discretization& disc, const CoupledState& y, const StateFn& exact,
                        double t);

enum class CaseKind { IsentropicVortex, ViscousShock, FreestreamEuler, FreestreamNS,
                      EntropyConservationPeriodic };

CaseKind parse_case(const std::string& name);
std::string case_name(CaseKind k);

struct CaseSpec {
  CaseKind kind = CaseKind::IsentropicVortex;
  int p = 3;
  std::array<int, 3> grid{6, 6, 1};
  double t_final = -1.0;  // negative: case default
  double cfl = 0.7;
  double dt = 0.0;        // > 0 selects a fixed step (rounded to land on t_final)
  bool dissipation = true;
  int usc = 2;
  std::uint64_t seed = 1;
  double mu = -1.0;       // negative: case default
  std::string out;        // output directory, empty for none
  int monitor_every = 1;
  bool strain_vortex_signs = false;
};

/// Fills in case defaults (t_final, grid shape, viscosity).
CaseSpec resolve_defaults(CaseSpec spec);

struct RunResult {
  CaseSpec spec;
  ErrorReport error;
  int steps = 0;
  double t_reached = 0.0;
  double runtime_s = 0.0;
  double embedded_error_sum = 0.0;
  double max_embedded_error = 0.0;  // largest per-step embedded estimate
  double max_state_deviation = 0.0;  // freestream cases, max over the run
  double entropy_initial = 0.0;
  double entropy_final = 0.0;
  double max_entropy_rate = 0.0;    // max over steps of the instantaneous rate
  Vec5 totals_initial = Vec5::Zero();
  Vec5 totals_final = Vec5::Zero();
  double max_conservation_drift = 0.0;  // relative, max over variables and steps
  bool passed = false;
  std::string verdict;
};

/// Everything a case needs: discretization, initial data, exact solution.
struct CaseSetup {
  std::unique_ptr<Discretization> disc;
  StateFn initial;
  StateFn exact;  // empty when no exact solution exists
  double t_final = 0.0;
};

CaseSetup make_case(const CaseSpec& spec);

RunResult run_case(const CaseSpec& spec);

struct ConvergenceRow {
  std::array<int, 3> grid;
  RunResult result;
  std::optional<double> l2_rate;
  std::optional<double> linf_rate;
};

std::vector<ConvergenceRow> convergence_driver(const CaseSpec& base,
                                               const std::vector<std::array<int, 3>>& grids);

std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

/// Reference L2 error for a tabulated (case, p, grid) benchmark configuration.
std::optional<double> reference_l2(CaseKind kind, int p, int K);

/// Parses "key = value" lines (# comments) into a CaseSpec.
CaseSpec load_case_config(const std::string& path, CaseSpec base = {});
void apply_case_option(CaseSpec& spec, const std::string& key, const std::string& value);

}  // namespace esale

#include <esale/audit.hpp>
#include <esale/cases.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

struct CaseFlags {
  std::string config;
  std::string case_name;
  int p = -1;
  std::string grid;
  double tfinal = -1.0;
  double cfl = -1.0;
  double dt = -1.0;
  int usc = -1;
  bool no_diss = false;
  long long seed = -1;
  double mu = -1.0;
  std::string out;
  int monitor_every = -1;
  bool strain_signs = false;
};

void add_case_flags(CLI::App* app, CaseFlags& f) {
  app->add_option("--config", f.config, "key = value case file; flags override it");
  app->add_option("--case", f.case_name, "vortex | shock | freestream | freestream_ns | periodic");
  app->add_option("--p", f.p, "polynomial degree");
  app->add_option("--grid", f.grid, "K1xK2xK3 (or K)");
  app->add_option("--tfinal", f.tfinal, "final time (default per case)");
  app->add_option("--cfl", f.cfl, "CFL number");
  app->add_option("--dt", f.dt, "fixed time step (overrides --cfl)");
  app->add_option("--usc", f.usc, "mesh-velocity two-point flux: 1 or 2");
  app->add_flag("--no-diss", f.no_diss, "disable interface dissipation");
  app->add_option("--seed", f.seed, "mesh perturbation seed");
  app->add_option("--mu", f.mu, "dynamic viscosity (default per case)");
  app->add_option("--out", f.out, "output directory for CSV files");
  app->add_option("--monitor-every", f.monitor_every, "monitor row interval in steps");
  app->add_flag("--strain-vortex-signs", f.strain_signs,
                "use the strain sign pattern for the vortex velocity");
}

std::array<int, 3> grid_for(esale::CaseKind kind, int K) {
  switch (kind) {
    case esale::CaseKind::IsentropicVortex:
    case esale::CaseKind::FreestreamEuler:
    case esale::CaseKind::FreestreamNS:
      return {K, K, 1};
    default:
      return {K, K, K};
  }
}

esale::CaseSpec build_spec(const CaseFlags& f) {
  esale::CaseSpec s;
  if (!f.config.empty()) s = esale::load_case_config(f.config, s);
  if (!f.case_name.empty()) esale::apply_case_option(s, "case", f.case_name);
  if (!f.grid.empty()) {
    if (f.grid.find('x') == std::string::npos) {
      s.grid = grid_for(s.kind, std::stoi(f.grid));
    } else {
      esale::apply_case_option(s, "grid", f.grid);
    }
  }
  if (f.p > 0) s.p = f.p;
  if (f.tfinal >= 0.0) s.t_final = f.tfinal;
  if (f.cfl > 0.0) s.cfl = f.cfl;
  if (f.dt > 0.0) s.dt = f.dt;
  if (f.usc > 0) s.usc = f.usc;
  if (f.no_diss) s.dissipation = false;
  if (f.seed >= 0) s.seed = static_cast<std::uint64_t>(f.seed);
  if (f.mu >= 0.0) s.mu = f.mu;
  if (!f.out.empty()) s.out = f.out;
  if (f.monitor_every > 0) s.monitor_every = f.monitor_every;
  if (f.strain_signs) s.strain_vortex_signs = true;
  return s;
}

void print_result(const esale::RunResult& r) {
  std::cout << (r.passed ? "PASS " : "FAIL ") << esale::case_name(r.spec.kind) << " p=" << r.spec.p
            << " grid=" << r.spec.grid[0] << "x" << r.spec.grid[1] << "x" << r.spec.grid[2]
            << " t=" << r.t_reached << " steps=" << r.steps << " runtime=" << r.runtime_s << "s\n  "
            << r.verdict << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-stable spectral collocation solver on moving hexahedral grids"};
  app.require_subcommand(1);

  CaseFlags run_flags;
  auto* run = app.add_subcommand("run", "run one case");
  add_case_flags(run, run_flags);

  CaseFlags conv_flags;
  std::vector<int> levels;
  auto* conv = app.add_subcommand("converge", "grid-refinement study");
  add_case_flags(conv, conv_flags);
  conv->add_option("--grids", levels, "element counts per direction, e.g. 6 12 24")
      ->required()
      ->expected(2, -1);

  std::string suite = "all";
  int pmax = 8;
  int pairs = 10000;
  long long audit_seed = 1;
  auto* audit = app.add_subcommand("audit", "operator, flux, GCL and viscous property suites");
  audit->add_option("--suite", suite, "operator | flux | gcl | viscous | all")
      ->check(CLI::IsMember({"operator", "flux", "gcl", "viscous", "all"}));
  audit->add_option("--pmax", pmax, "highest degree for the operator suite");
  audit->add_option("--pairs", pairs, "random state pairs for the flux suite");
  audit->add_option("--seed", audit_seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const esale::RunResult r = esale::run_case(build_spec(run_flags));
      print_result(r);
      return r.passed ? 0 : 1;
    }
    if (conv->parsed()) {
      const esale::CaseSpec base = build_spec(conv_flags);
      std::vector<std::array<int, 3>> grids;
      for (int K : levels) grids.push_back(grid_for(base.kind, K));
      const auto rows = esale::convergence_driver(base, grids);
      const std::string csv = esale::convergence_csv(rows);
      std::cout << csv;
      if (!base.out.empty()) {
        std::filesystem::create_directories(base.out);
        std::ofstream(std::filesystem::path(base.out) / "convergence.csv") << csv;
      }
      bool ok = true;
      for (const auto& row : rows) ok = ok && row.result.passed;
      return ok ? 0 : 1;
    }
    if (audit->parsed()) {
      bool ok = true;
      auto report = [&](const char* title, const esale::AuditReport& r) {
        std::cout << "[" << title << "]\n" << r.text();
        ok = ok && r.passed();
      };
      const auto seed = static_cast<std::uint64_t>(audit_seed);
      if (suite == "operator" || suite == "all") report("operator", esale::operator_audit(pmax));
      if (suite == "flux" || suite == "all") report("flux", esale::flux_audit(pairs, seed));
      if (suite == "gcl" || suite == "all") report("gcl", esale::gcl_audit());
      if (suite == "viscous" || suite == "all") report("viscous", esale::viscous_audit(1000, seed));
      return ok ? 0 : 1;
    }
  } catch (const esale::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

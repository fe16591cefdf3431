#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace esale {

struct AuditItem {
  std::string name;
  double value = 0.0;  // worst observed residual
  double limit = 0.0;
  bool passed = false;
};

struct AuditReport {
  std::vector<AuditItem> items;

  bool passed() const;
  void add(std::string name, double value, double limit);
  /// One line per item: PASS/FAIL, name, value, limit.
  std::string text() const;
};

/// SBP identity Q + Q^T = E and monomial exactness for p = 1..pmax.
AuditReport operator_audit(int pmax = 8, double tol = 1e-11);

/// Symmetry, consistency and shuffle residuals of the two-point fluxes over
/// random admissible state pairs.
AuditReport flux_audit(int pairs = 10000, std::uint64_t seed = 1, double tol = 1e-12);

/// Spatial GCL residual and J > 0 on static-perturbed and moving meshes at
/// `samples` times.
AuditReport gcl_audit(int samples = 20, double tol = 1e-12);

/// C-matrix contraction against the physical viscous flux and
/// semidefiniteness of the metric-transformed blocks.
AuditReport viscous_audit(int samples = 1000, std::uint64_t seed = 1);

}  // namespace esale

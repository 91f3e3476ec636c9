#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "polaron/config.hpp"
#include "polaron/double_well.hpp"
#include "polaron/ed_oracle.hpp"

namespace polaron::validation {

/// Numerical knobs and the geometry override taken from a RunConfig. The
/// physical regimes of the checks are fixed.
struct Settings {
  std::optional<double> height_ratio;
  ed::EdOptions ed;
  FdGrid fd;

  static Settings from(const RunConfig& config);
};

struct Criterion {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<std::string> details;
  // Wall time per independent point, filled only where a per-point limit
  // applies. Never printed by the report.
  std::vector<double> item_seconds;
};

/// Criteria evaluated by `validate`; determinism (9) is checked by running
/// the report twice.
inline constexpr int first_criterion = 1;
inline constexpr int last_report_criterion = 8;

Criterion run(int id, const Settings& settings);

struct KappaRow {
  ModelKind model;
  double lambda = 0.0;
  double gamma = 0.0;
  double kappa_paper = 0.0;
  double kappa_curv = 0.0;
  double mass_paper = 0.0;  // NaN outside validity
  double mass_curv = 0.0;   // NaN outside validity
  double mass_fd = 0.0;     // NaN without a double well
};

/// Adiabatic masses at t/omega = 5 under both kappa conventions next to the
/// finite-difference reference.
std::vector<KappaRow> kappa_table(const Settings& settings);

/// Full text report. Returns the number of failed criteria.
int write_report(std::ostream& out, const RunConfig& config);

}  // namespace polaron::validation

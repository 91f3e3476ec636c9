#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polaron/double_well.hpp"
#include "polaron/ed_oracle.hpp"
#include "polaron/lattice_forces.hpp"
#include "polaron/optical.hpp"

namespace polaron {

enum class SweepParam { Lambda, OmegaOverT };
enum class Normalization { Raw, UnitPeak };
// Which quantity two optical spectra share besides Ep, t and omega.
enum class Comparison { EqualEp, EqualTTilde };
enum class KappaSelection { PaperExact, CurvatureDerived, Both };

std::string_view to_string(SweepParam p);
std::string_view to_string(Normalization n);
std::string_view to_string(Comparison c);
std::string_view to_string(KappaSelection k);

struct SweepConfig {
  SweepParam param = SweepParam::Lambda;
  std::optional<double> from;
  std::optional<double> to;
  std::optional<int> steps;
};

struct OpticalConfig {
  double sigma0 = 1.0;
  std::optional<double> nu_min;
  std::optional<double> nu_max;
  int nu_steps = 800;
  Normalization normalization = Normalization::Raw;
  TTildeSource t_tilde_source = TTildeSource::Nonadiabatic;
  Comparison compare = Comparison::EqualEp;
};

struct NumericConfig {
  int fd_points = 2001;
  double fd_halfwidth_multiplier = 3.0;
  int ed_nmax_cap = 512;
};

struct RunConfig {
  ModelKind model = ModelKind::Frohlich3D;
  double t = 1.0;
  double omega = 0.2;
  std::optional<double> Ep;
  std::optional<double> lambda;
  SweepConfig sweep;
  // Values of the axis not swept (omega/t for a lambda sweep and vice versa).
  std::vector<double> series;
  OpticalConfig optical;
  NumericConfig numeric;
  KappaSelection kappa = KappaSelection::CurvatureDerived;
  std::optional<double> height_ratio;

  /// Ep from whichever of Ep / lambda was given. Throws InvalidArgument
  /// unless exactly one is set.
  double coupling_Ep() const;
  std::vector<KappaConvention> conventions() const;
  FdGrid fd_grid() const;
  ed::EdOptions ed_options() const;
};

using Assignment = std::pair<std::string, std::string>;
using Assignments = std::vector<Assignment>;

/// "key=value", whitespace around either side trimmed.
Assignment parse_assignment(std::string_view text);

/// Flat key=value lines; `#` starts a comment, blank lines are skipped.
Assignments parse_config_text(std::string_view text);
Assignments read_config_file(const std::string& path);

/// Applies `file` then `flags`, so flags win. Ep and lambda share one slot:
/// setting either in the flags replaces the other from the file.
RunConfig make_config(const Assignments& file, const Assignments& flags = {});

/// Canonical key=value dump, used for metadata headers.
Assignments describe(const RunConfig& config);

}  // namespace polaron

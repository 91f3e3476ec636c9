#include "polaron/nonadiabatic.hpp"

#include <cmath>

#include "polaron/error.hpp"

namespace polaron {

NonadiabaticResult renormalized_hopping(double t, const CouplingSummary& summary) {
  if (!(t > 0.0)) throw InvalidArgument("bare hopping t must be positive");
  NonadiabaticResult r;
  r.g2 = summary.g2;
  r.t_tilde = t * std::exp(-summary.g2);
  r.mass_ratio_band = std::exp(summary.g2);
  r.lambda = summary.Ep / (2.0 * t);
  return r;
}

double mass_ratio(const CouplingSummary& a, const CouplingSummary& b) {
  const auto close = [](double x, double y) {
    return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y));
  };
  if (!close(a.Ep, b.Ep)) throw InvalidArgument("mass_ratio needs equal polaronic shifts");
  if (!close(a.omega, b.omega)) throw InvalidArgument("mass_ratio needs equal phonon frequencies");
  return std::exp(a.g2 - b.g2);
}

double frohlich_holstein_mass_ratio(double lambda, double omega_over_t) {
  if (lambda < 0.0) throw InvalidArgument("lambda must be non-negative");
  if (!(omega_over_t > 0.0)) throw InvalidArgument("omega/t must be positive");
  if (lambda == 0.0) return 1.0;
  const double t = 1.0;
  const double omega = omega_over_t * t;
  const double Ep = 2.0 * lambda * t;
  const auto sfp = coupling_summary(make_force_table(ModelKind::Frohlich3D, Ep, 1.0, omega));
  const auto shp = coupling_summary(make_force_table(ModelKind::Holstein, Ep, 1.0, omega));
  return mass_ratio(sfp, shp);
}

}  // namespace polaron

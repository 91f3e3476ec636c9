#pragma once

#include "polaron/lattice_forces.hpp"

namespace polaron {

/// Lang-Firsov (nonadiabatic) polaron band renormalization.
struct NonadiabaticResult {
  double t_tilde = 0.0;          // renormalized hopping t*exp(-g2)
  double mass_ratio_band = 1.0;  // m*/m = t/t_tilde
  double g2 = 0.0;
  double lambda = 0.0;  // Ep / 2t
};

NonadiabaticResult renormalized_hopping(double t, const CouplingSummary& summary);

/// Nonadiabatic mass of model A over model B at equal Ep and omega:
/// exp(g2_A - g2_B).
double mass_ratio(const CouplingSummary& a, const CouplingSummary& b);

/// m_SFP(3D) / m_SHP at coupling lambda = Ep/2t and the given omega/t.
double frohlich_holstein_mass_ratio(double lambda, double omega_over_t);

}  // namespace polaron

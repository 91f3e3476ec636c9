#pragma once

#include <string_view>
#include <vector>

#include "polaron/lattice_forces.hpp"

namespace polaron {

/// Which curvature factor kappa enters the closed-form splitting.
///
/// PaperExact uses kappa = 1 - 1/(36 lambda^2) verbatim. CurvatureDerived uses
/// the well curvature U''(xi0) = mu omega^2 kappa, i.e. kappa = 1 - 1/(4 gamma^2 lambda^2).
enum class KappaConvention { PaperExact, CurvatureDerived };

std::string_view to_string(KappaConvention convention);
KappaConvention parse_kappa_convention(std::string_view name);

/// Born-Oppenheimer reaction-coordinate problem
///   [-(1/2mu) d^2/dxi^2 + U(xi)] chi = E chi,
///   U(xi) = mu omega^2 xi^2 / 2 - sqrt(b xi^2 + t^2).
struct DoubleWellParams {
  double mu = 1.0;
  double b = 0.0;
  double t = 1.0;
  double omega = 1.0;
  // Add to the reduced-problem energy to recover the full lattice energy
  // (zero point of the integrated-out modes plus the static f+ shift).
  double energy_offset = 0.0;
  double gamma = 0.0;
  double Ep = 0.0;
  double lambda = 0.0;

  double potential(double xi) const;
  bool has_double_well() const;
  /// Position of the right-hand minimum, 0 for a single well.
  double well_minimum() const;
};

/// Projects the lattice onto the f- direction in mode space (mass-M
/// convention: mu = M, b = sum |f-_m|^2 / 4 = gamma M omega^2 Ep). The
/// orthogonal modes are integrated out and only enter energy_offset.
DoubleWellParams reduce_modes(const ForceTable& table, double t);

/// The five-site Frohlich well written with mu = M/2, b = (3/4) mu omega^2 Ep.
DoubleWellParams paper_frohlich_params(double Ep, double t, double omega, double M = 1.0);

struct AdiabaticResult {
  double kappa = 0.0;
  double omega_tilde = 0.0;
  double Delta = 0.0;
  double g2F = 0.0;
  double splitting = 0.0;
  double mass_ratio_band = 0.0;
  KappaConvention convention = KappaConvention::CurvatureDerived;
};

/// Closed-form tunnelling splitting Delta * exp(-g2F) with the coefficient
/// gamma*Ep/omega. Throws RegimeError outside the strong-coupling range.
AdiabaticResult analytic_splitting(double Ep, double t, double omega, double gamma,
                                   KappaConvention convention);

struct FdGrid {
  double half_width_multiplier = 3.0;
  int points = 2001;  // odd, includes both Dirichlet nodes
  int max_points = 16001;
  double tolerance = 1e-3;  // relative change of the splitting between refinements
};

struct FdLevels {
  std::vector<double> energies;  // ascending
  std::vector<double> gaps;      // energies[k] - energies[0], extended precision
  double half_width = 0.0;
  double step = 0.0;
  int points = 0;
};

double fd_half_width(const DoubleWellParams& params, double multiplier);

/// Lowest `count` levels on a single grid of `points` nodes over [-L, L].
FdLevels fd_levels(const DoubleWellParams& params, double half_width, int points, int count = 2);

struct NumericSplitting {
  double splitting = 0.0;
  double previous = 0.0;  // splitting on the next-coarser grid
  double ground_energy = 0.0;
  double half_width = 0.0;
  int points = 0;
};

/// E1 - E0 of the finite-difference Hamiltonian, refined by doubling the
/// grid until two successive splittings agree within `grid.tolerance`.
NumericSplitting numeric_splitting(const DoubleWellParams& params, const FdGrid& grid = {});

/// Polaron mass over band mass, 2t / splitting.
double adiabatic_mass(double splitting, double t);

}  // namespace polaron

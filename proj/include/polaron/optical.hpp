#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "polaron/double_well.hpp"
#include "polaron/lattice_forces.hpp"

namespace polaron {

/// Activation energy of the photon-assisted hop: Ep/2 for Holstein (the
/// target site is undeformed), gamma*Ep/2 for Frohlich (target already
/// partly deformed).
double activation_energy(const CouplingSummary& summary);

struct OpticalParams {
  double sigma0 = 1.0;
  double t_tilde = 0.0;
  double Ea = 0.0;
  double omega = 1.0;
};

/// Zero-temperature small-polaron conductivity (hbar = 1):
///   sigma0 t~^2 / (nu sqrt(2 Ea omega)) * exp(-(nu - 4 Ea)^2 / (8 Ea omega))
double conductivity(double nu, const OpticalParams& p);

/// Maximum of sigma(nu): larger root of 2 nu (nu - 4 Ea) = -8 Ea omega.
/// Requires Ea > omega, otherwise sigma decreases monotonically.
double stationary_peak(double Ea, double omega);

/// Default grid: `points` values evenly spaced on (0.05 Ea, 8 Ea].
std::vector<double> default_nu_grid(double Ea, int points = 800);

/// `points` values evenly spaced on (nu_min, nu_max].
std::vector<double> nu_grid(double nu_min, double nu_max, int points);

enum class TTildeSource { Nonadiabatic, Adiabatic };
std::string_view to_string(TTildeSource source);
TTildeSource parse_t_tilde_source(std::string_view name);

struct SpectrumPoint {
  double nu;
  double sigma;
};

struct Spectrum {
  std::vector<SpectrumPoint> points;
  ModelKind model = ModelKind::Holstein;
  double Ea = 0.0;
  double t_tilde = 0.0;
  double peak_nu = 0.0;  // highest interior local maximum, else global argmax
  double peak_sigma = 0.0;
  int interior_maxima = 0;
};

Spectrum tabulate(ModelKind model, const OpticalParams& params, std::span<const double> grid);

/// Hopping entering the prefactor, from the nonadiabatic or adiabatic route.
double optical_t_tilde(const CouplingSummary& summary, double t, TTildeSource source,
                       KappaConvention convention = KappaConvention::CurvatureDerived);

Spectrum spectrum(const CouplingSummary& summary, double t, double sigma0,
                  std::span<const double> grid, TTildeSource source = TTildeSource::Nonadiabatic,
                  KappaConvention convention = KappaConvention::CurvatureDerived);

}  // namespace polaron

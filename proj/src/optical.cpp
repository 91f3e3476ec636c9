#include "polaron/optical.hpp"

#include <cmath>
#include <string>

#include "polaron/error.hpp"
#include "polaron/nonadiabatic.hpp"

namespace polaron {

double activation_energy(const CouplingSummary& summary) {
  if (summary.model == ModelKind::Holstein) return 0.5 * summary.Ep;
  return 0.5 * summary.gamma * summary.Ep;
}

double conductivity(double nu, const OpticalParams& p) {
  if (!(nu > 0.0)) throw InvalidArgument("photon frequency must be positive");
  if (!(p.Ea > 0.0) || !(p.omega > 0.0))
    throw InvalidArgument("activation energy and phonon frequency must be positive");
  const double width_sq = 8.0 * p.Ea * p.omega;  // (2 sqrt(2 Ea omega))^2
  const double detuning = nu - 4.0 * p.Ea;
  return p.sigma0 * p.t_tilde * p.t_tilde / (nu * std::sqrt(2.0 * p.Ea * p.omega)) *
         std::exp(-detuning * detuning / width_sq);
}

double stationary_peak(double Ea, double omega) {
  if (!(Ea > omega))
    throw RegimeError("conductivity has no interior maximum unless Ea > omega");
  return 2.0 * Ea + 2.0 * std::sqrt(Ea * Ea - Ea * omega);
}

std::vector<double> nu_grid(double nu_min, double nu_max, int points) {
  if (!(nu_min >= 0.0) || !(nu_max > nu_min)) throw InvalidArgument("need 0 <= nu_min < nu_max");
  if (points < 1) throw InvalidArgument("frequency grid needs at least one point");
  std::vector<double> grid(points);
  const double step = (nu_max - nu_min) / points;
  for (int i = 0; i < points; ++i) grid[i] = nu_min + (i + 1) * step;
  return grid;
}

std::vector<double> default_nu_grid(double Ea, int points) {
  if (!(Ea > 0.0)) throw InvalidArgument("activation energy must be positive");
  return nu_grid(0.05 * Ea, 8.0 * Ea, points);
}

std::string_view to_string(TTildeSource source) {
  return source == TTildeSource::Nonadiabatic ? "nonadiabatic" : "adiabatic";
}

TTildeSource parse_t_tilde_source(std::string_view name) {
  if (name == "nonadiabatic") return TTildeSource::Nonadiabatic;
  if (name == "adiabatic") return TTildeSource::Adiabatic;
  throw InvalidArgument("unknown t_tilde source '" + std::string(name) + "'");
}

Spectrum tabulate(ModelKind model, const OpticalParams& params, std::span<const double> grid) {
  if (grid.empty()) throw InvalidArgument("empty frequency grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw InvalidArgument("frequency grid must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw InvalidArgument("frequency grid must be strictly increasing");
  }

  Spectrum s;
  s.model = model;
  s.Ea = params.Ea;
  s.t_tilde = params.t_tilde;
  s.points.reserve(grid.size());
  for (double nu : grid) s.points.push_back({nu, conductivity(nu, params)});

  std::size_t best = 0;
  for (std::size_t i = 1; i < s.points.size(); ++i)
    if (s.points[i].sigma > s.points[best].sigma) best = i;

  std::size_t best_interior = s.points.size();
  for (std::size_t i = 1; i + 1 < s.points.size(); ++i) {
    const double v = s.points[i].sigma;
    if (v > s.points[i - 1].sigma && v >= s.points[i + 1].sigma) {
      ++s.interior_maxima;
      if (best_interior == s.points.size() || v > s.points[best_interior].sigma) best_interior = i;
    }
  }
  if (best_interior != s.points.size()) best = best_interior;
  s.peak_nu = s.points[best].nu;
  s.peak_sigma = s.points[best].sigma;
  return s;
}

double optical_t_tilde(const CouplingSummary& summary, double t, TTildeSource source,
                       KappaConvention convention) {
  if (source == TTildeSource::Nonadiabatic) return renormalized_hopping(t, summary).t_tilde;
  const auto adiabatic = analytic_splitting(summary.Ep, t, summary.omega, summary.gamma, convention);
  return 0.5 * adiabatic.splitting;
}

Spectrum spectrum(const CouplingSummary& summary, double t, double sigma0,
                  std::span<const double> grid, TTildeSource source, KappaConvention convention) {
  OpticalParams p;
  p.sigma0 = sigma0;
  p.t_tilde = optical_t_tilde(summary, t, source, convention);
  p.Ea = activation_energy(summary);
  p.omega = summary.omega;
  return tabulate(summary.model, p, grid);
}

}  // namespace polaron

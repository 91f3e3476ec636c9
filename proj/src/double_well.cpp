#include "polaron/double_well.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "polaron/error.hpp"
#include "polaron/tridiagonal.hpp"

namespace polaron {

std::string_view to_string(KappaConvention convention) {
  return convention == KappaConvention::PaperExact ? "paper_exact" : "curvature_derived";
}

KappaConvention parse_kappa_convention(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "paper_exact" || lower == "paper") return KappaConvention::PaperExact;
  if (lower == "curvature_derived" || lower == "curvature") return KappaConvention::CurvatureDerived;
  throw InvalidArgument("unknown kappa convention '" + std::string(name) + "'");
}

double DoubleWellParams::potential(double xi) const {
  return 0.5 * mu * omega * omega * xi * xi - std::sqrt(b * xi * xi + t * t);
}

bool DoubleWellParams::has_double_well() const {
  return b > 0.0 && b / (mu * omega * omega) > std::abs(t);
}

double DoubleWellParams::well_minimum() const {
  if (!has_double_well()) return 0.0;
  // U'(xi0) = 0  <=>  sqrt(b xi0^2 + t^2) = b / (mu omega^2)
  const double s = b / (mu * omega * omega);
  return std::sqrt((s * s - t * t) / b);
}

DoubleWellParams reduce_modes(const ForceTable& table, double t) {
  if (!(t > 0.0)) throw InvalidArgument("bare hopping t must be positive");
  double plus_sq = 0.0;
  double minus_sq = 0.0;
  for (const auto& f : table.forces) {
    plus_sq += (f[0] + f[1]).squaredNorm();
    minus_sq += (f[0] - f[1]).squaredNorm();
  }
  const double cross = table.plus_minus_overlap();
  if (std::abs(cross) > 1e-10 * std::max(1.0, std::sqrt(plus_sq * minus_sq)))
    throw InvalidArgument("force table is not mirror symmetric; f+ and f- are not orthogonal");

  const auto summary = coupling_summary(table);
  const double M = table.M;
  const double w = table.omega;

  DoubleWellParams p;
  p.mu = M;
  p.b = 0.25 * minus_sq;
  p.t = t;
  p.omega = w;
  p.gamma = summary.gamma;
  p.Ep = summary.Ep;
  p.lambda = summary.Ep / (2.0 * t);
  p.energy_offset = 0.5 * (table.total_dofs() - 1) * w - plus_sq / (8.0 * M * w * w);
  return p;
}

DoubleWellParams paper_frohlich_params(double Ep, double t, double omega, double M) {
  if (!(t > 0.0) || !(omega > 0.0) || !(M > 0.0) || Ep < 0.0)
    throw InvalidArgument("invalid double-well parameters");
  DoubleWellParams p;
  p.mu = 0.5 * M;
  p.b = 0.75 * p.mu * omega * omega * Ep;
  p.t = t;
  p.omega = omega;
  p.gamma = 0.75;
  p.Ep = Ep;
  p.lambda = Ep / (2.0 * t);
  p.energy_offset = 4.0 * omega - 0.625 * Ep;
  return p;
}

AdiabaticResult analytic_splitting(double Ep, double t, double omega, double gamma,
                                   KappaConvention convention) {
  if (!(Ep > 0.0) || !(t > 0.0) || !(omega > 0.0) || !(gamma > 0.0))
    throw InvalidArgument("analytic_splitting needs positive Ep, t, omega, gamma");
  const double lambda = Ep / (2.0 * t);

  AdiabaticResult r;
  r.convention = convention;
  r.kappa = convention == KappaConvention::PaperExact
                ? 1.0 - 1.0 / (36.0 * lambda * lambda)
                : 1.0 - 1.0 / (4.0 * gamma * gamma * lambda * lambda);
  if (!(r.kappa > 0.0))
    throw RegimeError("not in adiabatic strong-coupling validity range (kappa <= 0)");

  const double coupling = gamma * Ep / omega;
  const double x3 = coupling * std::pow(r.kappa, 1.5);
  const double x1 = coupling * std::sqrt(r.kappa);
  if (x3 < 1.0 || x1 < 1.0)
    throw RegimeError("not in adiabatic strong-coupling validity range (negative square-root argument)");

  r.omega_tilde = omega * std::sqrt(r.kappa);
  r.Delta = r.omega_tilde / std::numbers::pi * std::sqrt(x3) * (1.0 - std::sqrt(1.0 - 1.0 / x3));
  r.g2F = x1 * std::sqrt(1.0 - 1.0 / x1);
  r.splitting = r.Delta * std::exp(-r.g2F);
  r.mass_ratio_band = 2.0 * t / r.splitting;
  return r;
}

double fd_half_width(const DoubleWellParams& params, double multiplier) {
  if (!(multiplier > 0.0)) throw InvalidArgument("half-width multiplier must be positive");
  const double xi0 = params.well_minimum();
  const double ell = 1.0 / std::sqrt(params.mu * params.omega);
  return std::max(multiplier * xi0, xi0 + 8.0 * ell);
}

FdLevels fd_levels(const DoubleWellParams& params, double half_width, int points, int count) {
  if (points < 5 || points % 2 == 0) throw InvalidArgument("FD grid needs an odd number of points");
  if (!(half_width > 0.0)) throw InvalidArgument("FD half-width must be positive");
  if (!(params.mu > 0.0) || !(params.omega > 0.0) || params.b < 0.0)
    throw InvalidArgument("invalid double-well parameters");

  // Nodes xi_j = j h, j = -K..K; the two end nodes carry the Dirichlet condition.
  const int K = (points - 1) / 2;
  const double h = half_width / K;
  const int n = points - 2;
  const double kinetic = 1.0 / (params.mu * h * h);

  std::vector<double> diag(n);
  std::vector<double> off(n - 1, -0.5 * kinetic);
  for (int i = 0; i < n; ++i) {
    const int j = i - (K - 1);
    diag[i] = kinetic + params.potential(j * h);
  }

  const auto levels = tridiag::lowest_eigenvalues(diag, off, count);
  FdLevels out;
  out.energies = levels.values;
  out.gaps = levels.gaps_from_lowest;
  out.half_width = half_width;
  out.step = h;
  out.points = points;
  return out;
}

NumericSplitting numeric_splitting(const DoubleWellParams& params, const FdGrid& grid) {
  if (grid.points < 201 || grid.points % 2 == 0)
    throw InvalidArgument("FD grid needs an odd number of points >= 201");
  if (params.b > 0.0 && !params.has_double_well())
    throw RegimeError("no double well: b / (mu omega^2) must exceed t");

  const double L = fd_half_width(params, grid.half_width_multiplier);
  const auto splitting_at = [&](int points) {
    const auto lv = fd_levels(params, L, points, 2);
    return std::make_pair(lv.gaps[1], lv.energies[0]);
  };

  int points = grid.points;
  auto [prev, prev_e0] = splitting_at(points);
  if (points >= grid.max_points) {
    const auto coarse = splitting_at((points + 1) / 2);
    if (std::abs(prev - coarse.first) > grid.tolerance * std::abs(prev))
      throw ConvergenceError("FD splitting not converged at the point cap", coarse.first, prev);
    return {prev, coarse.first, prev_e0, L, points};
  }
  double older = prev;
  while (2 * points - 1 <= grid.max_points) {
    points = 2 * points - 1;
    const auto [cur, e0] = splitting_at(points);
    if (std::abs(cur - prev) <= grid.tolerance * std::abs(cur)) return {cur, prev, e0, L, points};
    older = prev;
    prev = cur;
  }
  throw ConvergenceError("FD splitting not converged after grid refinement", older, prev);
}

double adiabatic_mass(double splitting, double t) {
  if (!(splitting > 0.0)) throw InvalidArgument("splitting must be positive");
  if (!(t > 0.0)) throw InvalidArgument("bare hopping t must be positive");
  return 2.0 * t / splitting;
}

}  // namespace polaron

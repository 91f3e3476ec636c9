#include "polaron/lattice_forces.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "polaron/error.hpp"

namespace polaron {

std::string_view to_string(ModelKind model) {
  switch (model) {
    case ModelKind::Frohlich3D:
      return "frohlich3d";
    case ModelKind::Frohlich1D:
      return "frohlich1d";
    case ModelKind::Holstein:
      return "holstein";
  }
  return "unknown";
}

ModelKind parse_model(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "frohlich3d") return ModelKind::Frohlich3D;
  if (lower == "frohlich1d") return ModelKind::Frohlich1D;
  if (lower == "holstein") return ModelKind::Holstein;
  throw InvalidArgument("unknown model '" + std::string(name) +
                        "' (expected frohlich3d, frohlich1d or holstein)");
}

double equilateral_height_ratio() { return std::sqrt(3.0) / 2.0; }

Geometry build_geometry(ModelKind model, double a, std::optional<double> height_ratio) {
  if (!(a > 0.0)) throw InvalidArgument("lattice constant must be positive");
  const double ratio = height_ratio.value_or(equilateral_height_ratio());
  if (!(ratio > 0.0)) throw InvalidArgument("inter-chain height must be positive");

  Geometry g;
  g.a = a;
  g.height = ratio * a;
  g.sites = {Vec3(0.0, 0.0, 0.0), Vec3(a, 0.0, 0.0)};
  if (model == ModelKind::Holstein) {
    g.frohlich_chain = false;
    g.ions = {{1, Vec3(0.0, g.height, 0.0)}, {2, Vec3(a, g.height, 0.0)}};
  } else {
    g.frohlich_chain = true;
    g.ions = {{-1, Vec3(-0.5 * a, g.height, 0.0)},
              {0, Vec3(0.5 * a, g.height, 0.0)},
              {1, Vec3(1.5 * a, g.height, 0.0)}};
  }
  return g;
}

double ForceTable::overlap(int i, int j) const {
  double s = 0.0;
  for (const auto& f : forces) s += f[i].dot(f[j]);
  return s;
}

double ForceTable::plus_minus_overlap() const {
  double s = 0.0;
  for (const auto& f : forces) s += (f[0] + f[1]).dot(f[0] - f[1]);
  return s;
}

ForceTable compute_forces(const Geometry& geometry, ModelKind model, double strength,
                          double M, double omega) {
  if (!(strength > 0.0)) throw InvalidArgument("force strength must be positive");
  if (!(M > 0.0) || !(omega > 0.0))
    throw InvalidArgument("ion mass and phonon frequency must be positive");
  const bool wants_chain = model != ModelKind::Holstein;
  if (wants_chain != geometry.frohlich_chain)
    throw InvalidArgument("geometry does not match model " + std::string(to_string(model)));

  ForceTable table;
  table.model = model;
  table.M = M;
  table.omega = omega;
  table.strength = strength;
  table.dofs_per_ion = model == ModelKind::Frohlich1D ? 1 : 3;

  for (const auto& ion : geometry.ions) {
    table.ion_indices.push_back(ion.index);
    table.forces.push_back({Vec3::Zero(), Vec3::Zero()});
  }

  const Vec3 perpendicular(0.0, 1.0, 0.0);
  for (int site = 0; site < 2; ++site) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& ion : geometry.ions)
      nearest = std::min(nearest, (ion.position - geometry.sites[site]).norm());
    for (std::size_t k = 0; k < geometry.ions.size(); ++k) {
      const Vec3 d = geometry.ions[k].position - geometry.sites[site];
      if (d.norm() > nearest * (1.0 + 1e-9)) continue;
      Vec3 f = strength * d.normalized();
      if (model == ModelKind::Frohlich1D) f = f.dot(perpendicular) * perpendicular;
      table.forces[k][site] = f;
    }
  }
  return table;
}

CouplingSummary coupling_summary(const ForceTable& table) {
  const double self = table.overlap(0, 0);
  if (!(self > 0.0)) throw InvalidArgument("force table has zero total force");
  const double cross = table.overlap(0, 1);
  const double M = table.M;
  const double w = table.omega;

  CouplingSummary s;
  s.model = table.model;
  s.omega = w;
  s.Ep = self / (2.0 * M * w * w);
  s.gamma = 1.0 - cross / self;
  s.g2 = (self - cross) / (2.0 * M * w * w * w);
  return s;
}

double calibrate_strength(double Ep, ModelKind model, double M, double omega,
                          std::optional<double> height_ratio) {
  if (!(Ep > 0.0) || !(M > 0.0) || !(omega > 0.0))
    throw InvalidArgument("calibration inputs must be positive");
  // Ep is quadratic in the force magnitude.
  const auto unit = compute_forces(build_geometry(model, 1.0, height_ratio), model, 1.0, M, omega);
  return std::sqrt(Ep / coupling_summary(unit).Ep);
}

ForceTable make_force_table(ModelKind model, double Ep, double M, double omega,
                            std::optional<double> height_ratio) {
  const double s = calibrate_strength(Ep, model, M, omega, height_ratio);
  return compute_forces(build_geometry(model, 1.0, height_ratio), model, s, M, omega);
}

}  // namespace polaron

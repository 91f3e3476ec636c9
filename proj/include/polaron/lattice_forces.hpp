#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace polaron {

enum class ModelKind { Frohlich3D, Frohlich1D, Holstein };

std::string_view to_string(ModelKind model);
/// Accepts "frohlich3d", "frohlich1d", "holstein" (case-insensitive).
ModelKind parse_model(std::string_view name);

using Vec3 = Eigen::Vector3d;

struct Ion {
  int index;  // m
  Vec3 position;
};

/// Two electron sites on the lower chain plus the vibrating ions.
///
/// Sites sit at (0,0,0) and (a,0,0). The Frohlich chain has ions m = -1, 0, +1
/// at x = -a/2, a/2, 3a/2; the Holstein geometry has ion m = i directly above
/// site i. All ions share the height h.
struct Geometry {
  double a = 1.0;
  double height = 0.0;
  bool frohlich_chain = true;
  std::array<Vec3, 2> sites;
  std::vector<Ion> ions;
};

/// Height ratio h/a giving equilateral triangles (nearest distances all equal a).
double equilateral_height_ratio();

/// Builds the geometry for `model`. `height_ratio` overrides h/a; by default
/// the equilateral value is used, for which the central-force Frohlich table
/// has gamma = 3/4 exactly.
Geometry build_geometry(ModelKind model, double a,
                        std::optional<double> height_ratio = std::nullopt);

/// Electron-ion forces f_m(i) in the nearest-neighbour approximation.
struct ForceTable {
  ModelKind model = ModelKind::Frohlich3D;
  std::vector<int> ion_indices;
  // forces[k][i]: force between electron on site i (0 or 1) and ion ion_indices[k]
  std::vector<std::array<Vec3, 2>> forces;
  double M = 1.0;
  double omega = 1.0;
  double strength = 0.0;
  // Vibrational degrees of freedom per ion: 3 for isotropic ions, 1 for the
  // chain polarized perpendicular to itself.
  int dofs_per_ion = 3;

  std::size_t ion_count() const { return ion_indices.size(); }
  /// Sum over ions of f_m(i) . f_m(j).
  double overlap(int i, int j) const;
  /// Sum over ions of f+_m . f-_m, zero for a mirror-symmetric table.
  double plus_minus_overlap() const;
  int total_dofs() const { return static_cast<int>(ion_count()) * dofs_per_ion; }
};

/// Central force of magnitude `strength` from each site toward its nearest
/// ions. Frohlich1D keeps only the component perpendicular to the chain
/// within the plane of both chains.
ForceTable compute_forces(const Geometry& geometry, ModelKind model, double strength,
                          double M, double omega);

struct CouplingSummary {
  double Ep = 0.0;     // polaronic shift
  double gamma = 0.0;  // unshared fraction of Ep
  double g2 = 0.0;     // Lang-Firsov exponent
  double omega = 1.0;
  ModelKind model = ModelKind::Frohlich3D;
};

CouplingSummary coupling_summary(const ForceTable& table);

/// Force magnitude that produces the polaronic shift `Ep` for `model`.
double calibrate_strength(double Ep, ModelKind model, double M, double omega,
                          std::optional<double> height_ratio = std::nullopt);

/// Calibrated table on the default (a = 1) geometry.
ForceTable make_force_table(ModelKind model, double Ep, double M, double omega,
                            std::optional<double> height_ratio = std::nullopt);

}  // namespace polaron

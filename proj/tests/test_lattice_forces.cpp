#include <doctest.h>

#include <cmath>

#include "polaron/error.hpp"
#include "polaron/lattice_forces.hpp"
#include "test_support.hpp"

using namespace polaron;
using polaron::testing::Gen;

namespace {

// Independent route: for central unit forces on the equilateral-type chain
// the only shared ion is m = 0, seen from the two sites at +/- the angle
// between (a/2, h) and (-a/2, h). gamma = 1 - cos(angle) / 2.
double gamma_from_angle(double height_ratio) {
  const double h2 = height_ratio * height_ratio;
  const double cos_angle = (h2 - 0.25) / (h2 + 0.25);
  return 1.0 - 0.5 * cos_angle;
}

}  // namespace

TEST_CASE("Frohlich geometry is equilateral at the default height") {
  const auto g = build_geometry(ModelKind::Frohlich3D, 1.0);
  REQUIRE(g.ions.size() == 3);
  CHECK(g.ions[1].index == 0);
  CHECK(g.ions[1].position.x() == doctest::Approx(0.5));
  CHECK(g.ions[1].position.y() == doctest::Approx(0.866025).epsilon(1e-6));
  CHECK(g.ions[1].position.z() == 0.0);
  CHECK((g.ions[1].position - g.sites[0]).norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK((g.sites[1] - g.sites[0]).isApprox(Vec3(1.0, 0.0, 0.0)));
  CHECK(g.ions[0].position.x() == doctest::Approx(-0.5));
  CHECK(g.ions[2].position.x() == doctest::Approx(1.5));
}

TEST_CASE("geometry scales with the lattice constant") {
  const auto g1 = build_geometry(ModelKind::Frohlich3D, 1.0);
  const auto g2 = build_geometry(ModelKind::Frohlich3D, 2.0);
  for (std::size_t k = 0; k < g1.ions.size(); ++k)
    CHECK(g2.ions[k].position.isApprox(2.0 * g1.ions[k].position));
  CHECK((g2.ions[0].position - g2.sites[0]).norm() == doctest::Approx(2.0));
  CHECK((g2.ions[1].position - g2.sites[1]).norm() == doctest::Approx(2.0));
}

TEST_CASE("Holstein ions sit above their sites") {
  const auto g = build_geometry(ModelKind::Holstein, 1.0);
  REQUIRE(g.ions.size() == 2);
  CHECK(g.ions[0].index == 1);
  CHECK(g.ions[0].position.isApprox(Vec3(0.0, g.height, 0.0)));
  CHECK((g.sites[1] - g.ions[0].position).norm() > (g.sites[0] - g.ions[0].position).norm());
  const auto table = compute_forces(g, ModelKind::Holstein, 1.0, 1.0, 1.0);
  CHECK(table.forces[0][1].norm() == 0.0);
  CHECK(table.forces[1][0].norm() == 0.0);
}

TEST_CASE("geometry and force inputs are validated") {
  CHECK_THROWS_AS(build_geometry(ModelKind::Holstein, 0.0), InvalidArgument);
  CHECK_THROWS_AS(build_geometry(ModelKind::Frohlich3D, -1.0), InvalidArgument);
  const auto chain = build_geometry(ModelKind::Frohlich3D, 1.0);
  CHECK_THROWS_AS(compute_forces(chain, ModelKind::Holstein, 1.0, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(compute_forces(chain, ModelKind::Frohlich3D, 0.0, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(compute_forces(chain, ModelKind::Frohlich3D, 1.0, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(parse_model("frolich"), InvalidArgument);
  CHECK(parse_model("Frohlich1D") == ModelKind::Frohlich1D);
}

TEST_CASE("Frohlich 3D force table") {
  const auto t = compute_forces(build_geometry(ModelKind::Frohlich3D, 1.0), ModelKind::Frohlich3D,
                                1.0, 1.0, 1.0);
  // ion order: m = -1, 0, +1
  CHECK(t.forces[0][0].norm() == doctest::Approx(1.0));
  CHECK(t.forces[1][0].norm() == doctest::Approx(1.0));
  CHECK(t.forces[2][0].norm() == 0.0);
  CHECK(t.forces[0][1].norm() == 0.0);
  CHECK(t.forces[1][1].norm() == doctest::Approx(1.0));
  CHECK(t.forces[2][1].norm() == doctest::Approx(1.0));
  CHECK(t.forces[1][0].dot(t.forces[1][1]) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(t.forces[1][0].isApprox(Vec3(0.5, std::sqrt(3.0) / 2.0, 0.0)));
}

TEST_CASE("Frohlich 1D table is the perpendicular projection") {
  const auto t = compute_forces(build_geometry(ModelKind::Frohlich1D, 1.0), ModelKind::Frohlich1D,
                                1.0, 1.0, 1.0);
  CHECK(t.forces[1][0].norm() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(t.forces[1][0].dot(t.forces[1][1]) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(t.forces[1][0].x() == 0.0);
  CHECK(t.dofs_per_ion == 1);
}

TEST_CASE("Holstein sites share no ion") {
  const auto t = compute_forces(build_geometry(ModelKind::Holstein, 1.0), ModelKind::Holstein, 1.3,
                                1.0, 1.0);
  CHECK(t.overlap(0, 1) == 0.0);
}

TEST_CASE("coupling summaries reproduce the stated gamma and Ep forms") {
  Gen gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double s = gen.log_uniform(0.01, 100.0);
    const double M = gen.log_uniform(0.1, 10.0);
    const double w = gen.log_uniform(0.05, 20.0);

    const auto f3 = coupling_summary(compute_forces(build_geometry(ModelKind::Frohlich3D, 1.0),
                                                    ModelKind::Frohlich3D, s, M, w));
    CHECK(f3.gamma == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(f3.Ep == doctest::Approx(s * s / (M * w * w)).epsilon(1e-12));

    const auto h = coupling_summary(compute_forces(build_geometry(ModelKind::Holstein, 1.0),
                                                   ModelKind::Holstein, s, M, w));
    CHECK(h.gamma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.Ep == doctest::Approx(s * s / (2.0 * M * w * w)).epsilon(1e-12));

    const auto f1 = coupling_summary(compute_forces(build_geometry(ModelKind::Frohlich1D, 1.0),
                                                    ModelKind::Frohlich1D, s, M, w));
    CHECK(f1.gamma == doctest::Approx(0.5).epsilon(1e-12));

    for (const auto& c : {f3, h, f1}) {
      CHECK(c.g2 >= 0.0);
      CHECK(c.g2 == doctest::Approx(c.gamma * c.Ep / c.omega).epsilon(1e-12));
    }
  }
}

TEST_CASE("mirror symmetry of every table") {
  Gen gen(12);
  for (auto model : {ModelKind::Frohlich3D, ModelKind::Frohlich1D, ModelKind::Holstein}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = build_geometry(model, gen.uniform(0.5, 3.0), gen.uniform(0.3, 2.0));
      const auto t = compute_forces(g, model, gen.uniform(0.1, 5.0), 1.0, 1.0);
      CHECK(t.overlap(0, 0) == doctest::Approx(t.overlap(1, 1)).epsilon(1e-14));
      CHECK(std::abs(t.plus_minus_overlap()) <= 1e-12 * t.overlap(0, 0));
    }
  }
}

TEST_CASE("gamma is invariant under rescaling strength and lattice constant") {
  Gen gen(13);
  for (auto model : {ModelKind::Frohlich3D, ModelKind::Frohlich1D, ModelKind::Holstein}) {
    const double ref =
        coupling_summary(compute_forces(build_geometry(model, 1.0), model, 1.0, 1.0, 1.0)).gamma;
    for (int trial = 0; trial < 10; ++trial) {
      const auto t = compute_forces(build_geometry(model, gen.log_uniform(0.1, 10.0)), model,
                                    gen.log_uniform(0.1, 10.0), 1.0, 1.0);
      CHECK(coupling_summary(t).gamma == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("only the equilateral height gives gamma = 3/4") {
  for (double ratio : {0.3, 0.6, std::sqrt(3.0) / 2.0, 1.2, 2.5}) {
    const auto t = compute_forces(build_geometry(ModelKind::Frohlich3D, 1.0, ratio),
                                  ModelKind::Frohlich3D, 1.0, 1.0, 1.0);
    CHECK(coupling_summary(t).gamma == doctest::Approx(gamma_from_angle(ratio)).epsilon(1e-12));
  }
  CHECK(gamma_from_angle(equilateral_height_ratio()) == doctest::Approx(0.75).epsilon(1e-15));
  const auto off = compute_forces(build_geometry(ModelKind::Frohlich3D, 1.0, 1.5),
                                  ModelKind::Frohlich3D, 1.0, 1.0, 1.0);
  CHECK(std::abs(coupling_summary(off).gamma - 0.75) > 0.05);
}

TEST_CASE("zero total force is rejected") {
  ForceTable t;
  t.ion_indices = {1};
  t.forces = {{Vec3::Zero(), Vec3::Zero()}};
  CHECK_THROWS_AS(coupling_summary(t), InvalidArgument);
}

TEST_CASE("calibrate_strength") {
  CHECK(calibrate_strength(1.0, ModelKind::Holstein, 1.0, 1.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(calibrate_strength(1.0, ModelKind::Frohlich3D, 1.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(calibrate_strength(4.0, ModelKind::Frohlich3D, 1.0, 1.0) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(calibrate_strength(0.0, ModelKind::Holstein, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(calibrate_strength(1.0, ModelKind::Holstein, -1.0, 1.0), InvalidArgument);

  Gen gen(14);
  for (auto model : {ModelKind::Frohlich3D, ModelKind::Frohlich1D, ModelKind::Holstein}) {
    for (int trial = 0; trial < 20; ++trial) {
      const double Ep = gen.log_uniform(1e-3, 1e3);
      const double M = gen.log_uniform(0.1, 10.0);
      const double w = gen.log_uniform(0.05, 20.0);
      const auto s = coupling_summary(make_force_table(model, Ep, M, w));
      CHECK(s.Ep == doctest::Approx(Ep).epsilon(1e-12));
    }
  }
}

#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "polaron/ed_oracle.hpp"
#include "polaron/error.hpp"
#include "polaron/nonadiabatic.hpp"
#include "test_support.hpp"

using namespace polaron;
using namespace polaron::ed;

namespace {
ForceTable table_for(ModelKind model, double Ep, double omega) {
  return make_force_table(model, Ep, 1.0, omega);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
}  // namespace

TEST_CASE("effective modes preserve the force Gram matrix") {
  for (auto model : {ModelKind::Frohlich3D, ModelKind::Frohlich1D, ModelKind::Holstein}) {
    const auto table = table_for(model, 3.0, 0.7);
    const auto rc = effective_modes(table);
    CHECK(rc.n_modes == 2);
    CHECK(rc.has_parity());
    const double scale = 1.0 / (2.0 * table.M * table.omega);
    const Eigen::Matrix2d gram = rc.coupling * rc.coupling.transpose();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(gram(i, j) == doctest::Approx(table.overlap(i, j) * scale).epsilon(1e-12));
    CHECK(rc.lang_firsov_g2() == doctest::Approx(coupling_summary(table).g2).epsilon(1e-12));
  }
}

TEST_CASE("Holstein reduces to one symmetric and one antisymmetric mode") {
  const auto rc = effective_modes(table_for(ModelKind::Holstein, 2.0, 1.0));
  CHECK(rc.mode_parity == std::vector<int>{1, -1});
  CHECK(rc.coupling(0, 0) == doctest::Approx(rc.coupling(1, 0)));
  CHECK(rc.coupling(0, 1) == doctest::Approx(-rc.coupling(1, 1)));
  const auto cart = cartesian_modes(table_for(ModelKind::Holstein, 2.0, 1.0));
  CHECK(cart.n_modes == 6);
}

TEST_CASE("zero forces leave no coupled mode") {
  ForceTable table = table_for(ModelKind::Frohlich3D, 1.0, 1.0);
  for (auto& f : table.forces) f = {Vec3::Zero(), Vec3::Zero()};
  const auto rc = effective_modes(table);
  CHECK(rc.n_modes == 0);
  const auto r = diagonalize(1.0, rc, 4);
  CHECK(r.E1 - r.E0 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.ground_parity == 1);
}

TEST_CASE("Fock basis sizes") {
  CHECK(FockBasis(2, 5, Truncation::PerMode).size() == 36);
  CHECK(FockBasis(3, 4, Truncation::PerMode).size() == 125);
  CHECK(FockBasis(9, 4, Truncation::TotalQuanta).size() == static_cast<std::size_t>(binomial(13, 9)));
  CHECK(FockBasis(0, 4, Truncation::PerMode).size() == 1);
  const FockBasis b(2, 3, Truncation::PerMode);
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.find(b.state(i)) == i);
  CHECK_FALSE(b.find({4, 0}).has_value());
}

TEST_CASE("uncoupled two-site electron splits by 2t") {
  ReducedCoupling rc;
  rc.n_modes = 2;
  rc.coupling = Eigen::MatrixXd::Zero(2, 2);
  rc.mode_parity = {1, -1};
  rc.omega = 3.0;
  const auto r = build_and_diagonalize(1.0, rc);
  CHECK(r.E1 - r.E0 == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.E0 == doctest::Approx(-1.0 + 3.0).epsilon(1e-10));
}

TEST_CASE("static limit gives the polaronic shift") {
  const auto rc = effective_modes(table_for(ModelKind::Holstein, 2.0, 1.0));
  const auto r = diagonalize(0.0, rc, 30);
  const double zero_point = 0.5 * rc.n_modes * rc.omega;
  CHECK(std::abs(r.E0 - zero_point - (-2.0)) < 1e-6);
}

TEST_CASE("antiadiabatic Holstein matches Lang-Firsov") {
  const auto table = table_for(ModelKind::Holstein, 8.0, 4.0);
  const auto r = build_and_diagonalize(1.0, effective_modes(table));
  CHECK(r.converged);
  CHECK(std::abs(r.t_eff / std::exp(-2.0) - 1.0) <= 0.05);
}

TEST_CASE("parity sectors reproduce the full two-site spectrum") {
  const auto rc = effective_modes(table_for(ModelKind::Frohlich3D, 8.0, 4.0));
  const FockBasis basis(rc.n_modes, 10, Truncation::PerMode);
  const SparseMatrix h = two_site_hamiltonian(1.0, rc, basis);
  const SparseMatrix p = parity_operator(rc, basis);
  const SparseMatrix commutator = SparseMatrix(h * p) - SparseMatrix(p * h);
  CHECK(commutator.norm() < 1e-12);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(h)};
  const auto sector = diagonalize(1.0, rc, 10);
  CHECK(es.eigenvalues()[0] == doctest::Approx(sector.E0).epsilon(1e-12));
  CHECK(es.eigenvalues()[1] == doctest::Approx(sector.E1).epsilon(1e-12));
  const Eigen::MatrixXd pd(p);
  const double p0 = es.eigenvectors().col(0).dot(pd * es.eigenvectors().col(0));
  const double p1 = es.eigenvectors().col(1).dot(pd * es.eigenvectors().col(1));
  CHECK(std::abs(p0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(p0 * p1 == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(p0 == doctest::Approx(sector.ground_parity));
}

TEST_CASE("rotating away the decoupled modes is exact under total-quanta truncation") {
  const auto table = table_for(ModelKind::Frohlich3D, 8.0, 4.0);
  const auto cart = cartesian_modes(table);
  const auto reduced = effective_modes(table);
  REQUIRE(cart.n_modes == 9);
  const int quanta = 4;

  const auto lowest_two = [](const SparseMatrix& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(h), Eigen::EigenvaluesOnly);
    return std::make_pair(es.eigenvalues()[0], es.eigenvalues()[1]);
  };
  const auto full = lowest_two(two_site_hamiltonian(1.0, cart, FockBasis(9, quanta, Truncation::TotalQuanta)));
  const auto two = lowest_two(two_site_hamiltonian(1.0, reduced, FockBasis(2, quanta, Truncation::TotalQuanta)));
  const double decoupled_zero_point = 0.5 * (9 - 2) * table.omega;
  CHECK(std::abs(full.first - (two.first + decoupled_zero_point)) < 1e-10);
  CHECK(std::abs(full.second - (two.second + decoupled_zero_point)) < 1e-10);
}

TEST_CASE("ground energy is variational in n_max") {
  const auto rc = effective_modes(table_for(ModelKind::Frohlich3D, 6.0, 1.0));
  double prev = INFINITY;
  for (int n : {2, 4, 6, 8, 12, 16, 24}) {
    const double e0 = diagonalize(1.0, rc, n).E0;
    CHECK(e0 <= prev + 1e-10);
    prev = e0;
  }
}

TEST_CASE("Lanczos agrees with the dense solver") {
  const auto rc = effective_modes(table_for(ModelKind::Frohlich3D, 6.0, 0.5));
  const FockBasis basis(rc.n_modes, 30, Truncation::PerMode);
  for (int parity : {1, -1}) {
    const auto h = sector_hamiltonian(1.0, rc, basis, parity);
    SolverOptions dense;
    dense.dense_limit = 1'000'000;
    const double exact = lowest_eigenvalue(h, dense);
    CHECK(lanczos_lowest(h) == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("truncation cap surfaces non-convergence") {
  const auto rc = effective_modes(table_for(ModelKind::Holstein, 8.0, 1.0));
  EdOptions opts;
  opts.n_max_start = 2;
  opts.n_max_cap = 4;
  try {
    build_and_diagonalize(1.0, rc, opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.last()));
    CHECK(std::isfinite(e.previous()));
  }
  opts.n_max_start.reset();
  opts.n_max_cap = 1;
  CHECK_THROWS_AS(build_and_diagonalize(1.0, rc, opts), ConvergenceError);
}

TEST_CASE("antiadiabatic agreement across models") {
  // Ratio form holds on the whole grid; the log form only once g^2 is not small.
  for (auto model : {ModelKind::Holstein, ModelKind::Frohlich3D, ModelKind::Frohlich1D}) {
    for (auto [wt, lambda] : std::vector<std::pair<double, double>>{{4, 1}, {4, 1.5}, {4, 2}, {8, 1}, {6, 3}}) {
      const auto table = table_for(model, 2.0 * lambda, wt);
      const double g2 = coupling_summary(table).g2;
      const auto r = build_and_diagonalize(1.0, effective_modes(table));
      CHECK(std::abs(r.t_eff / std::exp(-g2) - 1.0) <= 0.05);
      if (g2 >= 1.5) CHECK(std::abs(std::log(r.t_eff) + g2) <= 0.05 * g2);
    }
  }
}

TEST_CASE("oracle report rows") {
  CHECK(oracle_report({ModelKind::Holstein}, {}).empty());
  const auto rows = oracle_report({ModelKind::Frohlich3D, ModelKind::Frohlich1D}, {{1.0, 4.0}});
  REQUIRE(rows.size() == 2);
  const double Ep = 2.0, w = 4.0;
  CHECK(rows[1].t_eff_ed / rows[0].t_eff_ed == doctest::Approx(std::exp(Ep / (4 * w))).epsilon(0.10));
  CHECK(rows[0].ed_converged);
  CHECK(std::isnan(rows[0].half_splitting_curv));
  CHECK(std::abs(rows[0].deviation(rows[0].t_tilde_nonadiabatic)) <= 0.05);
}

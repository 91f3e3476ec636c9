#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "polaron/error.hpp"
#include "polaron/tridiagonal.hpp"
#include "test_support.hpp"

using namespace polaron;

TEST_CASE("discrete Laplacian eigenvalues") {
  const int n = 500;
  std::vector<double> d(n, 2.0), e(n - 1, -1.0);
  const auto lv = tridiag::lowest_eigenvalues(d, e, 4);
  for (int k = 0; k < 4; ++k) {
    const double exact = 2.0 - 2.0 * std::cos((k + 1) * std::numbers::pi / (n + 1));
    CHECK(lv.values[k] == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("random tridiagonals agree with Eigen's QL route") {
  polaron::testing::Gen gen(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(2, 300);
    Eigen::VectorXd d(n), e(n - 1);
    for (int i = 0; i < n; ++i) d[i] = gen.uniform(-10.0, 10.0);
    for (int i = 0; i < n - 1; ++i) e[i] = gen.uniform(-3.0, 3.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);

    const int count = std::min(n, 5);
    const auto lv = tridiag::lowest_eigenvalues({d.data(), static_cast<std::size_t>(n)},
                                                {e.data(), static_cast<std::size_t>(n - 1)}, count);
    for (int k = 0; k < count; ++k) CHECK(lv.values[k] == doctest::Approx(es.eigenvalues()[k]).epsilon(1e-11));
    CHECK(tridiag::sturm_count({d.data(), static_cast<std::size_t>(n)},
                               {e.data(), static_cast<std::size_t>(n - 1)},
                               es.eigenvalues()[count - 1] + 1e-9) >= count);
  }
}

TEST_CASE("tiny gaps on a large diagonal stay resolved") {
  // 2x2 block [[a, eps], [eps, a]] has eigenvalues a -/+ eps.
  const double a = 1.0e5;
  for (double eps : {1e-6, 1e-10, 1e-12}) {
    std::vector<double> d{a, a}, e{eps};
    const auto lv = tridiag::lowest_eigenvalues(d, e, 2);
    CHECK(lv.gaps_from_lowest[1] == doctest::Approx(2.0 * eps).epsilon(1e-8));
  }
}

TEST_CASE("input validation") {
  std::vector<double> d{1.0, 2.0}, e{0.5};
  CHECK_THROWS_AS(tridiag::lowest_eigenvalues(d, e, 3), InvalidArgument);
  CHECK_THROWS_AS(tridiag::lowest_eigenvalues(d, std::vector<double>{}, 1), InvalidArgument);
  CHECK(tridiag::lowest_eigenvalues(std::vector<double>{3.0}, std::vector<double>{}, 1).values[0] == 3.0);
}

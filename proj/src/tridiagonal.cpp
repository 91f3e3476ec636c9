#include "polaron/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polaron/error.hpp"

namespace polaron::tridiag {
namespace {

#if defined(__SIZEOF_FLOAT128__)
__extension__ typedef __float128 extended_t;
constexpr double kExtendedEpsilon = 1.9259299443872359e-34;
#else
typedef long double extended_t;
constexpr double kExtendedEpsilon = std::numeric_limits<long double>::epsilon();
#endif

template <typename Real>
int count_below(std::span<const double> diag, std::span<const double> off_sq, Real x,
                Real pivmin) {
  int count = 0;
  Real q = Real(diag[0]) - x;
  if (q < 0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    if (q < pivmin && q > -pivmin) q = -pivmin;
    q = Real(diag[i]) - x - Real(off_sq[i - 1]) / q;
    if (q < 0) ++count;
  }
  return count;
}

struct Bracket {
  double lo;
  double hi;
};

}  // namespace

int sturm_count(std::span<const double> diag, std::span<const double> off, double x) {
  std::vector<double> off_sq(off.size());
  std::transform(off.begin(), off.end(), off_sq.begin(), [](double e) { return e * e; });
  return count_below<double>(diag, off_sq, x, std::numeric_limits<double>::min());
}

LowestLevels lowest_eigenvalues(std::span<const double> diag, std::span<const double> off,
                                int count) {
  const std::size_t n = diag.size();
  if (n == 0 || off.size() + 1 != n) throw InvalidArgument("tridiagonal: inconsistent sizes");
  if (count < 1 || static_cast<std::size_t>(count) > n)
    throw InvalidArgument("tridiagonal: requested eigenvalue count out of range");

  std::vector<double> off_sq(off.size());
  double max_off_sq = 0.0;
  for (std::size_t i = 0; i < off.size(); ++i) {
    off_sq[i] = off[i] * off[i];
    max_off_sq = std::max(max_off_sq, off_sq[i]);
  }

  // Gershgorin interval.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  const double norm = std::max({std::abs(lo), std::abs(hi), 1.0});
  const double pivmin_d = std::numeric_limits<double>::min() * std::max(1.0, max_off_sq);
  const extended_t pivmin_x = extended_t(pivmin_d);

  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<extended_t> roots;
  roots.reserve(count);

  for (int k = 0; k < count; ++k) {
    // Coarse stage in double precision.
    Bracket b{lo, hi};
    for (int it = 0; it < 200 && b.hi - b.lo > 4.0 * eps * norm; ++it) {
      const double mid = 0.5 * (b.lo + b.hi);
      if (count_below<double>(diag, off_sq, mid, pivmin_d) > k)
        b.hi = mid;
      else
        b.lo = mid;
    }

    // Widen by the double-precision backward error and confirm the bracket
    // with extended-precision counts before refining.
    double widen = 64.0 * eps * norm;
    extended_t xlo = extended_t(b.lo) - extended_t(widen);
    while (count_below<extended_t>(diag, off_sq, xlo, pivmin_x) > k) {
      widen *= 2.0;
      xlo -= extended_t(widen);
    }
    widen = 64.0 * eps * norm;
    extended_t xhi = extended_t(b.hi) + extended_t(widen);
    while (count_below<extended_t>(diag, off_sq, xhi, pivmin_x) <= k) {
      widen *= 2.0;
      xhi += extended_t(widen);
    }
    const extended_t tol = extended_t(8.0 * kExtendedEpsilon * norm);
    for (int it = 0; it < 200 && xhi - xlo > tol; ++it) {
      const extended_t mid = (xlo + xhi) / 2;
      if (count_below<extended_t>(diag, off_sq, mid, pivmin_x) > k)
        xhi = mid;
      else
        xlo = mid;
    }
    roots.push_back((xlo + xhi) / 2);
  }

  LowestLevels out;
  for (const auto& r : roots) {
    out.values.push_back(static_cast<double>(r));
    out.gaps_from_lowest.push_back(static_cast<double>(r - roots.front()));
  }
  return out;
}

}  // namespace polaron::tridiag

#pragma once

#include <span>
#include <vector>

namespace polaron::tridiag {

/// Lowest eigenvalues of a real symmetric tridiagonal matrix, found by
/// Sturm-sequence bisection. The final bisection runs in quad (or x87 long
/// double) precision, and gaps are formed before rounding to double, so
/// splittings many orders below the matrix norm stay resolved.
struct LowestLevels {
  std::vector<double> values;            // ascending
  std::vector<double> gaps_from_lowest;  // values[k] - values[0], extended precision
};

/// Number of eigenvalues strictly less than x.
int sturm_count(std::span<const double> diag, std::span<const double> off, double x);

/// `diag` has n entries, `off` has n - 1 (the sub/super diagonal).
LowestLevels lowest_eigenvalues(std::span<const double> diag, std::span<const double> off,
                                int count);

}  // namespace polaron::tridiag

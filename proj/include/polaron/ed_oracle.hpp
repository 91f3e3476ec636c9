#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "polaron/double_well.hpp"
#include "polaron/lattice_forces.hpp"

namespace polaron::ed {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Electron-phonon couplings after rotating the ion displacements into
/// oscillator modes. The term on site i is sum_k coupling(i, k) (a_k + a_k^+).
struct ReducedCoupling {
  int n_modes = 0;
  Eigen::MatrixXd coupling = Eigen::MatrixXd(2, 0);
  // +1 / -1 under site exchange; empty when the couplings have no such symmetry.
  std::vector<int> mode_parity;
  double omega = 1.0;

  bool has_parity() const { return !mode_parity.empty() || n_modes == 0; }
  /// Lang-Firsov exponent sum_k (c_1k - c_2k)^2 / (2 omega^2).
  double lang_firsov_g2() const;
};

/// Rotates onto the span of f+ and f- (at most two coupled modes); the
/// remaining modes decouple exactly and are dropped.
ReducedCoupling effective_modes(const ForceTable& table);

/// One mode per active Cartesian ion coordinate, no rotation.
ReducedCoupling cartesian_modes(const ForceTable& table);

enum class Truncation {
  PerMode,      // n_k <= n_max for every mode
  TotalQuanta,  // sum_k n_k <= n_max (invariant under mode rotations)
};

class FockBasis {
 public:
  using Occupation = std::vector<std::uint16_t>;

  FockBasis(int n_modes, int n_max, Truncation truncation);

  std::size_t size() const { return states_.size(); }
  int n_modes() const { return n_modes_; }
  int n_max() const { return n_max_; }
  const Occupation& state(std::size_t i) const { return states_[i]; }
  std::optional<std::size_t> find(const Occupation& occ) const;

 private:
  std::uint64_t key(const Occupation& occ) const;

  int n_modes_;
  int n_max_;
  std::vector<Occupation> states_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Full two-site Hamiltonian, index = site * basis.size() + phonon state.
SparseMatrix two_site_hamiltonian(double t, const ReducedCoupling& rc, const FockBasis& basis);

/// Site exchange combined with a_k -> parity_k a_k.
SparseMatrix parity_operator(const ReducedCoupling& rc, const FockBasis& basis);

/// Block of the two-site Hamiltonian with parity +1 or -1. With mirror
/// symmetry it reduces to a single-site problem,
///   H_p = H_ph + sum_k c_1k X_k - p t sigma(n),  sigma(n) = prod_k parity_k^n_k.
SparseMatrix sector_hamiltonian(double t, const ReducedCoupling& rc, const FockBasis& basis,
                                int parity);

struct SolverOptions {
  std::size_t dense_limit = 400;
  double relative_tolerance = 1e-10;
  int max_krylov = 200;
  int max_restarts = 200;
};

/// Lowest eigenvalue: dense for small matrices, otherwise restarted Lanczos
/// with full reorthogonalization from a fixed start vector.
double lowest_eigenvalue(const SparseMatrix& h, const SolverOptions& opts = {});

/// Lowest eigenvalue by Lanczos, regardless of size.
double lanczos_lowest(const SparseMatrix& h, const SolverOptions& opts = {});

struct EdResult {
  double E0 = 0.0;
  double E1 = 0.0;  // lowest level of opposite parity to E0
  double t_eff = 0.0;
  int n_max = 0;
  bool converged = false;
  double previous_t_eff = 0.0;
  int ground_parity = 1;
  std::size_t sector_dimension = 0;
};

/// Single truncation, no refinement.
EdResult diagonalize(double t, const ReducedCoupling& rc, int n_max,
                     const SolverOptions& solver = {});

struct EdOptions {
  std::optional<int> n_max_start;  // default ceil(4 g^2) + 5
  int n_max_cap = 512;
  std::size_t basis_cap = 2'000'000;  // per parity sector
  double tolerance = 5e-3;            // relative change of t_eff on doubling n_max
  SolverOptions solver;
};

/// Doubles n_max until t_eff changes by less than `tolerance`. Throws
/// ConvergenceError (carrying the last two t_eff) when the caps are hit.
EdResult build_and_diagonalize(double t, const ReducedCoupling& rc, const EdOptions& opts = {});

struct Regime {
  double lambda;
  double omega_over_t;
};

struct OracleRow {
  ModelKind model;
  double lambda = 0.0;
  double omega_over_t = 0.0;
  double t_eff_ed = 0.0;
  bool ed_converged = false;
  int n_max = 0;
  double t_tilde_nonadiabatic = 0.0;
  double half_splitting_fd = 0.0;     // NaN outside the double-well regime
  double half_splitting_curv = 0.0;   // NaN outside validity
  double half_splitting_paper = 0.0;  // NaN outside validity
  std::string note;

  double deviation(double estimate) const { return estimate / t_eff_ed - 1.0; }
};

/// Compares ED (t = 1) with every closed form and the FD oracle, one row per
/// (model, regime) in input order.
std::vector<OracleRow> oracle_report(const std::vector<ModelKind>& models,
                                     const std::vector<Regime>& regimes,
                                     const EdOptions& ed_options = {}, const FdGrid& fd_grid = {});

}  // namespace polaron::ed

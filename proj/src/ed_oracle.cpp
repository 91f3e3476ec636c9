#include "polaron/ed_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "polaron/error.hpp"
#include "polaron/lattice_forces.hpp"

namespace polaron::ed {
namespace {

using Triplet = Eigen::Triplet<double>;

Eigen::VectorXd flatten(const ForceTable& table, int site) {
  Eigen::VectorXd v(3 * table.ion_count());
  for (std::size_t k = 0; k < table.ion_count(); ++k) v.segment<3>(3 * k) = table.forces[k][site];
  return v;
}

double phonon_energy(const FockBasis::Occupation& occ, double omega) {
  double e = 0.0;
  for (auto n : occ) e += omega * (n + 0.5);
  return e;
}

int occupation_sign(const FockBasis::Occupation& occ, const std::vector<int>& parity) {
  int sign = 1;
  for (std::size_t k = 0; k < parity.size(); ++k)
    if (parity[k] < 0 && occ[k] % 2 == 1) sign = -sign;
  return sign;
}

// Appends sum_k c_k (a_k + a_k^+) acting on the phonon block at `offset`.
void add_displacements(std::vector<Triplet>& out, const FockBasis& basis,
                       const Eigen::VectorXd& c, std::size_t offset) {
  FockBasis::Occupation probe;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& occ = basis.state(i);
    for (int k = 0; k < basis.n_modes(); ++k) {
      if (c[k] == 0.0) continue;
      // Raising term; the lowering term is its transpose.
      probe = occ;
      ++probe[k];
      if (auto j = basis.find(probe)) {
        const double amp = c[k] * std::sqrt(static_cast<double>(probe[k]));
        out.emplace_back(offset + *j, offset + i, amp);
        out.emplace_back(offset + i, offset + *j, amp);
      }
    }
  }
}

SparseMatrix from_triplets(std::size_t n, const std::vector<Triplet>& triplets) {
  SparseMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

std::size_t per_mode_dimension(int n_modes, int n_max) {
  double dim = std::pow(static_cast<double>(n_max + 1), n_modes);
  if (dim > 1e15) return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(dim);
}

}  // namespace

double ReducedCoupling::lang_firsov_g2() const {
  double s = 0.0;
  for (int k = 0; k < n_modes; ++k) {
    const double d = coupling(0, k) - coupling(1, k);
    s += d * d;
  }
  return s / (2.0 * omega * omega);
}

ReducedCoupling effective_modes(const ForceTable& table) {
  const Eigen::VectorXd f1 = flatten(table, 0);
  const Eigen::VectorXd f2 = flatten(table, 1);
  const Eigen::VectorXd plus = f1 + f2;
  const Eigen::VectorXd minus = f1 - f2;
  const double scale = std::max({f1.norm(), f2.norm(), 1e-300});

  std::vector<Eigen::VectorXd> axes;
  std::vector<int> parity;
  if (plus.norm() > 1e-12 * scale) {
    axes.push_back(plus.normalized());
    parity.push_back(+1);
  }
  Eigen::VectorXd rest = minus;
  for (const auto& e : axes) rest -= e.dot(rest) * e;
  if (rest.norm() > 1e-12 * scale) {
    axes.push_back(rest.normalized());
    parity.push_back(-1);
  }

  ReducedCoupling rc;
  rc.omega = table.omega;
  rc.n_modes = static_cast<int>(axes.size());
  rc.coupling = Eigen::MatrixXd(2, rc.n_modes);
  const double to_energy = 1.0 / std::sqrt(2.0 * table.M * table.omega);
  for (int k = 0; k < rc.n_modes; ++k) {
    rc.coupling(0, k) = f1.dot(axes[k]) * to_energy;
    rc.coupling(1, k) = f2.dot(axes[k]) * to_energy;
  }
  const bool symmetric =
      std::abs(plus.dot(minus)) <= 1e-10 * std::max(1e-300, plus.norm() * minus.norm());
  if (symmetric) rc.mode_parity = parity;
  return rc;
}

ReducedCoupling cartesian_modes(const ForceTable& table) {
  std::vector<int> axes;
  if (table.dofs_per_ion == 3)
    axes = {0, 1, 2};
  else
    axes = {1};  // perpendicular polarization

  ReducedCoupling rc;
  rc.omega = table.omega;
  rc.n_modes = static_cast<int>(table.ion_count() * axes.size());
  rc.coupling = Eigen::MatrixXd(2, rc.n_modes);
  const double to_energy = 1.0 / std::sqrt(2.0 * table.M * table.omega);
  int k = 0;
  for (std::size_t ion = 0; ion < table.ion_count(); ++ion)
    for (int axis : axes) {
      rc.coupling(0, k) = table.forces[ion][0][axis] * to_energy;
      rc.coupling(1, k) = table.forces[ion][1][axis] * to_energy;
      ++k;
    }
  return rc;
}

FockBasis::FockBasis(int n_modes, int n_max, Truncation truncation)
    : n_modes_(n_modes), n_max_(n_max) {
  if (n_modes < 0 || n_max < 0) throw InvalidArgument("Fock basis needs n_modes, n_max >= 0");
  if (n_max > std::numeric_limits<std::uint16_t>::max() - 1)
    throw InvalidArgument("Fock truncation too large");
  if (n_modes > 0 && std::pow(n_max + 1.0, n_modes) > 1.8e19)
    throw InvalidArgument("Fock basis key overflow");

  Occupation occ(n_modes, 0);
  int total = 0;
  while (true) {
    index_.emplace(key(occ), states_.size());
    states_.push_back(occ);
    // Odometer increment respecting the truncation rule.
    int k = 0;
    for (; k < n_modes; ++k) {
      const bool room = truncation == Truncation::PerMode ? occ[k] < n_max : total < n_max;
      if (room) {
        ++occ[k];
        ++total;
        break;
      }
      total -= occ[k];
      occ[k] = 0;
    }
    if (k == n_modes) break;
  }
}

std::uint64_t FockBasis::key(const Occupation& occ) const {
  std::uint64_t key = 0;
  for (int k = n_modes_ - 1; k >= 0; --k) key = key * (n_max_ + 1) + occ[k];
  return key;
}

std::optional<std::size_t> FockBasis::find(const Occupation& occ) const {
  for (auto n : occ)
    if (n > n_max_) return std::nullopt;
  auto it = index_.find(key(occ));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseMatrix two_site_hamiltonian(double t, const ReducedCoupling& rc, const FockBasis& basis) {
  if (basis.n_modes() != rc.n_modes) throw InvalidArgument("basis and coupling mode counts differ");
  const std::size_t n = basis.size();
  std::vector<Triplet> triplets;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = phonon_energy(basis.state(i), rc.omega);
    triplets.emplace_back(i, i, e);
    triplets.emplace_back(n + i, n + i, e);
    triplets.emplace_back(i, n + i, -t);
    triplets.emplace_back(n + i, i, -t);
  }
  add_displacements(triplets, basis, rc.coupling.row(0).transpose(), 0);
  add_displacements(triplets, basis, rc.coupling.row(1).transpose(), n);
  return from_triplets(2 * n, triplets);
}

SparseMatrix parity_operator(const ReducedCoupling& rc, const FockBasis& basis) {
  if (!rc.has_parity()) throw InvalidArgument("couplings have no site-exchange parity");
  const std::size_t n = basis.size();
  std::vector<Triplet> triplets;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = occupation_sign(basis.state(i), rc.mode_parity);
    triplets.emplace_back(n + i, i, s);
    triplets.emplace_back(i, n + i, s);
  }
  return from_triplets(2 * n, triplets);
}

SparseMatrix sector_hamiltonian(double t, const ReducedCoupling& rc, const FockBasis& basis,
                                int parity) {
  if (!rc.has_parity()) throw InvalidArgument("couplings have no site-exchange parity");
  if (parity != 1 && parity != -1) throw InvalidArgument("parity must be +1 or -1");
  if (basis.n_modes() != rc.n_modes) throw InvalidArgument("basis and coupling mode counts differ");
  std::vector<Triplet> triplets;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& occ = basis.state(i);
    const double hop = -parity * t * occupation_sign(occ, rc.mode_parity);
    triplets.emplace_back(i, i, phonon_energy(occ, rc.omega) + hop);
  }
  add_displacements(triplets, basis, rc.coupling.row(0).transpose(), 0);
  return from_triplets(basis.size(), triplets);
}

double lanczos_lowest(const SparseMatrix& h, const SolverOptions& opts) {
  const Eigen::Index n = h.rows();
  if (n == 0) throw InvalidArgument("empty matrix");
  const Eigen::Index m = std::min<Eigen::Index>(opts.max_krylov, n);

  Eigen::VectorXd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start[i] = 1.0 / std::sqrt(static_cast<double>(i + 1));

  double theta = 0.0;
  double last_theta = std::numeric_limits<double>::quiet_NaN();
  for (int restart = 0; restart < opts.max_restarts; ++restart) {
    Eigen::MatrixXd V(n, m);
    Eigen::VectorXd alpha(m);
    Eigen::VectorXd beta(m);
    Eigen::VectorXd ritz;
    V.col(0) = start.normalized();
    Eigen::Index used = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
      Eigen::VectorXd w = h * V.col(j);
      alpha[j] = V.col(j).dot(w);
      for (int pass = 0; pass < 2; ++pass)
        w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
      beta[j] = w.norm();
      used = j + 1;

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(alpha.head(used), beta.head(j), Eigen::ComputeEigenvectors);
      theta = tri.eigenvalues()[0];
      ritz = tri.eigenvectors().col(0);
      const double residual = beta[j] * std::abs(ritz[j]);
      // |theta - lambda| <= residual for a symmetric matrix.
      if (residual <= opts.relative_tolerance * std::max(1.0, std::abs(theta)) || used == n)
        return theta;
      if (j + 1 < m) V.col(j + 1) = w / beta[j];
    }
    start = V.leftCols(used) * ritz;
    last_theta = theta;
  }
  throw ConvergenceError("Lanczos did not converge", last_theta, theta);
}

double lowest_eigenvalue(const SparseMatrix& h, const SolverOptions& opts) {
  if (static_cast<std::size_t>(h.rows()) > opts.dense_limit) return lanczos_lowest(h, opts);
  const Eigen::MatrixXd dense(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

EdResult diagonalize(double t, const ReducedCoupling& rc, int n_max, const SolverOptions& solver) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  const FockBasis basis(rc.n_modes, n_max, Truncation::PerMode);
  const double even = lowest_eigenvalue(sector_hamiltonian(t, rc, basis, +1), solver);
  const double odd = lowest_eigenvalue(sector_hamiltonian(t, rc, basis, -1), solver);

  EdResult r;
  r.E0 = std::min(even, odd);
  r.E1 = std::max(even, odd);
  r.ground_parity = even <= odd ? 1 : -1;
  r.t_eff = 0.5 * (r.E1 - r.E0);
  r.n_max = n_max;
  r.sector_dimension = basis.size();
  return r;
}

EdResult build_and_diagonalize(double t, const ReducedCoupling& rc, const EdOptions& opts) {
  if (!(t > 0.0)) throw InvalidArgument("bare hopping t must be positive");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto fits = [&](int n_max) {
    return n_max <= opts.n_max_cap && per_mode_dimension(rc.n_modes, n_max) <= opts.basis_cap;
  };

  int n_max = opts.n_max_start.value_or(static_cast<int>(std::ceil(4.0 * rc.lang_firsov_g2())) + 5);
  n_max = std::min(n_max, opts.n_max_cap);
  if (n_max < 1 || !fits(n_max))
    throw ConvergenceError("ED truncation cap below the starting n_max", nan, nan);

  EdResult prev = diagonalize(t, rc, n_max, opts.solver);
  double older = nan;
  while (fits(2 * n_max)) {
    n_max *= 2;
    EdResult cur = diagonalize(t, rc, n_max, opts.solver);
    cur.previous_t_eff = prev.t_eff;
    if (std::abs(cur.t_eff - prev.t_eff) <= opts.tolerance * std::abs(cur.t_eff)) {
      cur.converged = true;
      return cur;
    }
    older = prev.t_eff;
    prev = cur;
  }
  throw ConvergenceError("ED not converged at n_max = " + std::to_string(n_max),
                         std::isnan(older) ? nan : older, prev.t_eff);
}

std::vector<OracleRow> oracle_report(const std::vector<ModelKind>& models,
                                     const std::vector<Regime>& regimes,
                                     const EdOptions& ed_options, const FdGrid& fd_grid) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<OracleRow> rows;
  for (const auto model : models) {
    for (const auto& regime : regimes) {
      const double t = 1.0;
      const double omega = regime.omega_over_t * t;
      const double Ep = 2.0 * regime.lambda * t;

      OracleRow row;
      row.model = model;
      row.lambda = regime.lambda;
      row.omega_over_t = regime.omega_over_t;

      const auto table = make_force_table(model, Ep, 1.0, omega);
      const auto summary = coupling_summary(table);
      row.t_tilde_nonadiabatic = t * std::exp(-summary.g2);

      try {
        const auto r = build_and_diagonalize(t, effective_modes(table), ed_options);
        row.t_eff_ed = r.t_eff;
        row.ed_converged = true;
        row.n_max = r.n_max;
      } catch (const ConvergenceError& e) {
        row.t_eff_ed = e.last();
        row.note = "ED not converged";
      }

      row.half_splitting_fd = nan;
      const auto well = reduce_modes(table, t);
      if (well.has_double_well()) {
        try {
          row.half_splitting_fd = 0.5 * numeric_splitting(well, fd_grid).splitting;
        } catch (const std::exception&) {
          if (!row.note.empty()) row.note += "; ";
          row.note += "FD not converged";
        }
      }
      const auto closed_form = [&](KappaConvention c) {
        try {
          return 0.5 * analytic_splitting(Ep, t, omega, summary.gamma, c).splitting;
        } catch (const RegimeError&) {
          return nan;
        }
      };
      row.half_splitting_curv = closed_form(KappaConvention::CurvatureDerived);
      row.half_splitting_paper = closed_form(KappaConvention::PaperExact);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace polaron::ed

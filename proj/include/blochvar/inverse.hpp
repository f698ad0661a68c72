#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "blochvar/execution.hpp"
#include "blochvar/floquet.hpp"
#include "blochvar/variety.hpp"

namespace bloch {

/// Find diagonal D with eig(M + D) = targets (as a multiset).
struct InverseProblem {
  Matrix base;
  std::vector<cplx> targets;
};

struct InverseOptions {
  /// Random Newton starts; 200 * N! when unset.
  std::optional<std::size_t> attempts;
  std::uint64_t seed = 0;
  int max_iterations = 100;
  double residual_tol = 1e-12;  ///< on characteristic-polynomial coefficients, relative
  double divergence = 1e3;      ///< abandon a start once max|x| exceeds this
  double dedup_tol = 1e-6;      ///< max-norm
  double verify_tol = 1e-7;     ///< eigenvalues of M + diag(x) against the targets
  Execution exec = Execution::parallel;
};

struct InverseSolution {
  std::vector<cplx> x;
  double coefficient_residual;
  double eigen_mismatch;
};

struct InverseResult {
  std::vector<InverseSolution> solutions;  ///< deduplicated, lexicographically sorted
  std::size_t attempts = 0;
  std::size_t converged = 0;  ///< starts whose Newton run met residual_tol
  std::size_t rejected = 0;   ///< converged clusters that failed the eigenvalue check
};

/// Coefficients c_0..c_N of det(lambda I - A) = sum_i c_i lambda^i (c_N = 1),
/// by the Faddeev-LeVerrier recursion.
std::vector<cplx> charpoly_coefficients(const Matrix& a);

/// Coefficients of prod_m (lambda - roots_m), same layout as above.
std::vector<cplx> poly_from_roots(std::span<const cplx> roots);

/// Distance between the eigenvalue multiset of m and the targets. Equal
/// targets form a group; the matching eigenvalues are compared through their
/// mean, since a defective multiple eigenvalue splits by ~eps^(1/multiplicity).
/// Returns +infinity when some eigenvalue sits farther than tol^(1/mult) from
/// its group.
double eigen_mismatch(const Matrix& m, std::span<const cplx> targets, double tol);

/// Newton multistart on the coefficient equations
/// c_i(M + diag x) = c_i(prod (lambda - eta_m)), i = 0..N-1, whose leading
/// parts are the elementary symmetric polynomials of x. The Jacobian column
/// for x_i is minus the coefficient vector of the principal minor without i.
/// Every returned x is re-checked by a direct eigensolve. Throws
/// NumericalError if no start produced a verified solution.
InverseResult solve_diagonal_inverse(const InverseProblem& p, const InverseOptions& opts = {});

/// eta_m = rho_m + rho_{-(m + l1)}, m = 0..q1-1.
std::vector<cplx> exotic_targets(int q1, int l1);

/// Zero-mean one-dimensional potentials with
/// det(D_V(k) - lambda) = prod_m (e^{2 pi i (m+k)/q1} + e^{-2 pi i (m+l1+k)/q1} - lambda).
struct ExoticFamily {
  LatticeConfig cfg;
  int l1 = 0;
  std::vector<Potential> solutions;
  std::vector<double> residuals;  ///< factorization residual of each solution
  std::size_t discarded = 0;
};

/// Solves the inverse problem for D_0(0) and the targets above, then keeps
/// each candidate only if the factorization holds at l = (l1), K = 0 for
/// complex k as well. Throws NumericalError if nothing survives.
ExoticFamily construct_exotic_1d(int q1, int l1, const InverseOptions& opts = {},
                                 const IdentityTestOptions& check = {});

struct ExoticSelection {
  Potential component;  ///< one-dimensional
  int l;
};

struct LiftedPotential {
  Potential v;
  CellIndex l;
  double residual;
};

/// V(n) = sum_j V_j(n_j). Throws NumericalError if the lifted potential
/// fails the factorization at (l_1, ..., l_d), K = 0.
LiftedPotential lift_separable(std::span<const ExoticSelection> axes, const IdentityTestOptions& check = {});

struct ExoticClass {
  CellIndex l;
  std::vector<Potential> members;  ///< separable lifts of every per-axis solution
  bool members_isospectral = false;
};

struct XeReport {
  LatticeConfig cfg;
  std::vector<ExoticClass> classes;  ///< one per l in W (empty members if missing)
  std::size_t class_count = 0;       ///< distinct Floquet-isospectral classes among representatives
  std::size_t total_solutions = 0;
  double bound = 0.0;                ///< Q * Q!
  bool complete = false;             ///< every l produced a member
  /// Pairs of l whose representatives turned out isospectral.
  std::vector<std::pair<CellIndex, CellIndex>> coincidences;

  bool within_bound() const { return static_cast<double>(total_solutions) <= bound; }
};

XeReport enumerate_Xe(const LatticeConfig& cfg, const InverseOptions& opts = {},
                      const IdentityTestOptions& check = {});

}  // namespace bloch

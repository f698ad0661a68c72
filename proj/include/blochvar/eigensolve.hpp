#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "blochvar/execution.hpp"
#include "blochvar/floquet.hpp"

namespace bloch {

/// Eigenvalues with algebraic multiplicity, sorted by real part then
/// imaginary part.
struct Spectrum {
  struct Cluster {
    cplx value;  ///< mean of the clustered eigenvalues
    int multiplicity;
  };

  std::vector<cplx> values;
  bool hermitian = false;

  std::size_t size() const { return values.size(); }
  /// prod_i (lambda_i - t)
  cplx product_at(cplx t) const;
  /// Groups eigenvalues closer than tol (single linkage over the sorted list).
  std::vector<Cluster> clusters(double tol) const;
};

/// All eigenvalues of a square matrix. Matrices that are Hermitian to 1e-10
/// (relative to their largest entry) take the self-adjoint path and come
/// back real and ascending. Throws NumericalError on non-convergence.
Spectrum eigenvalues(const Matrix& m);
Spectrum eigenvalues(const FloquetMatrix& m);

/// Ascending eigenvalues of a Hermitian matrix; only the lower triangle is read.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

struct Disc {
  cplx center;
  double radius;
  bool contains(cplx x, double slack = 0.0) const { return std::abs(x - center) <= radius + slack; }
};

struct GershgorinReport {
  std::vector<Disc> discs;
  bool disjoint = false;
  /// Only set when the discs are disjoint: every disc holds exactly one
  /// computed eigenvalue.
  std::optional<bool> one_per_disc;
  Spectrum spectrum;
};

/// Discs B(M_ii, sum_{j != i} |M_ij|).
GershgorinReport gershgorin_check(const Matrix& m);

/// The region |z_1| >= C1^d, C1^{d-j+1} <= |z_j| <= C1^{d-j+1} + 1 (j >= 2),
/// where the eigenvalues of A + B_V separate into Q simple branches.
struct OmegaDomain {
  double c1 = 0.0;
  std::size_t dim = 1;

  /// C1 = 100 d (1 + max|V|) / min_{j,m} |1 - rho^j_m|.
  static OmegaDomain for_potential(const Potential& v);

  bool contains(const MultiplierPoint& z) const;
  /// A random point of Omega with moduli at most twice the lower bounds.
  MultiplierPoint sample(std::mt19937_64& rng) const;
};

/// sum_j rho^j_{l_j} z_j for every l in W, in canonical order.
std::vector<cplx> leading_terms(const LatticeConfig& cfg, const MultiplierPoint& z);

struct SeparationReport {
  double min_separation;  ///< +infinity when Q = 1
  double bound;           ///< (1/2) min |1 - rho^j_m| C1
  bool meets_bound;
};

/// Minimum pairwise distance between the leading terms, checked against the
/// lower bound. Throws std::invalid_argument if z is outside Omega.
SeparationReport separation_lower_bound(const LatticeConfig& cfg, const MultiplierPoint& z,
                                        const OmegaDomain& omega);

/// For each eigenvalue, the index of its nearest candidate. Throws
/// NumericalError unless that assignment is a bijection.
std::vector<std::size_t> match_to_candidates(std::span<const cplx> eigs, std::span<const cplx> candidates);

struct AsymptoticsReport {
  std::size_t samples = 0;
  double max_residual = 0.0;    ///< max |lambda_l - sum_j rho^j_{l_j} z_j|
  double residual_bound = 0.0;  ///< ||V^||_1 + 4d / C1
  bool residual_ok = false;
  /// Along z_1 = 2^s z_1^(0), ẑ fixed: increments of lambda_l - rho^1_{l_1} z_1
  /// shrink like 1/|z_1| down to round-off.
  bool ray_consistent = false;
  double max_ray_increment_scaled = 0.0;  ///< max_s |increment_s| |z_1(s)|
  double final_ray_increment = 0.0;
  bool passed() const { return residual_ok && ray_consistent; }
};

/// Checks the eigenvalue branches of A + B_V on Omega against their leading
/// behaviour sum_j rho^j_{l_j} z_j + O(1). Throws NumericalError if some
/// sample's eigenvalues cannot be matched one-to-one with W.
AsymptoticsReport asymptotics_check(const Potential& v, std::span<const MultiplierPoint> samples,
                                    const OmegaDomain& omega, int ray_steps = 6);

}  // namespace bloch

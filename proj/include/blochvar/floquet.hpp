#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "blochvar/potential.hpp"

namespace bloch {

using Matrix = Eigen::MatrixXcd;

/// z = (z_1, ..., z_d), every component nonzero.
class MultiplierPoint {
 public:
  explicit MultiplierPoint(std::vector<cplx> z);
  std::size_t dim() const { return z_.size(); }
  cplx operator[](std::size_t j) const { return z_[j]; }
  std::span<const cplx> values() const { return z_; }

 private:
  std::vector<cplx> z_;
};

enum class Representation {
  direct,   ///< D_V(k) on functions over W with the Floquet boundary condition
  fourier,  ///< A + B_V at a multiplier point z
};

struct FloquetMatrix {
  LatticeConfig cfg;
  Matrix entries;
  Representation form;
  std::vector<cplx> point;  ///< k for direct, z for fourier
};

/// Matrix of Delta + V on W with u(n + q_j e_j) = exp(2 pi i k_j) u(n).
///
/// Each of the 2d unit steps from n contributes to column reduce(n +- e_j);
/// a step that leaves W picks up exp(+-2 pi i k_j). For q_j = 2 both steps hit
/// the same column and add; for q_j = 1 both land on the diagonal.
FloquetMatrix assemble_direct(const Potential& v, std::span<const cplx> k);
FloquetMatrix assemble_direct(const Potential& v, std::span<const double> k);

/// A + B_V with A(n,n) = sum_j (rho^j_{n_j} z_j + rho^j_{-n_j} / z_j) and
/// B_V(n,n') = V^(n - n').
FloquetMatrix assemble_fourier(const Potential& v, const MultiplierPoint& z);

/// Determinant by Gaussian elimination with partial pivoting.
cplx determinant(Matrix m);

/// det(M - lambda I).
cplx charpoly_eval(const Matrix& m, cplx lambda);
cplx charpoly_eval(const FloquetMatrix& m, cplx lambda);

/// prod_{n in W} (K - lambda + sum_j (e^{2 pi i (n_j + k_j)/q_j} + e^{-2 pi i (n_j + l_j + k_j)/q_j})).
cplx product_form_eval(const LatticeConfig& cfg, const CellIndex& l, cplx K, std::span<const cplx> k,
                       cplx lambda);

/// det(A + B_V - lambda I), which equals det(D_V(k) - lambda I) at
/// exp(2 pi i k_j) = z_j^{q_j}.
cplx substituted_charpoly_eval(const Potential& v, const MultiplierPoint& z, cplx lambda);

/// k_j = q_j log(z_j) / (2 pi i), principal branch.
std::vector<cplx> quasimomentum_from_multiplier(const LatticeConfig& cfg, const MultiplierPoint& z);

/// max |M - M^H| entrywise.
double hermitian_defect(const Matrix& m);

}  // namespace bloch

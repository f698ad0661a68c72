#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "blochvar/execution.hpp"
#include "blochvar/potential.hpp"

namespace bloch {

/// Settings for deciding an identity between two characteristic polynomials
/// by evaluation at pseudo-random complex (k, lambda).
struct IdentityTestOptions {
  double tolerance = 1e-8;  ///< relative, per point, scale max(1, |lhs|, |rhs|)
  int num_points = 64;
  std::uint64_t seed = 0;
  Execution exec = Execution::parallel;
};

struct TestPoint {
  std::vector<cplx> k;
  cplx lambda;
};

/// k_j with real and imaginary parts uniform in [-1, 1]; lambda uniform in the
/// disc of radius 2d + 2 max|V| + 1.
std::vector<TestPoint> identity_test_points(const Potential& v, const IdentityTestOptions& opts);

struct Witness {
  std::vector<cplx> k;
  cplx lambda;
  cplx lhs;
  cplx rhs;
};

/// Outcome of entire_graph_test. When holds, (l, K) realise
/// det(D_V(k) - lambda) = prod_n (K - lambda + sum_j (e^{2 pi i (n_j + k_j)/q_j} + e^{-2 pi i (n_j + l_j + k_j)/q_j})).
/// Otherwise l is the best failing candidate and witness its worst point.
struct EntireGraphCertificate {
  LatticeConfig cfg;
  bool holds = false;
  CellIndex l;
  cplx K;
  double residual = 0.0;  ///< max relative mismatch over the test points for l
  std::optional<Witness> refutation;
};

EntireGraphCertificate entire_graph_test(const Potential& v, const IdentityTestOptions& opts = {});

/// Max relative mismatch between det(D_V(k) - lambda) and the product form
/// for one fixed (l, K).
double factorization_residual(const Potential& v, const CellIndex& l, cplx K, const IdentityTestOptions& opts = {});

struct IsospectralResult {
  bool isospectral = false;
  double residual = 0.0;
};

/// Compares det(D_V(k) - lambda) with det(D_Y(k) - lambda) at random complex
/// points. Throws std::invalid_argument if the lattices differ.
IsospectralResult floquet_isospectral(const Potential& v, const Potential& y, const IdentityTestOptions& opts = {});

/// The n = 0 factor of the certified product:
/// K + sum_j (e^{2 pi i k_j / q_j} + e^{-2 pi i (l_j + k_j) / q_j}).
/// Throws std::invalid_argument if the certificate does not hold.
cplx entire_graph_function(const EntireGraphCertificate& cert, std::span<const cplx> k);

}  // namespace bloch

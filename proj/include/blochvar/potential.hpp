#pragma once

#include <span>
#include <vector>

#include "blochvar/lattice.hpp"

namespace bloch {

inline constexpr double kRealTolerance = 1e-12;

/// A complex Gamma-periodic potential, stored as its values on W in
/// canonical order.
class Potential {
 public:
  Potential(LatticeConfig cfg, std::vector<cplx> values);

  static Potential zero(const LatticeConfig& cfg);
  static Potential constant(const LatticeConfig& cfg, cplx c);

  const LatticeConfig& config() const { return cfg_; }
  std::span<const cplx> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  cplx operator[](std::size_t row) const { return values_[row]; }
  cplx at(const CellIndex& n) const { return values_[cfg_.row_of(n)]; }
  /// Value at an arbitrary lattice point, by periodic extension.
  cplx at(std::span<const long> v) const { return values_[cfg_.row_of_reduced(v)]; }

  /// True iff every imaginary part is below kRealTolerance in magnitude.
  bool is_real() const;
  /// max_n |V(n)|
  double max_abs() const;
  /// True iff all values agree with the first to within tol.
  bool is_constant(double tol = 1e-12) const;

  Potential shifted(cplx c) const;

 private:
  LatticeConfig cfg_;
  std::vector<cplx> values_;
};

/// Discrete Fourier coefficients V^(l), l in W, extended periodically.
class FourierCoefficients {
 public:
  FourierCoefficients(LatticeConfig cfg, std::vector<cplx> coeffs);

  const LatticeConfig& config() const { return cfg_; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  cplx operator[](std::size_t row) const { return coeffs_[row]; }
  cplx at(std::span<const long> l) const { return coeffs_[cfg_.row_of_reduced(l)]; }

  /// Sum of |V^(l)| over W.
  double l1_norm() const;

 private:
  LatticeConfig cfg_;
  std::vector<cplx> coeffs_;
};

/// V^(l) = (1/Q) sum_n V(n) exp(-2 pi i sum_j l_j n_j / q_j).
FourierCoefficients dft(const Potential& v);

/// Inverse of dft; carries no prefactor.
Potential inverse_dft(const FourierCoefficients& f);

cplx mean(const Potential& v);

/// V(n) = sum_j V_j(n_j). Component j must be one-dimensional with period q_j.
Potential separable(const LatticeConfig& cfg, std::span<const Potential> components);

/// W(n) = V(n + shift), reduced modulo Gamma.
Potential translate(const Potential& v, std::span<const long> shift);

}  // namespace bloch

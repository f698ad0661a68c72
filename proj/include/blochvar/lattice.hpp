#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bloch {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// A point of the fundamental domain W: 0 <= coords[j] < q_j on every axis.
struct CellIndex {
  std::vector<int> coords;

  std::size_t dim() const { return coords.size(); }
  int operator[](std::size_t j) const { return coords[j]; }
  bool operator==(const CellIndex&) const = default;
  auto operator<=>(const CellIndex&) const = default;
};

std::string to_string(const CellIndex& n);

/// Periods q = (q_1, ..., q_d) of the lattice Gamma = q_1 Z + ... + q_d Z.
///
/// The fundamental domain W is enumerated once, lexicographically with the
/// first axis outermost. A cell's position in that list is the row/column
/// index it occupies in every Q x Q matrix built by this library.
class LatticeConfig {
 public:
  explicit LatticeConfig(std::vector<int> periods);

  std::size_t dim() const { return periods_.size(); }
  int period(std::size_t axis) const { return periods_.at(axis); }
  const std::vector<int>& periods() const { return periods_; }

  /// Q = q_1 * ... * q_d.
  std::size_t cell_size() const { return cells_.size(); }

  const std::vector<CellIndex>& cells() const { return cells_; }
  const CellIndex& cell(std::size_t row) const { return cells_.at(row); }

  /// Canonical row of a cell. Throws std::out_of_range if n is not in W.
  std::size_t row_of(const CellIndex& n) const;

  /// Row of the cell congruent to v modulo Gamma.
  std::size_t row_of_reduced(std::span<const long> v) const;

  bool operator==(const LatticeConfig& o) const { return periods_ == o.periods_; }

 private:
  std::vector<int> periods_;
  std::vector<std::size_t> strides_;
  std::vector<CellIndex> cells_;
};

std::string to_string(const LatticeConfig& cfg);

/// All Q cells of W in canonical order.
const std::vector<CellIndex>& enumerate_cells(const LatticeConfig& cfg);

/// exp(2 pi i m / q_axis). Axes are 0-based; m is reduced modulo q_axis first
/// so the result is exactly periodic in m.
cplx root_of_unity(const LatticeConfig& cfg, std::size_t axis, long m);

/// exp(2 pi i m / q) for a bare period.
cplx root_of_unity(int q, long m);

/// Componentwise v_j mod q_j into [0, q_j).
CellIndex reduce_mod_gamma(const LatticeConfig& cfg, std::span<const long> v);

/// Smallest |1 - rho^j_m| over axes with q_j > 1 and 1 <= m < q_j; 1 when
/// every period is 1.
double min_root_gap(const LatticeConfig& cfg);

}  // namespace bloch

#pragma once

#include <span>
#include <vector>

#include "blochvar/execution.hpp"
#include "blochvar/potential.hpp"

namespace bloch {

/// Gaps narrower than this are reported as unresolved rather than counted.
inline constexpr double kGapTolerance = 1e-6;

struct Interval {
  double lo;
  double hi;
  double width() const { return hi - lo; }
};

/// Band functions of a real potential sampled on the grid
/// k = (i_1 / r_1, ..., i_d / r_d), 0 <= i_j < r_j, in lexicographic order.
struct BandStructure {
  LatticeConfig cfg;
  std::vector<int> resolution;
  /// Point-major: values[p * Q + m] is the m-th band (ascending) at point p.
  std::vector<double> values;
  /// [a_m, b_m] per band, with extrema refined by a local quadratic fit.
  std::vector<Interval> band_intervals;

  std::size_t num_points() const;
  std::size_t num_bands() const { return cfg.cell_size(); }
  std::vector<double> k_at(std::size_t point) const;
  double band(std::size_t point, std::size_t m) const { return values[point * num_bands() + m]; }
};

/// 256 points per axis in 1D, 64 in 2D, 24 in 3D and above.
std::vector<int> default_resolution(std::size_t dim);

/// Throws std::invalid_argument for a non-real potential or a resolution
/// entry below 1.
BandStructure compute_bands(const Potential& v, std::span<const int> resolution,
                            Execution exec = Execution::parallel);

/// Sorted union of the band intervals; intervals closer than merge_tol are
/// joined.
std::vector<Interval> spectrum_union(const BandStructure& bs, double merge_tol = kGapTolerance);

struct GapReport {
  std::vector<Interval> gaps;        ///< width > tolerance
  std::vector<Interval> unresolved;  ///< 0 < width <= tolerance
};

GapReport find_gaps(const BandStructure& bs, double tol = kGapTolerance);

struct BorgVerdict {
  bool gapped = false;
  bool constant = false;
  /// gapped iff not constant, which is what the 1D theory predicts
  bool agrees = false;
  int resolution = 0;  ///< grid size the verdict was reached at
  GapReport gaps;
};

/// One-dimensional real potentials only. On disagreement the grid is doubled
/// until max_resolution.
BorgVerdict borg_check_1d(const Potential& v, int resolution = 256, int max_resolution = 1 << 16);

}  // namespace bloch

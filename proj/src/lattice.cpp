#include "blochvar/lattice.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bloch {

namespace {

long floor_mod(long v, long q) {
  long r = v % q;
  return r < 0 ? r + q : r;
}

}  // namespace

LatticeConfig::LatticeConfig(std::vector<int> periods) : periods_(std::move(periods)) {
  if (periods_.empty()) throw std::invalid_argument("lattice needs at least one axis");
  for (int q : periods_) {
    if (q < 1) throw std::invalid_argument("every period must be >= 1");
  }

  std::size_t total = 1;
  strides_.assign(periods_.size(), 1);
  for (std::size_t j = periods_.size(); j-- > 0;) {
    strides_[j] = total;
    total *= static_cast<std::size_t>(periods_[j]);
  }

  cells_.reserve(total);
  for (std::size_t row = 0; row < total; ++row) {
    CellIndex n;
    n.coords.resize(periods_.size());
    for (std::size_t j = 0; j < periods_.size(); ++j) {
      n.coords[j] = static_cast<int>((row / strides_[j]) % periods_[j]);
    }
    cells_.push_back(std::move(n));
  }
}

std::size_t LatticeConfig::row_of(const CellIndex& n) const {
  if (n.dim() != dim()) throw std::out_of_range("cell dimension mismatch");
  std::size_t row = 0;
  for (std::size_t j = 0; j < dim(); ++j) {
    if (n[j] < 0 || n[j] >= periods_[j]) throw std::out_of_range("cell outside W: " + to_string(n));
    row += strides_[j] * static_cast<std::size_t>(n[j]);
  }
  return row;
}

std::size_t LatticeConfig::row_of_reduced(std::span<const long> v) const {
  if (v.size() != dim()) throw std::out_of_range("vector dimension mismatch");
  std::size_t row = 0;
  for (std::size_t j = 0; j < dim(); ++j) {
    row += strides_[j] * static_cast<std::size_t>(floor_mod(v[j], periods_[j]));
  }
  return row;
}

std::string to_string(const CellIndex& n) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < n.dim(); ++j) os << (j ? "," : "") << n[j];
  os << ')';
  return os.str();
}

std::string to_string(const LatticeConfig& cfg) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < cfg.dim(); ++j) os << (j ? "," : "") << cfg.period(j);
  os << ')';
  return os.str();
}

const std::vector<CellIndex>& enumerate_cells(const LatticeConfig& cfg) { return cfg.cells(); }

cplx root_of_unity(int q, long m) {
  if (q < 1) throw std::invalid_argument("period must be >= 1");
  const long r = floor_mod(m, q);
  if (r == 0) return {1.0, 0.0};
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / q);
}

cplx root_of_unity(const LatticeConfig& cfg, std::size_t axis, long m) {
  if (axis >= cfg.dim()) throw std::out_of_range("invalid axis");
  return root_of_unity(cfg.period(axis), m);
}

CellIndex reduce_mod_gamma(const LatticeConfig& cfg, std::span<const long> v) {
  if (v.size() != cfg.dim()) throw std::out_of_range("vector dimension mismatch");
  CellIndex n;
  n.coords.resize(cfg.dim());
  for (std::size_t j = 0; j < cfg.dim(); ++j) n.coords[j] = static_cast<int>(floor_mod(v[j], cfg.period(j)));
  return n;
}

double min_root_gap(const LatticeConfig& cfg) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < cfg.dim(); ++j) {
    for (int m = 1; m < cfg.period(j); ++m) best = std::min(best, std::abs(1.0 - root_of_unity(cfg.period(j), m)));
  }
  return std::isfinite(best) ? best : 1.0;
}

}  // namespace bloch

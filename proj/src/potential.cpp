#include "blochvar/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bloch {

Potential::Potential(LatticeConfig cfg, std::vector<cplx> values)
    : cfg_(std::move(cfg)), values_(std::move(values)) {
  if (values_.size() != cfg_.cell_size()) {
    throw std::invalid_argument("potential has " + std::to_string(values_.size()) + " values, lattice " +
                                to_string(cfg_) + " needs " + std::to_string(cfg_.cell_size()));
  }
}

Potential Potential::zero(const LatticeConfig& cfg) { return constant(cfg, 0.0); }

Potential Potential::constant(const LatticeConfig& cfg, cplx c) {
  return Potential(cfg, std::vector<cplx>(cfg.cell_size(), c));
}

bool Potential::is_real() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](cplx v) { return std::abs(v.imag()) < kRealTolerance; });
}

double Potential::max_abs() const {
  double m = 0.0;
  for (cplx v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool Potential::is_constant(double tol) const {
  return std::all_of(values_.begin(), values_.end(),
                     [&](cplx v) { return std::abs(v - values_.front()) <= tol; });
}

Potential Potential::shifted(cplx c) const {
  std::vector<cplx> out(values_.begin(), values_.end());
  for (auto& v : out) v += c;
  return Potential(cfg_, std::move(out));
}

FourierCoefficients::FourierCoefficients(LatticeConfig cfg, std::vector<cplx> coeffs)
    : cfg_(std::move(cfg)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != cfg_.cell_size()) throw std::invalid_argument("coefficient count does not match lattice");
}

double FourierCoefficients::l1_norm() const {
  double s = 0.0;
  for (cplx c : coeffs_) s += std::abs(c);
  return s;
}

namespace {

// exp(sign * 2 pi i sum_j l_j n_j / q_j), with the phase reduced per axis.
cplx character(const LatticeConfig& cfg, const CellIndex& l, const CellIndex& n, int sign) {
  cplx out = 1.0;
  for (std::size_t j = 0; j < cfg.dim(); ++j) {
    out *= root_of_unity(cfg.period(j), sign * static_cast<long>(l[j]) * n[j]);
  }
  return out;
}

}  // namespace

FourierCoefficients dft(const Potential& v) {
  const auto& cfg = v.config();
  const auto& cells = cfg.cells();
  const double inv_q = 1.0 / static_cast<double>(cfg.cell_size());
  std::vector<cplx> out(cells.size());
  for (std::size_t a = 0; a < cells.size(); ++a) {
    cplx s = 0.0;
    for (std::size_t b = 0; b < cells.size(); ++b) s += v[b] * character(cfg, cells[a], cells[b], -1);
    out[a] = s * inv_q;
  }
  return FourierCoefficients(cfg, std::move(out));
}

Potential inverse_dft(const FourierCoefficients& f) {
  const auto& cfg = f.config();
  const auto& cells = cfg.cells();
  std::vector<cplx> out(cells.size());
  for (std::size_t b = 0; b < cells.size(); ++b) {
    cplx s = 0.0;
    for (std::size_t a = 0; a < cells.size(); ++a) s += f[a] * character(cfg, cells[a], cells[b], +1);
    out[b] = s;
  }
  return Potential(cfg, std::move(out));
}

cplx mean(const Potential& v) {
  cplx s = 0.0;
  for (cplx x : v.values()) s += x;
  return s / static_cast<double>(v.size());
}

Potential separable(const LatticeConfig& cfg, std::span<const Potential> components) {
  if (components.size() != cfg.dim()) throw std::invalid_argument("need one component per axis");
  for (std::size_t j = 0; j < cfg.dim(); ++j) {
    const auto& c = components[j].config();
    if (c.dim() != 1 || c.period(0) != cfg.period(j)) {
      throw std::invalid_argument("component " + std::to_string(j) + " does not have period " +
                                  std::to_string(cfg.period(j)));
    }
  }
  std::vector<cplx> out;
  out.reserve(cfg.cell_size());
  for (const auto& n : cfg.cells()) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < cfg.dim(); ++j) s += components[j][static_cast<std::size_t>(n[j])];
    out.push_back(s);
  }
  return Potential(cfg, std::move(out));
}

Potential translate(const Potential& v, std::span<const long> shift) {
  const auto& cfg = v.config();
  if (shift.size() != cfg.dim()) throw std::invalid_argument("shift dimension mismatch");
  std::vector<cplx> out;
  out.reserve(cfg.cell_size());
  std::vector<long> p(cfg.dim());
  for (const auto& n : cfg.cells()) {
    for (std::size_t j = 0; j < cfg.dim(); ++j) p[j] = n[j] + shift[j];
    out.push_back(v.at(p));
  }
  return Potential(cfg, std::move(out));
}

}  // namespace bloch

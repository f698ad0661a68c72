#include "blochvar/floquet.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bloch {

namespace {

const cplx kI{0.0, 1.0};

cplx phase(cplx k, double sign) { return std::exp(sign * kTwoPi * kI * k); }

}  // namespace

MultiplierPoint::MultiplierPoint(std::vector<cplx> z) : z_(std::move(z)) {
  for (cplx c : z_) {
    if (c == cplx(0.0)) throw std::invalid_argument("multiplier components must be nonzero");
  }
}

FloquetMatrix assemble_direct(const Potential& v, std::span<const cplx> k) {
  const auto& cfg = v.config();
  if (k.size() != cfg.dim()) throw std::invalid_argument("quasimomentum dimension mismatch");
  const auto q_total = static_cast<Eigen::Index>(cfg.cell_size());
  Matrix m = Matrix::Zero(q_total, q_total);

  std::vector<cplx> forward(cfg.dim()), backward(cfg.dim());
  for (std::size_t j = 0; j < cfg.dim(); ++j) {
    forward[j] = phase(k[j], +1.0);
    backward[j] = phase(k[j], -1.0);
  }

  std::vector<long> p(cfg.dim());
  for (std::size_t row = 0; row < cfg.cell_size(); ++row) {
    const auto& n = cfg.cell(row);
    const auto r = static_cast<Eigen::Index>(row);
    m(r, r) += v[row];
    for (std::size_t j = 0; j < cfg.dim(); ++j) {
      for (int s : {+1, -1}) {
        for (std::size_t a = 0; a < cfg.dim(); ++a) p[a] = n[a];
        p[j] += s;
        cplx w = 1.0;
        if (p[j] >= cfg.period(j)) w = forward[j];
        if (p[j] < 0) w = backward[j];
        m(r, static_cast<Eigen::Index>(cfg.row_of_reduced(p))) += w;
      }
    }
  }
  return {cfg, std::move(m), Representation::direct, std::vector<cplx>(k.begin(), k.end())};
}

FloquetMatrix assemble_direct(const Potential& v, std::span<const double> k) {
  std::vector<cplx> kc(k.begin(), k.end());
  return assemble_direct(v, std::span<const cplx>(kc));
}

FloquetMatrix assemble_fourier(const Potential& v, const MultiplierPoint& z) {
  const auto& cfg = v.config();
  if (z.dim() != cfg.dim()) throw std::invalid_argument("multiplier dimension mismatch");
  const auto vhat = dft(v);
  const auto q_total = static_cast<Eigen::Index>(cfg.cell_size());
  Matrix m(q_total, q_total);

  std::vector<long> diff(cfg.dim());
  for (std::size_t a = 0; a < cfg.cell_size(); ++a) {
    const auto& n = cfg.cell(a);
    for (std::size_t b = 0; b < cfg.cell_size(); ++b) {
      const auto& np = cfg.cell(b);
      for (std::size_t j = 0; j < cfg.dim(); ++j) diff[j] = static_cast<long>(n[j]) - np[j];
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = vhat.at(diff);
    }
    cplx diag = 0.0;
    for (std::size_t j = 0; j < cfg.dim(); ++j) {
      diag += root_of_unity(cfg.period(j), n[j]) * z[j] + root_of_unity(cfg.period(j), -n[j]) / z[j];
    }
    m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) += diag;
  }
  return {cfg, std::move(m), Representation::fourier, std::vector<cplx>(z.values().begin(), z.values().end())};
}

cplx determinant(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  cplx det = 1.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index pivot = c;
    double best = std::abs(m(c, c));
    for (Eigen::Index r = c + 1; r < n; ++r) {
      const double a = std::abs(m(r, c));
      if (a > best) {
        best = a;
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != c) {
      m.row(pivot).swap(m.row(c));
      det = -det;
    }
    const cplx p = m(c, c);
    det *= p;
    for (Eigen::Index r = c + 1; r < n; ++r) {
      const cplx f = m(r, c) / p;
      if (f == cplx(0.0)) continue;
      for (Eigen::Index cc = c + 1; cc < n; ++cc) m(r, cc) -= f * m(c, cc);
    }
  }
  return det;
}

cplx charpoly_eval(const Matrix& m, cplx lambda) {
  Matrix shifted = m;
  shifted.diagonal().array() -= lambda;
  return determinant(std::move(shifted));
}

cplx charpoly_eval(const FloquetMatrix& m, cplx lambda) { return charpoly_eval(m.entries, lambda); }

cplx product_form_eval(const LatticeConfig& cfg, const CellIndex& l, cplx K, std::span<const cplx> k,
                       cplx lambda) {
  if (k.size() != cfg.dim() || l.dim() != cfg.dim()) throw std::invalid_argument("dimension mismatch");
  // Per axis the factor depends on n_j only through two phases; precompute them.
  std::vector<std::vector<cplx>> axis_terms(cfg.dim());
  for (std::size_t j = 0; j < cfg.dim(); ++j) {
    const int q = cfg.period(j);
    axis_terms[j].resize(static_cast<std::size_t>(q));
    for (int n = 0; n < q; ++n) {
      const cplx up = std::exp(kTwoPi * kI * (static_cast<double>(n) + k[j]) / static_cast<double>(q));
      const cplx down =
          std::exp(-kTwoPi * kI * (static_cast<double>(n + l[j]) + k[j]) / static_cast<double>(q));
      axis_terms[j][static_cast<std::size_t>(n)] = up + down;
    }
  }
  cplx prod = 1.0;
  for (const auto& n : cfg.cells()) {
    cplx f = K - lambda;
    for (std::size_t j = 0; j < cfg.dim(); ++j) f += axis_terms[j][static_cast<std::size_t>(n[j])];
    prod *= f;
  }
  return prod;
}

cplx substituted_charpoly_eval(const Potential& v, const MultiplierPoint& z, cplx lambda) {
  return charpoly_eval(assemble_fourier(v, z), lambda);
}

std::vector<cplx> quasimomentum_from_multiplier(const LatticeConfig& cfg, const MultiplierPoint& z) {
  if (z.dim() != cfg.dim()) throw std::invalid_argument("multiplier dimension mismatch");
  std::vector<cplx> k(cfg.dim());
  for (std::size_t j = 0; j < cfg.dim(); ++j) {
    k[j] = static_cast<double>(cfg.period(j)) * std::log(z[j]) / (kTwoPi * kI);
  }
  return k;
}

double hermitian_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace bloch

#include "blochvar/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "blochvar/execution.hpp"

namespace bloch {

namespace {

bool lex_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

double max_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

cplx Spectrum::product_at(cplx t) const {
  cplx p = 1.0;
  for (cplx l : values) p *= (l - t);
  return p;
}

std::vector<Spectrum::Cluster> Spectrum::clusters(double tol) const {
  std::vector<Cluster> out;
  std::vector<bool> used(values.size(), false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> members{i};
    used[i] = true;
    // grow until no unused eigenvalue is within tol of a member
    for (std::size_t m = 0; m < members.size(); ++m) {
      for (std::size_t j = 0; j < values.size(); ++j) {
        if (!used[j] && std::abs(values[j] - values[members[m]]) <= tol) {
          used[j] = true;
          members.push_back(j);
        }
      }
    }
    cplx s = 0.0;
    for (auto j : members) s += values[j];
    out.push_back({s / static_cast<double>(members.size()), static_cast<int>(members.size())});
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("self-adjoint eigensolver did not converge (max entry " + std::to_string(max_entry(m)) +
                         ")");
  }
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

Spectrum eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues of a non-square matrix");
  Spectrum s;
  const double scale = std::max(1.0, max_entry(m));
  if (hermitian_defect(m) <= 1e-10 * scale) {
    const Matrix sym = 0.5 * (m + m.adjoint());
    for (double x : hermitian_eigenvalues(sym)) s.values.emplace_back(x, 0.0);
    s.hermitian = true;
    return s;
  }
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("complex eigensolver did not converge (max entry " + std::to_string(max_entry(m)) +
                         ", size " + std::to_string(m.rows()) + ")");
  }
  const auto& ev = solver.eigenvalues();
  s.values.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.values.begin(), s.values.end(), lex_less);
  return s;
}

Spectrum eigenvalues(const FloquetMatrix& m) { return eigenvalues(m.entries); }

GershgorinReport gershgorin_check(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("gershgorin_check needs a square matrix");
  GershgorinReport r;
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    double radius = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) radius += std::abs(m(i, j));
    }
    r.discs.push_back({m(i, i), radius});
  }
  r.disjoint = true;
  for (std::size_t a = 0; a < r.discs.size() && r.disjoint; ++a) {
    for (std::size_t b = a + 1; b < r.discs.size(); ++b) {
      if (std::abs(r.discs[a].center - r.discs[b].center) <= r.discs[a].radius + r.discs[b].radius) {
        r.disjoint = false;
        break;
      }
    }
  }
  r.spectrum = eigenvalues(m);
  if (r.disjoint) {
    const double slack = 1e-12 * std::max(1.0, max_entry(m)) * static_cast<double>(n);
    bool ok = true;
    for (const auto& disc : r.discs) {
      const auto inside = std::count_if(r.spectrum.values.begin(), r.spectrum.values.end(),
                                        [&](cplx x) { return disc.contains(x, slack); });
      ok = ok && inside == 1;
    }
    r.one_per_disc = ok;
  }
  return r;
}

OmegaDomain OmegaDomain::for_potential(const Potential& v) {
  const auto& cfg = v.config();
  const double d = static_cast<double>(cfg.dim());
  return {100.0 * d * (1.0 + v.max_abs()) / min_root_gap(cfg), cfg.dim()};
}

bool OmegaDomain::contains(const MultiplierPoint& z) const {
  if (z.dim() != dim) return false;
  const double d = static_cast<double>(dim);
  if (std::abs(z[0]) < std::pow(c1, d)) return false;
  for (std::size_t j = 1; j < dim; ++j) {
    const double lo = std::pow(c1, d - static_cast<double>(j));
    const double r = std::abs(z[j]);
    if (r < lo || r > lo + 1.0) return false;
  }
  return true;
}

MultiplierPoint OmegaDomain::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double d = static_cast<double>(dim);
  std::vector<cplx> z(dim);
  z[0] = std::polar(std::pow(c1, d) * (1.0 + unit(rng)), kTwoPi * unit(rng));
  for (std::size_t j = 1; j < dim; ++j) {
    z[j] = std::polar(std::pow(c1, d - static_cast<double>(j)) + unit(rng), kTwoPi * unit(rng));
  }
  return MultiplierPoint(std::move(z));
}

std::vector<cplx> leading_terms(const LatticeConfig& cfg, const MultiplierPoint& z) {
  std::vector<cplx> out;
  out.reserve(cfg.cell_size());
  for (const auto& l : cfg.cells()) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < cfg.dim(); ++j) s += root_of_unity(cfg.period(j), l[j]) * z[j];
    out.push_back(s);
  }
  return out;
}

SeparationReport separation_lower_bound(const LatticeConfig& cfg, const MultiplierPoint& z,
                                        const OmegaDomain& omega) {
  if (omega.dim != cfg.dim() || !omega.contains(z)) throw std::invalid_argument("multiplier point lies outside Omega");
  const auto terms = leading_terms(cfg, z);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < terms.size(); ++a) {
    for (std::size_t b = a + 1; b < terms.size(); ++b) best = std::min(best, std::abs(terms[a] - terms[b]));
  }
  const double bound = 0.5 * min_root_gap(cfg) * omega.c1;
  return {best, bound, best >= bound};
}

std::vector<std::size_t> match_to_candidates(std::span<const cplx> eigs, std::span<const cplx> candidates) {
  if (eigs.size() != candidates.size()) throw std::invalid_argument("eigenvalue/candidate count mismatch");
  std::vector<std::size_t> match(eigs.size());
  std::vector<bool> taken(candidates.size(), false);
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const double dist = std::abs(eigs[i] - candidates[c]);
      if (dist < best_d) {
        best_d = dist;
        best = c;
      }
    }
    if (taken[best]) throw NumericalError("eigenvalue matching is not bijective; C1 is too small for this potential");
    taken[best] = true;
    match[i] = best;
  }
  return match;
}

AsymptoticsReport asymptotics_check(const Potential& v, std::span<const MultiplierPoint> samples,
                                    const OmegaDomain& omega, int ray_steps) {
  const auto& cfg = v.config();
  const double d = static_cast<double>(cfg.dim());
  const double q_total = static_cast<double>(cfg.cell_size());
  constexpr double eps = std::numeric_limits<double>::epsilon();

  AsymptoticsReport r;
  r.residual_bound = dft(v).l1_norm() + 4.0 * d / omega.c1;
  r.ray_consistent = true;

  for (const auto& z : samples) {
    if (!omega.contains(z)) throw std::invalid_argument("asymptotics sample lies outside Omega");
    ++r.samples;

    const auto cands = leading_terms(cfg, z);
    const auto eigs = eigenvalues(assemble_fourier(v, z));
    const auto match = match_to_candidates(eigs.values, cands);
    for (std::size_t i = 0; i < eigs.size(); ++i) {
      r.max_residual = std::max(r.max_residual, std::abs(eigs.values[i] - cands[match[i]]));
    }

    // Ray z_1 -> infinity with ẑ held fixed.
    std::vector<cplx> prev(cfg.cell_size());
    std::vector<double> first_scaled(cfg.cell_size(), 0.0);
    for (int s = 0; s <= ray_steps; ++s) {
      std::vector<cplx> zs(z.values().begin(), z.values().end());
      zs[0] *= std::ldexp(1.0, s);
      const MultiplierPoint zp(zs);
      const auto ray_cands = leading_terms(cfg, zp);
      const auto ray_eigs = eigenvalues(assemble_fourier(v, zp));
      const auto ray_match = match_to_candidates(ray_eigs.values, ray_cands);

      std::vector<cplx> g(cfg.cell_size());
      for (std::size_t i = 0; i < ray_eigs.size(); ++i) {
        const auto& l = cfg.cell(ray_match[i]);
        g[ray_match[i]] = ray_eigs.values[i] - root_of_unity(cfg.period(0), l[0]) * zs[0];
      }
      if (s > 0) {
        const double t_prev = std::abs(zs[0]) * 0.5;
        const double noise = 1e3 * eps * q_total * std::abs(zs[0]);
        for (std::size_t l = 0; l < g.size(); ++l) {
          const double inc = std::abs(g[l] - prev[l]);
          const double scaled = inc * t_prev;
          if (s == 1) first_scaled[l] = scaled;
          // a degree-1 leading term leaves increments ~ c_1 / (2 |z_1|)
          if (inc > 4.0 * first_scaled[l] / t_prev + noise) r.ray_consistent = false;
          r.max_ray_increment_scaled = std::max(r.max_ray_increment_scaled, scaled);
          if (s == ray_steps) r.final_ray_increment = std::max(r.final_ray_increment, inc);
        }
      }
      prev = std::move(g);
    }
  }
  r.residual_ok = r.max_residual <= r.residual_bound;
  return r;
}

}  // namespace bloch

#include "blochvar/variety.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "blochvar/floquet.hpp"

namespace bloch {

namespace {

double relative_mismatch(cplx lhs, cplx rhs) {
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return std::abs(lhs - rhs) / scale;
}

template <typename F>
std::vector<cplx> evaluate(const std::vector<TestPoint>& pts, Execution exec, F&& f) {
  std::vector<cplx> out(pts.size());
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f(pts[i]);
  } else {
    const auto n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(pts[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<cplx> charpoly_values(const Potential& v, const std::vector<TestPoint>& pts, Execution exec) {
  return evaluate(pts, exec, [&](const TestPoint& p) { return charpoly_eval(assemble_direct(v, p.k), p.lambda); });
}

struct Comparison {
  double residual = 0.0;
  std::size_t worst = 0;
};

Comparison compare(std::span<const cplx> lhs, std::span<const cplx> rhs) {
  Comparison c;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const double r = relative_mismatch(lhs[i], rhs[i]);
    if (r > c.residual) {
      c.residual = r;
      c.worst = i;
    }
  }
  return c;
}

}  // namespace

std::vector<TestPoint> identity_test_points(const Potential& v, const IdentityTestOptions& opts) {
  const auto& cfg = v.config();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double radius = 2.0 * static_cast<double>(cfg.dim()) + 2.0 * v.max_abs() + 1.0;

  std::vector<TestPoint> pts(static_cast<std::size_t>(std::max(1, opts.num_points)));
  for (auto& p : pts) {
    p.k.resize(cfg.dim());
    for (auto& kj : p.k) {
      const double re = box(rng);
      kj = cplx(re, box(rng));
    }
    const double r = radius * std::sqrt(unit(rng));
    p.lambda = std::polar(r, kTwoPi * unit(rng));
  }
  return pts;
}

double factorization_residual(const Potential& v, const CellIndex& l, cplx K, const IdentityTestOptions& opts) {
  const auto pts = identity_test_points(v, opts);
  const auto lhs = charpoly_values(v, pts, opts.exec);
  const auto rhs = evaluate(pts, opts.exec,
                            [&](const TestPoint& p) { return product_form_eval(v.config(), l, K, p.k, p.lambda); });
  return compare(lhs, rhs).residual;
}

EntireGraphCertificate entire_graph_test(const Potential& v, const IdentityTestOptions& opts) {
  const auto& cfg = v.config();
  const auto pts = identity_test_points(v, opts);
  const auto lhs = charpoly_values(v, pts, opts.exec);

  EntireGraphCertificate cert{cfg, false, cfg.cell(0), mean(v), std::numeric_limits<double>::infinity(), {}};
  for (const auto& l : cfg.cells()) {
    const auto rhs = evaluate(pts, opts.exec,
                              [&](const TestPoint& p) { return product_form_eval(cfg, l, cert.K, p.k, p.lambda); });
    const auto c = compare(lhs, rhs);
    if (c.residual < opts.tolerance) {
      cert.holds = true;
      cert.l = l;
      cert.residual = c.residual;
      cert.refutation.reset();
      return cert;
    }
    if (c.residual < cert.residual) {
      cert.residual = c.residual;
      cert.l = l;
      const auto& p = pts[c.worst];
      cert.refutation = Witness{p.k, p.lambda, lhs[c.worst], rhs[c.worst]};
    }
  }
  return cert;
}

IsospectralResult floquet_isospectral(const Potential& v, const Potential& y, const IdentityTestOptions& opts) {
  if (!(v.config() == y.config())) throw std::invalid_argument("potentials live on different lattices");
  // Sample with the larger of the two potentials so both see the same disc.
  const Potential& scale_ref = v.max_abs() >= y.max_abs() ? v : y;
  const auto pts = identity_test_points(scale_ref, opts);
  const auto a = charpoly_values(v, pts, opts.exec);
  const auto b = charpoly_values(y, pts, opts.exec);
  const auto c = compare(a, b);
  return {c.residual < opts.tolerance, c.residual};
}

cplx entire_graph_function(const EntireGraphCertificate& cert, std::span<const cplx> k) {
  if (!cert.holds) throw std::invalid_argument("certificate does not hold");
  if (k.size() != cert.cfg.dim()) throw std::invalid_argument("quasimomentum dimension mismatch");
  const cplx i{0.0, 1.0};
  cplx f = cert.K;
  for (std::size_t j = 0; j < k.size(); ++j) {
    const double q = cert.cfg.period(j);
    f += std::exp(kTwoPi * i * k[j] / q) + std::exp(-kTwoPi * i * (static_cast<double>(cert.l[j]) + k[j]) / q);
  }
  return f;
}

}  // namespace bloch

#include "blochvar/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include <Eigen/QR>

#include "blochvar/eigensolve.hpp"

namespace bloch {

namespace {

double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

double max_norm(std::span<const cplx> v) {
  double m = 0.0;
  for (cplx c : v) m = std::max(m, std::abs(c));
  return m;
}

bool lex_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

Matrix principal_minor(const Matrix& a, Eigen::Index skip) {
  const Eigen::Index n = a.rows();
  Matrix out(n - 1, n - 1);
  for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
    if (r == skip) continue;
    for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
      if (c == skip) continue;
      out(rr, cc++) = a(r, c);
    }
    ++rr;
  }
  return out;
}

struct NewtonRun {
  std::vector<cplx> x;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
};

class CoefficientSystem {
 public:
  CoefficientSystem(const InverseProblem& p)
      : base_(p.base), target_(poly_from_roots(p.targets)), n_(p.base.rows()) {
    scale_ = 1.0;
    for (Eigen::Index i = 0; i < n_; ++i) scale_ = std::max(scale_, std::abs(target_[static_cast<std::size_t>(i)]));
  }

  Eigen::VectorXcd residual(const Matrix& a) const {
    const auto c = charpoly_coefficients(a);
    Eigen::VectorXcd f(n_);
    for (Eigen::Index i = 0; i < n_; ++i) f(i) = c[static_cast<std::size_t>(i)] - target_[static_cast<std::size_t>(i)];
    return f;
  }

  Matrix jacobian(const Matrix& a) const {
    Matrix j(n_, n_);
    for (Eigen::Index col = 0; col < n_; ++col) {
      const auto c = charpoly_coefficients(principal_minor(a, col));
      for (Eigen::Index row = 0; row < n_; ++row) j(row, col) = -c[static_cast<std::size_t>(row)];
    }
    return j;
  }

  Matrix with_diagonal(std::span<const cplx> x) const {
    Matrix a = base_;
    for (Eigen::Index i = 0; i < n_; ++i) a(i, i) += x[static_cast<std::size_t>(i)];
    return a;
  }

  double scaled_norm(const Eigen::VectorXcd& f) const { return f.cwiseAbs().maxCoeff() / scale_; }

  NewtonRun run(std::vector<cplx> x, const InverseOptions& opts) const {
    NewtonRun best;
    for (int it = 0; it <= opts.max_iterations; ++it) {
      const Matrix a = with_diagonal(x);
      const auto f = residual(a);
      const double res = scaled_norm(f);
      if (!std::isfinite(res)) break;
      if (res < best.residual) {
        best.residual = res;
        best.x = x;
      }
      if (res == 0.0 || it == opts.max_iterations) break;
      const Eigen::VectorXcd step = jacobian(a).colPivHouseholderQr().solve(-f);
      if (!step.allFinite()) break;
      for (Eigen::Index i = 0; i < n_; ++i) x[static_cast<std::size_t>(i)] += step(i);
      if (max_norm(x) > opts.divergence) break;
      if (step.cwiseAbs().maxCoeff() <= 1e-15 * (1.0 + max_norm(x))) {
        // one more evaluation at the final iterate happens on the next pass
        const double final_res = scaled_norm(residual(with_diagonal(x)));
        if (final_res < best.residual) {
          best.residual = final_res;
          best.x = x;
        }
        break;
      }
    }
    best.converged = best.residual < opts.residual_tol;
    return best;
  }

 private:
  Matrix base_;
  std::vector<cplx> target_;
  Eigen::Index n_;
  double scale_;
};

}  // namespace

std::vector<cplx> charpoly_coefficients(const Matrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[static_cast<std::size_t>(n)] = 1.0;
  Matrix mk = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = a * mk;
    mk.diagonal().array() += c[static_cast<std::size_t>(n - k + 1)];
    c[static_cast<std::size_t>(n - k)] = -(a * mk).trace() / static_cast<double>(k);
  }
  return c;
}

std::vector<cplx> poly_from_roots(std::span<const cplx> roots) {
  std::vector<cplx> c{1.0};
  for (cplx r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

double eigen_mismatch(const Matrix& m, std::span<const cplx> targets, double tol) {
  const auto eigs = eigenvalues(m).values;
  if (eigs.size() != targets.size()) return std::numeric_limits<double>::infinity();

  std::vector<std::pair<cplx, int>> groups;
  for (cplx t : targets) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return std::abs(g.first - t) <= 1e-9; });
    if (it == groups.end()) {
      groups.emplace_back(t, 1);
    } else {
      ++it->second;
    }
  }

  std::vector<bool> used(eigs.size(), false);
  double worst = 0.0;
  for (const auto& [value, mult] : groups) {
    cplx sum = 0.0;
    double spread = 0.0;
    for (int c = 0; c < mult; ++c) {
      std::size_t best = eigs.size();
      for (std::size_t i = 0; i < eigs.size(); ++i) {
        if (!used[i] && (best == eigs.size() || std::abs(eigs[i] - value) < std::abs(eigs[best] - value))) best = i;
      }
      used[best] = true;
      sum += eigs[best];
      spread = std::max(spread, std::abs(eigs[best] - value));
    }
    const double scale = std::max(1.0, std::abs(value));
    if (spread > std::pow(tol, 1.0 / mult) * scale) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(sum / static_cast<double>(mult) - value) / scale);
  }
  return worst;
}

InverseResult solve_diagonal_inverse(const InverseProblem& p, const InverseOptions& opts) {
  const auto n = static_cast<std::size_t>(p.base.rows());
  if (n == 0 || p.base.cols() != p.base.rows()) throw std::invalid_argument("inverse problem needs a nonempty square matrix");
  if (p.targets.size() != n) throw std::invalid_argument("need exactly N target eigenvalues");

  const CoefficientSystem system(p);
  InverseResult result;
  result.attempts = opts.attempts.value_or(static_cast<std::size_t>(200.0 * factorial(n)));

  // Starts are drawn up front so the outcome does not depend on scheduling.
  const double radius =
      2.0 * (p.base.cwiseAbs().rowwise().sum().maxCoeff() + max_norm(p.targets));
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<cplx>> starts(result.attempts, std::vector<cplx>(n));
  for (auto& s : starts) {
    for (auto& c : s) {
      const double r = radius * std::sqrt(unit(rng));
      c = std::polar(r, kTwoPi * unit(rng));
    }
  }

  std::vector<NewtonRun> runs(starts.size());
  if (opts.exec == Execution::serial) {
    for (std::size_t i = 0; i < starts.size(); ++i) runs[i] = system.run(starts[i], opts);
  } else {
    const auto count = static_cast<long>(starts.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < count; ++i) {
      const auto u = static_cast<std::size_t>(i);
      runs[u] = system.run(starts[u], opts);
    }
  }

  std::vector<NewtonRun> converged;
  for (auto& r : runs) {
    if (r.converged) converged.push_back(std::move(r));
  }
  result.converged = converged.size();
  std::sort(converged.begin(), converged.end(), [](const NewtonRun& a, const NewtonRun& b) { return lex_less(a.x, b.x); });

  std::vector<NewtonRun> reps;
  for (auto& r : converged) {
    auto same = std::find_if(reps.begin(), reps.end(), [&](const NewtonRun& k) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(k.x[i] - r.x[i]));
      return d <= opts.dedup_tol;
    });
    if (same == reps.end()) {
      reps.push_back(std::move(r));
    } else if (r.residual < same->residual) {
      *same = std::move(r);
    }
  }

  std::vector<InverseSolution> verified;
  for (auto& r : reps) {
    const double mismatch = eigen_mismatch(system.with_diagonal(r.x), p.targets, opts.verify_tol);
    if (mismatch <= opts.verify_tol) {
      verified.push_back({std::move(r.x), r.residual, mismatch});
    } else {
      ++result.rejected;
    }
  }

  // Near a multiple root Newton stalls anywhere in a ball of radius
  // ~eps^(1/m), so separate candidates there are one root. Two candidates are
  // merged when the whole segment between them still verifies.
  const auto segment_verifies = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (double t : {0.25, 0.5, 0.75}) {
      std::vector<cplx> mid(n);
      for (std::size_t i = 0; i < n; ++i) mid[i] = (1.0 - t) * a[i] + t * b[i];
      if (!(eigen_mismatch(system.with_diagonal(mid), p.targets, opts.verify_tol) <= opts.verify_tol)) return false;
    }
    return true;
  };
  std::vector<std::size_t> parent(verified.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  const auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < verified.size(); ++i) {
    for (std::size_t j = i + 1; j < verified.size(); ++j) {
      if (find(i) != find(j) && segment_verifies(verified[i].x, verified[j].x)) parent[find(j)] = find(i);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < verified.size(); ++i) groups[find(i)].push_back(i);
  for (const auto& [root, members] : groups) {
    if (members.size() == 1) {
      result.solutions.push_back(std::move(verified[root]));
      continue;
    }
    auto best = *std::min_element(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return verified[a].eigen_mismatch < verified[b].eigen_mismatch;
    });
    std::vector<cplx> centre(n, 0.0);
    for (std::size_t m : members)
      for (std::size_t i = 0; i < n; ++i) centre[i] += verified[m].x[i] / static_cast<double>(members.size());
    const Matrix a = system.with_diagonal(centre);
    const double mismatch = eigen_mismatch(a, p.targets, opts.verify_tol);
    if (mismatch <= verified[best].eigen_mismatch) {
      result.solutions.push_back({std::move(centre), system.scaled_norm(system.residual(a)), mismatch});
    } else {
      result.solutions.push_back(std::move(verified[best]));
    }
  }
  std::sort(result.solutions.begin(), result.solutions.end(),
            [](const InverseSolution& a, const InverseSolution& b) { return lex_less(a.x, b.x); });
  if (result.solutions.empty()) {
    throw NumericalError("diagonal inverse problem: no verified solution after " + std::to_string(result.attempts) +
                         " starts (" + std::to_string(result.converged) + " converged, " +
                         std::to_string(result.rejected) + " rejected)");
  }
  return result;
}

std::vector<cplx> exotic_targets(int q1, int l1) {
  if (q1 < 1 || l1 < 0 || l1 >= q1) throw std::invalid_argument("need 0 <= l1 < q1");
  std::vector<cplx> eta;
  for (int m = 0; m < q1; ++m) eta.push_back(root_of_unity(q1, m) + root_of_unity(q1, -(m + l1)));
  return eta;
}

ExoticFamily construct_exotic_1d(int q1, int l1, const InverseOptions& opts, const IdentityTestOptions& check) {
  const LatticeConfig cfg({q1});
  const std::vector<double> k0{0.0};
  const InverseProblem problem{assemble_direct(Potential::zero(cfg), k0).entries, exotic_targets(q1, l1)};
  const auto solved = solve_diagonal_inverse(problem, opts);

  ExoticFamily family{cfg, l1, {}, {}, 0};
  const CellIndex l{{l1}};
  for (const auto& s : solved.solutions) {
    Potential v(cfg, s.x);
    const cplx mu = mean(v);
    if (std::abs(mu) >= 1e-9) {
      ++family.discarded;
      continue;
    }
    v = v.shifted(-mu);
    const double res = factorization_residual(v, l, 0.0, check);
    if (res < check.tolerance) {
      family.solutions.push_back(std::move(v));
      family.residuals.push_back(res);
    } else {
      ++family.discarded;
    }
  }
  if (family.solutions.empty()) {
    throw NumericalError("no verified exotic potential for q1=" + std::to_string(q1) + ", l1=" + std::to_string(l1) +
                         " (" + std::to_string(family.discarded) + " candidates failed verification)");
  }
  return family;
}

LiftedPotential lift_separable(std::span<const ExoticSelection> axes, const IdentityTestOptions& check) {
  if (axes.empty()) throw std::invalid_argument("need at least one axis");
  std::vector<int> periods;
  std::vector<Potential> components;
  CellIndex l;
  for (const auto& a : axes) {
    const auto& c = a.component.config();
    if (c.dim() != 1) throw std::invalid_argument("axis components must be one-dimensional");
    if (a.l < 0 || a.l >= c.period(0)) throw std::invalid_argument("axis label outside its period");
    periods.push_back(c.period(0));
    components.push_back(a.component);
    l.coords.push_back(a.l);
  }
  const LatticeConfig cfg(periods);
  Potential v = separable(cfg, components);
  const double res = factorization_residual(v, l, 0.0, check);
  if (!(res < check.tolerance)) {
    throw NumericalError("separable lift fails the factorization at l=" + to_string(l) +
                         " (residual " + std::to_string(res) + ")");
  }
  return {std::move(v), std::move(l), res};
}

XeReport enumerate_Xe(const LatticeConfig& cfg, const InverseOptions& opts, const IdentityTestOptions& check) {
  XeReport report{cfg, {}, 0, 0, static_cast<double>(cfg.cell_size()) * factorial(cfg.cell_size()), true, {}};

  std::map<std::pair<int, int>, std::optional<ExoticFamily>> families;
  auto family = [&](int q, int l) -> const std::optional<ExoticFamily>& {
    auto key = std::make_pair(q, l);
    auto it = families.find(key);
    if (it == families.end()) {
      std::optional<ExoticFamily> f;
      try {
        f = construct_exotic_1d(q, l, opts, check);
      } catch (const NumericalError&) {
        f.reset();
      }
      it = families.emplace(key, std::move(f)).first;
    }
    return it->second;
  };

  for (const auto& l : cfg.cells()) {
    ExoticClass cls{l, {}, true};
    std::vector<const ExoticFamily*> axis_families;
    bool available = true;
    for (std::size_t j = 0; j < cfg.dim(); ++j) {
      const auto& f = family(cfg.period(j), l[j]);
      if (!f) {
        available = false;
        break;
      }
      axis_families.push_back(&*f);
    }
    if (available) {
      // every combination of per-axis solutions
      std::vector<std::size_t> pick(cfg.dim(), 0);
      for (;;) {
        std::vector<ExoticSelection> sel;
        for (std::size_t j = 0; j < cfg.dim(); ++j) sel.push_back({axis_families[j]->solutions[pick[j]], l[j]});
        cls.members.push_back(lift_separable(sel, check).v);
        bool advanced = false;
        for (std::size_t j = cfg.dim(); j-- > 0;) {
          if (++pick[j] < axis_families[j]->solutions.size()) {
            advanced = true;
            break;
          }
          pick[j] = 0;
        }
        if (!advanced) break;
      }
      for (std::size_t m = 1; m < cls.members.size(); ++m) {
        cls.members_isospectral = cls.members_isospectral && floquet_isospectral(cls.members[0], cls.members[m], check).isospectral;
      }
    } else {
      report.complete = false;
      cls.members_isospectral = false;
    }
    report.total_solutions += cls.members.size();
    report.classes.push_back(std::move(cls));
  }

  // Group representatives into Floquet-isospectral classes.
  std::vector<std::size_t> class_heads;
  for (std::size_t i = 0; i < report.classes.size(); ++i) {
    const auto& ci = report.classes[i];
    if (ci.members.empty()) continue;
    bool merged = false;
    for (std::size_t h : class_heads) {
      const auto& ch = report.classes[h];
      if (floquet_isospectral(ch.members[0], ci.members[0], check).isospectral) {
        report.coincidences.emplace_back(ch.l, ci.l);
        merged = true;
        break;
      }
    }
    if (!merged) class_heads.push_back(i);
  }
  report.class_count = class_heads.size();
  return report;
}

}  // namespace bloch

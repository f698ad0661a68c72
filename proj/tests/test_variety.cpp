#include <gtest/gtest.h>

#include <random>

#include "blochvar/floquet.hpp"
#include "blochvar/sampling.hpp"
#include "blochvar/variety.hpp"

namespace bloch {
namespace {

const cplx I{0.0, 1.0};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

TEST(TestPoints, DeterministicAndInRange) {
  const Potential v(LatticeConfig({2, 3}), std::vector<cplx>(6, cplx(0.0, 1.5)));
  IdentityTestOptions opts;
  opts.seed = 42;
  const auto a = identity_test_points(v, opts);
  const auto b = identity_test_points(v, opts);
  ASSERT_EQ(a.size(), 64u);
  const double radius = 2.0 * 2.0 + 2.0 * 1.5 + 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].k, b[i].k);
    EXPECT_EQ(a[i].lambda, b[i].lambda);
    ASSERT_EQ(a[i].k.size(), 2u);
    for (cplx k : a[i].k) {
      EXPECT_LE(std::abs(k.real()), 1.0);
      EXPECT_LE(std::abs(k.imag()), 1.0);
    }
    EXPECT_LE(std::abs(a[i].lambda), radius);
  }
  opts.seed = 43;
  EXPECT_NE(identity_test_points(v, opts)[0].lambda, a[0].lambda);
}

TEST(EntireGraph, ConstantHoldsAtZero) {
  const auto cert = entire_graph_test(Potential::constant(LatticeConfig({3}), 7.0));
  EXPECT_TRUE(cert.holds);
  EXPECT_EQ(cert.l, CellIndex{{0}});
  EXPECT_LT(std::abs(cert.K - cplx(7.0)), 1e-12);
  EXPECT_LT(cert.residual, 1e-8);
  EXPECT_FALSE(cert.refutation.has_value());
}

TEST(EntireGraph, ExoticTwoSiteHoldsAtOne) {
  const auto cert = entire_graph_test(Potential(LatticeConfig({2}), {2.0 * I, -2.0 * I}));
  EXPECT_TRUE(cert.holds);
  EXPECT_EQ(cert.l, CellIndex{{1}});
  EXPECT_LT(std::abs(cert.K), 1e-12);
}

TEST(EntireGraph, RealNonconstantFailsWithWitness) {
  const Potential v(LatticeConfig({2}), {1.0, -1.0});
  const auto cert = entire_graph_test(v);
  EXPECT_FALSE(cert.holds);
  EXPECT_GT(cert.residual, 1e-8);
  ASSERT_TRUE(cert.refutation.has_value());
  const auto& w = *cert.refutation;
  // recompute both sides independently
  const cplx lhs = charpoly_eval(assemble_direct(v, w.k), w.lambda);
  const cplx rhs = product_form_eval(v.config(), cert.l, cert.K, w.k, w.lambda);
  EXPECT_LT(rel(lhs, w.lhs), 1e-12);
  EXPECT_LT(rel(rhs, w.rhs), 1e-12);
  EXPECT_NEAR(rel(lhs, rhs), cert.residual, 1e-12);
}

TEST(EntireGraph, FactorizationResidualExamples) {
  const Potential v(LatticeConfig({2}), {2.0 * I, -2.0 * I});
  EXPECT_LT(factorization_residual(v, CellIndex{{1}}, 0.0), 1e-8);
  EXPECT_GT(factorization_residual(v, CellIndex{{0}}, 0.0), 1e-3);
  EXPECT_GT(factorization_residual(v, CellIndex{{1}}, 0.5), 1e-3);
}

TEST(EntireGraphProperty, RealPotentialHoldsIffConstant) {
  std::mt19937_64 rng(31);
  for (const auto& periods : std::vector<std::vector<int>>{{1}, {2}, {3}, {4}, {2, 2}, {2, 3}, {3, 3}, {2, 2, 2}}) {
    const LatticeConfig cfg(periods);
    for (double c : {-3.0, 0.0, 0.25, 5.0}) {
      const auto cert = entire_graph_test(Potential::constant(cfg, c));
      EXPECT_TRUE(cert.holds) << to_string(cfg);
      EXPECT_LT(std::abs(cert.K - c), 1e-9);
    }
    if (cfg.cell_size() == 1) continue;
    for (int t = 0; t < 6; ++t) {
      const auto v = random_nonconstant_real_potential(cfg, rng, 0.1, 2.0);
      EXPECT_FALSE(entire_graph_test(v).holds) << to_string(cfg);
    }
  }
}

TEST(EntireGraphProperty, MeanShiftMovesK) {
  std::mt19937_64 rng(33);
  std::vector<Potential> corpus{Potential(LatticeConfig({2}), {2.0 * I, -2.0 * I}),
                                Potential::constant(LatticeConfig({2, 2}), cplx(1.0, -1.0))};
  for (int t = 0; t < 4; ++t) corpus.push_back(random_complex_potential(LatticeConfig({3}), rng, 1.0));
  for (const auto& v : corpus) {
    const cplx m = mean(v);
    const auto a = entire_graph_test(v);
    const auto b = entire_graph_test(v.shifted(-m));
    EXPECT_EQ(a.holds, b.holds);
    if (a.holds) {
      EXPECT_EQ(a.l, b.l);
      EXPECT_LT(std::abs(a.K - m), 1e-9);
      EXPECT_LT(std::abs(b.K), 1e-9);
    }
  }
}

TEST(EntireGraphProperty, TranslationInvariantVerdict) {
  std::mt19937_64 rng(35);
  std::vector<Potential> corpus{Potential(LatticeConfig({2}), {2.0 * I, -2.0 * I}),
                                Potential(LatticeConfig({2}), {1.0, -1.0})};
  for (int t = 0; t < 3; ++t) corpus.push_back(random_complex_potential(LatticeConfig({2, 3}), rng, 1.0));
  for (const auto& v : corpus) {
    const bool holds = entire_graph_test(v).holds;
    for (const auto& s : v.config().cells()) {
      std::vector<long> shift(s.coords.begin(), s.coords.end());
      EXPECT_EQ(entire_graph_test(translate(v, shift)).holds, holds);
    }
  }
}

TEST(Isospectral, Examples) {
  const LatticeConfig c2({2});
  EXPECT_TRUE(floquet_isospectral(Potential(c2, {2.0 * I, -2.0 * I}), Potential(c2, {-2.0 * I, 2.0 * I})).isospectral);
  const auto r = floquet_isospectral(Potential(c2, {1.0, -1.0}), Potential::zero(c2));
  EXPECT_FALSE(r.isospectral);
  EXPECT_GT(r.residual, 1e-3);
  EXPECT_THROW(floquet_isospectral(Potential::zero(c2), Potential::zero(LatticeConfig({3}))), std::invalid_argument);
}

TEST(IsospectralProperty, TranslatesAreIsospectral) {
  std::mt19937_64 rng(37);
  for (const auto& periods : std::vector<std::vector<int>>{{3}, {2, 2}, {3, 2}}) {
    const LatticeConfig cfg(periods);
    const auto v = random_complex_potential(cfg, rng, 1.5);
    for (const auto& s : cfg.cells()) {
      std::vector<long> shift(s.coords.begin(), s.coords.end());
      EXPECT_TRUE(floquet_isospectral(v, translate(v, shift)).isospectral) << to_string(cfg);
    }
  }
}

TEST(IsospectralProperty, EquivalenceRelation) {
  std::mt19937_64 rng(39);
  const LatticeConfig cfg({2, 3});
  for (int t = 0; t < 4; ++t) {
    const auto a = random_complex_potential(cfg, rng, 1.0);
    const auto b = translate(a, std::vector<long>{1, 0});
    const auto c = translate(a, std::vector<long>{0, 2});
    const auto other = random_complex_potential(cfg, rng, 1.0);
    EXPECT_TRUE(floquet_isospectral(a, a).isospectral);
    EXPECT_EQ(floquet_isospectral(a, other).isospectral, floquet_isospectral(other, a).isospectral);
    EXPECT_FALSE(floquet_isospectral(a, other).isospectral);
    EXPECT_TRUE(floquet_isospectral(a, b).isospectral);
    EXPECT_TRUE(floquet_isospectral(b, c).isospectral);
    EXPECT_TRUE(floquet_isospectral(a, c).isospectral);
  }
}

TEST(EntireGraphFunction, Examples) {
  const LatticeConfig c2({2, 3});
  const auto cert = entire_graph_test(Potential::constant(c2, 1.5));
  const std::vector<cplx> zero{0.0, 0.0};
  EXPECT_LT(std::abs(entire_graph_function(cert, zero) - cplx(1.5 + 4.0)), 1e-12);

  const auto exotic = entire_graph_test(Potential(LatticeConfig({2}), {2.0 * I, -2.0 * I}));
  const std::vector<cplx> k0{0.0};
  EXPECT_LT(std::abs(entire_graph_function(exotic, k0)), 1e-12);

  const auto fails = entire_graph_test(Potential(LatticeConfig({2}), {1.0, -1.0}));
  EXPECT_THROW(entire_graph_function(fails, k0), std::invalid_argument);
}

TEST(EntireGraphFunction, LiesOnBlochVariety) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<Potential> corpus{Potential(LatticeConfig({2}), {2.0 * I, -2.0 * I}),
                                      Potential::constant(LatticeConfig({3, 2}), cplx(0.5, 0.5)),
                                      Potential::constant(LatticeConfig({2, 2, 2}), -1.0)};
  for (const auto& v : corpus) {
    const auto cert = entire_graph_test(v);
    ASSERT_TRUE(cert.holds);
    for (int t = 0; t < 20; ++t) {
      std::vector<cplx> k(v.config().dim());
      for (auto& x : k) x = cplx(u(rng), u(rng));
      const cplx lambda = entire_graph_function(cert, k);
      const Matrix m = assemble_direct(v, k).entries;
      // row-sum bound on |det(M - lambda)|
      double scale = 1.0;
      for (int r = 0; r < m.rows(); ++r) scale *= m.row(r).cwiseAbs().sum() + std::abs(lambda);
      EXPECT_LT(std::abs(charpoly_eval(m, lambda)), 1e-8 * std::max(1.0, scale));
    }
  }
}

}  // namespace
}  // namespace bloch

#include <gtest/gtest.h>

#include <random>

#include "blochvar/potential.hpp"
#include "blochvar/sampling.hpp"

namespace bloch {
namespace {

const cplx I{0.0, 1.0};

// Independent oracle: the two-point DFT written out by hand.
TEST(Potential, DftOfTwoSiteExample) {
  const Potential v(LatticeConfig({2}), {1.0, 0.0});
  const auto f = dft(v);
  EXPECT_LT(std::abs(f[0] - 0.5), 1e-15);
  EXPECT_LT(std::abs(f[1] - 0.5), 1e-15);
}

TEST(Potential, DftOfConstantIsDelta) {
  const LatticeConfig cfg({2, 3});
  const auto f = dft(Potential::constant(cfg, cplx(2.0, -1.0)));
  EXPECT_LT(std::abs(f[0] - cplx(2.0, -1.0)), 1e-14);
  for (std::size_t l = 1; l < cfg.cell_size(); ++l) EXPECT_LT(std::abs(f[l]), 1e-14);
}

TEST(Potential, DftOfSeparableVanishesOffAxes) {
  const LatticeConfig cfg({2, 2});
  const std::vector<Potential> comps{Potential(LatticeConfig({2}), {0.3, -1.2}),
                                     Potential(LatticeConfig({2}), {cplx(0.5, 1.0), 2.0})};
  const auto f = dft(separable(cfg, comps));
  const std::vector<long> both{1, 1};
  EXPECT_LT(std::abs(f.at(both)), 1e-15);
}

TEST(Potential, MeanExamples) {
  EXPECT_LT(std::abs(mean(Potential(LatticeConfig({2}), {2.0 * I, -2.0 * I}))), 1e-15);
  EXPECT_LT(std::abs(mean(Potential::constant(LatticeConfig({3, 2}), 5.0)) - 5.0), 1e-15);
  EXPECT_LT(std::abs(mean(Potential(LatticeConfig({3}), {1.0, 2.0, 3.0})) - 2.0), 1e-15);
}

TEST(Potential, SeparableExamples) {
  const LatticeConfig c22({2, 2});
  const LatticeConfig c2({2});
  const std::vector<Potential> a{Potential(c2, {1.0, -1.0}), Potential(c2, {0.0, 0.0})};
  const auto v = separable(c22, a);
  EXPECT_EQ(std::vector<cplx>(v.values().begin(), v.values().end()), (std::vector<cplx>{1.0, 1.0, -1.0, -1.0}));

  const std::vector<Potential> b{Potential(c2, {2.0 * I, -2.0 * I}), Potential(c2, {I, -I})};
  const auto w = separable(c22, b);
  EXPECT_EQ(w[0], 3.0 * I);
  EXPECT_EQ(w[1], I);
  EXPECT_EQ(w[2], -I);
  EXPECT_EQ(w[3], -3.0 * I);

  const LatticeConfig c23({2, 3});
  const std::vector<Potential> zero{Potential::zero(c2), Potential::zero(LatticeConfig({3}))};
  EXPECT_LT(separable(c23, zero).max_abs(), 1e-300);

  const std::vector<Potential> wrong{Potential::zero(c2), Potential::zero(c2)};
  EXPECT_THROW(separable(c23, wrong), std::invalid_argument);
}

TEST(Potential, TranslateExamples) {
  const LatticeConfig c3({3});
  const Potential v(c3, {1.0, 2.0, 3.0});
  const std::vector<long> one{1}, zero{0};
  const auto t = translate(v, one);
  EXPECT_EQ(std::vector<cplx>(t.values().begin(), t.values().end()), (std::vector<cplx>{2.0, 3.0, 1.0}));
  const auto id = translate(v, zero);
  EXPECT_EQ(std::vector<cplx>(id.values().begin(), id.values().end()), (std::vector<cplx>{1.0, 2.0, 3.0}));
  const Potential ab(LatticeConfig({2}), {cplx(4.0, 1.0), -7.0});
  const auto ba = translate(ab, one);
  EXPECT_EQ(ba[0], -7.0);
  EXPECT_EQ(ba[1], cplx(4.0, 1.0));
}

TEST(Potential, RealDetectionAndValidation) {
  const LatticeConfig c2({2});
  EXPECT_TRUE(Potential(c2, {1.0, cplx(2.0, 1e-13)}).is_real());
  EXPECT_FALSE(Potential(c2, {1.0, cplx(2.0, 1e-11)}).is_real());
  EXPECT_THROW(Potential(c2, {1.0}), std::invalid_argument);
}

TEST(PotentialProperty, DftRoundTripMeanAndHermitianSymmetry) {
  std::mt19937_64 rng(11);
  for (const auto& periods : std::vector<std::vector<int>>{{1}, {4}, {2, 3}, {3, 3}, {2, 1, 3}}) {
    const LatticeConfig cfg(periods);
    for (int t = 0; t < 20; ++t) {
      const auto v = random_complex_potential(cfg, rng, 3.0);
      const auto back = inverse_dft(dft(v));
      for (std::size_t i = 0; i < cfg.cell_size(); ++i) {
        EXPECT_LT(std::abs(back[i] - v[i]), 1e-10 * std::max(1.0, v.max_abs()));
      }
      EXPECT_LT(std::abs(mean(v) - dft(v)[0]), 1e-14);
      std::uniform_int_distribution<long> u(-7, 7);
      std::vector<long> s(cfg.dim());
      for (auto& x : s) x = u(rng);
      EXPECT_LT(std::abs(mean(translate(v, s)) - mean(v)), 1e-12);

      const auto r = random_real_potential(cfg, rng);
      const auto fr = dft(r);
      for (const auto& l : cfg.cells()) {
        std::vector<long> minus(cfg.dim());
        for (std::size_t j = 0; j < cfg.dim(); ++j) minus[j] = -l[j];
        EXPECT_LT(std::abs(fr.at(minus) - std::conj(fr[cfg.row_of(l)])), 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace bloch

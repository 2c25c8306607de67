#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "spintomo/errors.hpp"
#include "spintomo/provider.hpp"
#include "spintomo/search.hpp"
#include "spintomo/serialize.hpp"
#include "spintomo/states.hpp"

using namespace spintomo;

namespace {

SearchConfig quick(std::uint64_t seed, std::size_t restarts = 8) {
  SearchConfig c;
  c.seed = seed;
  c.restarts = restarts;
  return c;
}

}  // namespace

TEST(NelderMead, Quadratic) {
  const auto f = [](std::span<const double> x) { return (x[0] - 1) * (x[0] - 1) + 3 * (x[1] + 2) * (x[1] + 2); };
  const NelderMeadResult r = nelder_mead(f, {0.0, 0.0}, 0.5, 2000, 1e-10);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-8);
  EXPECT_NEAR(r.x[1], -2.0, 1e-8);
}

TEST(NelderMead, Rosenbrock) {
  const auto f = [](std::span<const double> x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  const NelderMeadResult r = nelder_mead(f, {-1.2, 1.0}, 0.3, 10000, 1e-12);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
}

TEST(NelderMead, IterationCap) {
  const auto f = [](std::span<const double> x) { return x[0] * x[0]; };
  const NelderMeadResult r = nelder_mead(f, {5.0}, 0.1, 3, 1e-14);
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.iterations, 3u);
}

TEST(Search, Dimensions) {
  EXPECT_EQ(search_dimension(InequalityKind::wigner), 6u);
  EXPECT_EQ(search_dimension(InequalityKind::chsh), 8u);
  EXPECT_EQ(search_dimension(InequalityKind::uffink), 6u);
}

TEST(Search, UffinkDecodingIsOrthogonal) {
  const std::vector<double> x{0.3, 1.2, 2.1, 4.0, 0.7, 5.5};
  const auto d = decode_directions(InequalityKind::uffink, x);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_NEAR(d[0].dot(d[1]), 0.0, 1e-14);
  EXPECT_NEAR(d[2].dot(d[3]), 0.0, 1e-14);
  EXPECT_THROW(decode_directions(InequalityKind::chsh, x), ShapeError);
}

TEST(Search, ChshSingletReachesTsirelson) {
  const SearchResult r = maximize_margin(DensityMatrixProvider(werner(2, -1.0)), InequalityKind::chsh, quick(7));
  EXPECT_NEAR(r.best_report.lhs, 2 * std::numbers::sqrt2 - 2, 1e-6);
  EXPECT_EQ(r.best_margin, r.best_report.margin);
  EXPECT_GT(r.evaluations, 0u);
}

TEST(Search, WignerSingletMaxViolation) {
  const SearchResult r = maximize_margin(DensityMatrixProvider(werner(2, -1.0)), InequalityKind::wigner, quick(1));
  EXPECT_NEAR(r.best_margin, 0.125, 1e-6);
  EXPECT_TRUE(r.best_report.violated);
}

TEST(Search, UffinkNeverViolated) {
  for (double phi : {-1.0, 0.0, 1.0}) {
    const SearchResult r = maximize_margin(WernerClosedProvider(3, phi), InequalityKind::uffink, quick(2, 4));
    EXPECT_LT(r.best_margin, 0.0);
    EXPECT_NEAR(r.best_report.lhs, std::pow((3 * phi - 1) / 12, 2) * 4, 1e-8);
  }
}

TEST(Search, ChshOptimumAcrossPhiGrid) {
  for (int i = 0; i <= 20; ++i) {
    const double phi = -1.0 + 0.1 * i;
    const SearchResult r = maximize_margin(WernerClosedProvider(2, phi), InequalityKind::chsh, quick(3, 4));
    EXPECT_NEAR(r.best_report.lhs, std::abs(2 * phi - 1) / 3 * 2 * std::numbers::sqrt2 - 2, 1e-6) << phi;
  }
}

TEST(Search, DeterministicAcrossThreadCounts) {
  const DensityMatrixProvider p(werner(2, -0.8));
  SearchConfig one = quick(11);
  one.threads = 1;
  SearchConfig many = quick(11);
  many.threads = 4;
  const SearchResult a = maximize_margin(p, InequalityKind::chsh, one);
  const SearchResult b = maximize_margin(p, InequalityKind::chsh, many);
  const SearchResult c = maximize_margin(p, InequalityKind::chsh, one);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_EQ(to_json(a).dump(), to_json(c).dump());
}

TEST(Search, MoreRestartsNeverWorse) {
  const DensityMatrixProvider p(werner(2, -0.7));
  double prev = -INFINITY;
  for (std::size_t n : {1u, 2u, 4u, 8u}) {
    const double m = maximize_margin(p, InequalityKind::wigner, quick(5, n)).best_margin;
    EXPECT_GE(m, prev);
    prev = m;
  }
}

TEST(Search, ConfigValidation) {
  SearchConfig bad = quick(0);
  bad.restarts = 0;
  EXPECT_THROW(maximize_margin(WernerClosedProvider(2, 0.0), InequalityKind::chsh, bad), DomainError);
  bad = quick(0);
  bad.tolerance = 0.0;
  EXPECT_THROW(maximize_margin(WernerClosedProvider(2, 0.0), InequalityKind::chsh, bad), DomainError);
}

TEST(Threshold, WignerAndChsh) {
  const ThresholdResult w = threshold_phi(2, InequalityKind::wigner, quick(0), 1e-5);
  ASSERT_TRUE(w.phi.has_value());
  EXPECT_NEAR(*w.phi, -0.5, 1e-4);
  EXPECT_TRUE(w.monotone);
  const ThresholdResult c = threshold_phi(2, InequalityKind::chsh, quick(0), 1e-5);
  ASSERT_TRUE(c.phi.has_value());
  EXPECT_NEAR(*c.phi, -(3 * std::numbers::sqrt2 - 2) / 4, 1e-4);
}

TEST(Threshold, UffinkHasNone) {
  const ThresholdResult u = threshold_phi(3, InequalityKind::uffink, quick(0, 4), 1e-4);
  EXPECT_FALSE(u.phi.has_value());
  EXPECT_EQ(u.searches, 9u);
}

TEST(Threshold, Validation) {
  EXPECT_THROW(threshold_phi(3, InequalityKind::chsh, quick(0), 1e-4), DomainError);
  EXPECT_THROW(threshold_phi(4, InequalityKind::uffink, quick(0), 1e-4), DomainError);
  EXPECT_THROW(threshold_phi(2, InequalityKind::chsh, quick(0), 0.0), DomainError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "spintomo/errors.hpp"
#include "spintomo/inequalities.hpp"
#include "spintomo/provider.hpp"
#include "spintomo/rng.hpp"
#include "spintomo/sampling.hpp"
#include "spintomo/states.hpp"

using namespace spintomo;

namespace {

constexpr double kPi = std::numbers::pi;

Direction random_direction(CounterRng& rng) {
  return Direction(std::acos(1.0 - 2.0 * rng.uniform()), 2.0 * kPi * rng.uniform());
}

Direction orthogonal_to(const Direction& n, double psi) {
  const double t = n.theta(), p = n.phi();
  const Vec3 et{std::cos(t) * std::cos(p), std::cos(t) * std::sin(p), -std::sin(t)};
  const Vec3 ep{-std::sin(p), std::cos(p), 0.0};
  return Direction::from_vector({std::cos(psi) * et[0] + std::sin(psi) * ep[0],
                                 std::cos(psi) * et[1] + std::sin(psi) * ep[1], std::cos(psi) * et[2]});
}

ComplexMatrix spin_component(Spin spin, const Direction& n) {
  const auto& c = n.cartesian();
  if (spin == Spin::half) return pauli(1) * Complex{c[0]} + pauli(2) * Complex{c[1]} + pauli(3) * Complex{c[2]};
  const auto j = spin1_generators();
  return j[0] * Complex{c[0]} + j[1] * Complex{c[1]} + j[2] * Complex{c[2]};
}

DensityMatrix maximally_mixed(std::size_t d) {
  return DensityMatrix(ComplexMatrix::identity(d) * Complex{1.0 / static_cast<double>(d)});
}

}  // namespace

TEST(Inequalities, KindNames) {
  EXPECT_EQ(parse_inequality_kind("chsh"), InequalityKind::chsh);
  EXPECT_FALSE(parse_inequality_kind("CHSH").has_value());
  EXPECT_FALSE(parse_inequality_kind("bell").has_value());
  EXPECT_EQ(to_string(InequalityKind::uffink), "uffink");
  EXPECT_EQ(direction_count(InequalityKind::wigner), 3u);
  EXPECT_EQ(direction_count(InequalityKind::chsh), 4u);
}

TEST(WignerJointProb, Examples) {
  CounterRng rng(1);
  const DensityMatrixProvider singlet(werner(2, -1.0));
  const DensityMatrixProvider mixed(maximally_mixed(4));
  for (int i = 0; i < 20; ++i) {
    const Direction n = random_direction(rng), m = random_direction(rng);
    EXPECT_NEAR(wigner_joint_prob(singlet, n, n), 0.0, 1e-15);
    EXPECT_NEAR(wigner_joint_prob(mixed, n, m), 0.25, 1e-15);
    const double phi = -1 + 2 * rng.uniform();
    const DensityMatrixProvider w(werner(2, phi));
    EXPECT_NEAR(wigner_joint_prob(w, n, m), 0.25 * (1 + (2 * phi - 1) * n.dot(m) / 3), 1e-14);
  }
}

TEST(EvalWigner, CoplanarSixtyDegrees) {
  const DensityMatrixProvider singlet(werner(2, -1.0));
  const InequalityReport r =
      eval_wigner(singlet, Direction(kPi / 2, 0), Direction(kPi / 2, kPi / 3), Direction(kPi / 2, 2 * kPi / 3));
  EXPECT_NEAR(r.lhs, -0.125, 1e-14);
  EXPECT_NEAR(r.margin, 0.125, 1e-14);
  EXPECT_EQ(r.bound, 0.0);
  EXPECT_TRUE(r.violated);
  EXPECT_EQ(r.directions.size(), 3u);
}

TEST(EvalWigner, AboveThresholdNeverViolated) {
  CounterRng rng(2);
  const WernerClosedProvider w(2, -0.4);
  for (int i = 0; i < 2000; ++i) {
    const InequalityReport r = eval_wigner(w, random_direction(rng), random_direction(rng), random_direction(rng));
    EXPECT_FALSE(r.violated);
  }
}

TEST(EvalWigner, AnticorrelatedProductNeverViolated) {
  CounterRng rng(3);
  for (int s = 0; s < 10; ++s) {
    const DensityMatrixProvider p(mix_separable(random_anticorrelated_qubit_spec(1, rng)));
    for (int i = 0; i < 500; ++i) {
      const InequalityReport r = eval_wigner(p, random_direction(rng), random_direction(rng), random_direction(rng));
      EXPECT_GE(r.lhs, -1e-10);
    }
  }
}

TEST(EvalWigner, AlignedProductCanGoNegative) {
  // Not anti-correlated: the premise of the inequality does not hold.
  const DensityMatrixProvider up_up(basis_projector(4, 0));
  const InequalityReport r = eval_wigner(up_up, Direction::z_axis(), -Direction::z_axis(), Direction::z_axis());
  EXPECT_NEAR(r.lhs, -1.0, 1e-15);
}

TEST(EvalWigner, ViolationNeedsMarginAboveTolerance) {
  const DensityMatrixProvider singlet(werner(2, -1.0));
  // a = b = c gives P + P - P = P(a, a) = 0: no violation at exactly zero.
  const InequalityReport r = eval_wigner(singlet, Direction::x_axis(), Direction::x_axis(), Direction::x_axis());
  EXPECT_NEAR(r.lhs, 0.0, 1e-15);
  EXPECT_FALSE(r.violated);
}

TEST(CorrelationM, WernerFormulaAndSymmetry) {
  CounterRng rng(4);
  for (int i = 0; i < 50; ++i) {
    const double phi = -1 + 2 * rng.uniform();
    const DensityMatrixProvider w(werner(2, phi));
    const Direction n = random_direction(rng), m = random_direction(rng);
    EXPECT_NEAR(correlation_M(w, n, m), (2 * phi - 1) / 3 * n.dot(m), 1e-14);
    EXPECT_NEAR(correlation_M(w, n, m), correlation_M(w, m, n), 1e-12);
  }
  const DensityMatrixProvider mixed(maximally_mixed(4));
  EXPECT_NEAR(correlation_M(mixed, Direction(0.3, 0.1), Direction(1.1, 2.0)), 0.0, 1e-15);
}

TEST(CorrelationM, MatchesTraceOracle) {
  CounterRng rng(5);
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = ginibre_state(4, rng);
    const Direction n = random_direction(rng), m = random_direction(rng);
    const double oracle =
        trace(rho.matrix() * kron(spin_component(Spin::half, n), spin_component(Spin::half, m))).real();
    EXPECT_NEAR(correlation_M(DensityMatrixProvider(rho), n, m), oracle, 1e-12);
  }
  EXPECT_THROW(correlation_M(DensityMatrixProvider(werner(3, 0.0)), Direction(), Direction()), DomainError);
}

TEST(EvalChsh, OptimalQuadOnSinglet) {
  const auto q = optimal_chsh_quad();
  const InequalityReport r = eval_chsh(DensityMatrixProvider(werner(2, -1.0)), q[0], q[1], q[2], q[3]);
  EXPECT_NEAR(r.lhs, 2 * std::numbers::sqrt2 - 2, 1e-14);
  EXPECT_TRUE(r.violated);
  EXPECT_NEAR(q[1].dot(q[3]), 0.0, 1e-15);
}

TEST(EvalChsh, MaximallyMixed) {
  const auto q = optimal_chsh_quad();
  EXPECT_NEAR(eval_chsh(DensityMatrixProvider(maximally_mixed(4)), q[0], q[1], q[2], q[3]).lhs, -2.0, 1e-15);
}

TEST(EvalChsh, AboveThresholdNeverViolated) {
  CounterRng rng(6);
  const WernerClosedProvider w(2, -0.5);
  for (int i = 0; i < 5000; ++i) {
    const auto r =
        eval_chsh(w, random_direction(rng), random_direction(rng), random_direction(rng), random_direction(rng));
    EXPECT_FALSE(r.violated);
  }
}

TEST(EvalChsh, ClassicalBoundOnSeparableStates) {
  CounterRng rng(7);
  for (int s = 0; s < 10; ++s) {
    const DensityMatrixProvider p(mix_separable(random_separable_spec(2, 1 + s % 4, rng)));
    for (int i = 0; i < 1000; ++i) {
      const auto r =
          eval_chsh(p, random_direction(rng), random_direction(rng), random_direction(rng), random_direction(rng));
      EXPECT_LE(r.lhs, 1e-10);
    }
  }
}

TEST(EvalChsh, TsirelsonCeiling) {
  CounterRng rng(8);
  for (int s = 0; s < 5; ++s) {
    const DensityMatrixProvider p(s == 0 ? werner(2, -1.0) : random_pure_state(4, rng));
    for (int i = 0; i < 2000; ++i) {
      const auto r =
          eval_chsh(p, random_direction(rng), random_direction(rng), random_direction(rng), random_direction(rng));
      EXPECT_LE(r.lhs + 2, 2 * std::numbers::sqrt2 + 1e-9);
    }
  }
}

TEST(SpinCorrelation, QutritWernerFormula) {
  CounterRng rng(9);
  for (int i = 0; i < 50; ++i) {
    const double phi = -1 + 2 * rng.uniform();
    const Direction n = random_direction(rng), m = random_direction(rng);
    const DensityMatrix w = werner(3, phi);
    const double oracle = trace(w.matrix() * kron(spin_component(Spin::one, n), spin_component(Spin::one, m))).real();
    EXPECT_NEAR(spin_correlation(DensityMatrixProvider(w), n, m), (3 * phi - 1) / 12 * n.dot(m), 1e-14);
    EXPECT_NEAR(spin_correlation(WernerClosedProvider(3, phi), n, m), oracle, 1e-12);
  }
}

TEST(EvalUffink, MatchesClosedForm) {
  CounterRng rng(10);
  for (int i = 0; i < 100; ++i) {
    const double phi = -1 + 2 * rng.uniform();
    const Direction a = random_direction(rng), b = random_direction(rng);
    const Direction ap = orthogonal_to(a, 2 * kPi * rng.uniform()), bp = orthogonal_to(b, 2 * kPi * rng.uniform());
    const double k = (3 * phi - 1) / 12;
    const double first = k * (a.dot(bp) + ap.dot(b));
    const double second = k * (a.dot(b) - ap.dot(bp));
    const auto r = eval_uffink(DensityMatrixProvider(werner(3, phi)), a, ap, b, bp);
    EXPECT_NEAR(r.lhs, first * first + second * second, 1e-12);
    EXPECT_EQ(r.bound, 1.0);
    EXPECT_NEAR(r.margin, r.lhs - 1, 1e-15);
    EXPECT_FALSE(r.violated);
  }
}

TEST(EvalUffink, OrthogonalFrameAtSinglet) {
  // a = b = x, a' = -b' = y: bracket (0)^2 + (1 + 1)^2 = 4.
  const auto r = eval_uffink(DensityMatrixProvider(werner(3, -1.0)), Direction::x_axis(), Direction::y_axis(),
                             Direction::x_axis(), -Direction::y_axis());
  EXPECT_NEAR(r.lhs, 4.0 / 9.0, 1e-14);
}

TEST(EvalUffink, RequiresOrthogonalPairs) {
  const DensityMatrixProvider w(werner(3, 0.0));
  EXPECT_THROW(eval_uffink(w, Direction::x_axis(), Direction(1.0, 0.3), Direction::z_axis(), Direction::x_axis()),
               DomainError);
}

TEST(EvalUffink, QubitsSupported) {
  const double phi = -1.0;
  const auto r = eval_uffink(DensityMatrixProvider(werner(2, phi)), Direction::x_axis(), Direction::y_axis(),
                             Direction::x_axis(), -Direction::y_axis());
  const double k = (2 * phi - 1) / 3;
  EXPECT_NEAR(r.lhs, 4 * k * k, 1e-14);
  EXPECT_TRUE(r.violated);
}

TEST(Evaluate, Dispatch) {
  const DensityMatrixProvider w(werner(2, -1.0));
  const std::vector<Direction> three{Direction(kPi / 2, 0), Direction(kPi / 2, kPi / 3), Direction(kPi / 2, 2 * kPi / 3)};
  EXPECT_NEAR(evaluate(w, InequalityKind::wigner, three).lhs, -0.125, 1e-14);
  EXPECT_THROW(evaluate(w, InequalityKind::chsh, three), ShapeError);
  const DensityMatrixProvider q(werner(3, 0.0));
  EXPECT_THROW(evaluate(q, InequalityKind::wigner, three), DomainError);
}

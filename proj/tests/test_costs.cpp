#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sceot/costs.hpp"
#include "sceot/error.hpp"
#include "sceot/measure1d.hpp"
#include "sceot/numeric.hpp"

namespace sceot {
namespace {

constexpr double kPi = std::numbers::pi;

CostModel ring_inverse() { return make_ring_cost(profiles::inverse()); }

// Piecewise-linear samples of a convex non-increasing shape on [0, 12].
Profile sampled_convex(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.2, 2.0);
  const int shape = static_cast<int>(gen() % 3);
  const double a = u(gen);
  const double b = u(gen);
  std::vector<double> ts;
  std::vector<double> gs;
  for (int k = 0; k <= 96; ++k) {
    const double t = 12.0 * k / 96.0;
    ts.push_back(t);
    if (shape == 0) gs.push_back(a * std::exp(-b * t));
    if (shape == 1) gs.push_back(a / (1.0 + b * t));
    if (shape == 2) gs.push_back(a * std::max(0.0, 1.0 - t / (4.0 * b)));
  }
  return profiles::table(ts, gs);
}

TEST(TorusDistance, Examples) {
  EXPECT_NEAR(torus_distance(0.0, 3.0 * kPi / 2.0), kPi / 2.0, 1e-15);
  EXPECT_EQ(torus_distance(1.3, 1.3), 0.0);
  EXPECT_NEAR(torus_distance(kPi / 3.0, 5.0 * kPi / 3.0), 2.0 * kPi / 3.0, 1e-15);
}

TEST(RingCost, Examples) {
  EXPECT_NEAR(ring_inverse()(0.0, kPi), 0.5, 1e-15);
  EXPECT_NEAR(make_ring_cost(profiles::linear(2.0, 1.0))(0.0, kPi), 0.0, 1e-15);
  EXPECT_NEAR(ring_inverse()(0.0, kPi / 2.0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(std::isinf(ring_inverse()(1.0, 1.0)));
  EXPECT_TRUE(std::isinf(ring_inverse()(0.0, 2.0 * kPi)));
  EXPECT_EQ(ring_inverse().infinity_locus(), InfinityLocus::periodic_diagonal);
}

TEST(TorusAndGraphCost, Examples) {
  EXPECT_NEAR(make_torus_cost(profiles::linear(kPi, 1.0))(0.0, 3.0 * kPi / 2.0), kPi / 2.0, 1e-15);
  const Profile f = [](double x) { return std::exp(-x); };
  const Profile g = [](double d) { return 1.0 / (1.0 + d); };
  EXPECT_NEAR(make_graph_cost(f, g, 0.0, 4.0)(0.0, 0.0), 1.0, 1e-15);
  const CostModel w = make_graph_cost([](double x) { return 1.0 / x; }, profiles::inverse(), 0.5, 4.0);
  EXPECT_NEAR(w(1.0, 2.0), 2.0 / std::sqrt(5.0), 1e-15);
}

TEST(ConeCombine, Examples) {
  const CostModel a = ring_inverse();
  const CostModel b = make_torus_cost(profiles::linear(kPi, 1.0));
  const CostModel one = cone_combine({a}, {1.0});
  const CostModel half = cone_combine({a}, {0.5});
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int s = 0; s < 200; ++s) {
    const double x = u(gen);
    const double y = u(gen);
    EXPECT_EQ(one(x, y), a(x, y));
    EXPECT_NEAR(half(x, y), 0.5 * a(x, y), 1e-15 * std::abs(a(x, y)));
  }
  const WellOrderReport r = check_well_ordering(cone_combine({a, b}, {1.0, 1.0}), 32);
  EXPECT_EQ(r.verdict, Verdict::well_ordering);
  EXPECT_THROW(cone_combine({a}, {0.0}), ConstructionError);
}

TEST(CheckWellOrdering, RingInverseIsWellOrdering) {
  const WellOrderReport r = check_well_ordering(ring_inverse(), 48);
  EXPECT_EQ(r.verdict, Verdict::well_ordering);
  EXPECT_FALSE(r.counterexample.has_value());
  EXPECT_GE(r.margin, -1e-12);
  EXPECT_EQ(r.grid_size, 48u);
}

TEST(CheckWellOrdering, SquaredDistanceViolates) {
  const CostModel w = make_line_cost(profiles::power(1.0, 2.0), 0.0, 1.0);
  Pairing better = Pairing::nested;
  const double slack = quadruple_slack(w, {0.0, 0.2, 0.5, 1.0}, &better);
  EXPECT_NEAR(slack, 0.29 - 0.89, 1e-12);
  EXPECT_EQ(better, Pairing::adjacent);
  const WellOrderReport r = check_well_ordering(w, 16);
  EXPECT_EQ(r.verdict, Verdict::violated);
  ASSERT_TRUE(r.counterexample.has_value());
  const auto& q = r.counterexample->quadruple;
  EXPECT_LE(q[0], q[1]);
  EXPECT_LE(q[1], q[2]);
  EXPECT_LE(q[2], q[3]);
  EXPECT_GT(r.counterexample->nested_value, r.counterexample->better_value);
}

TEST(CheckWellOrdering, OneBodyCostHasEqualPairings) {
  const CostModel w = make_one_body_cost([](double x) { return std::sin(3.0 * x); }, 0.0, 2.0 * kPi);
  const WellOrderReport r = check_well_ordering(w, 24);
  EXPECT_EQ(r.verdict, Verdict::well_ordering);
  EXPECT_NEAR(r.margin, 0.0, 1e-12);
  EXPECT_EQ(check_well_ordering(w, 24, true).verdict, Verdict::well_ordering);
}

TEST(CheckWellOrdering, StrictForStrictlyConvexProfile) {
  const WellOrderReport r = check_well_ordering(make_line_cost(profiles::exponential(1.0, 1.0), 0.0, 3.0), 24, true);
  EXPECT_EQ(r.verdict, Verdict::strictly_well_ordering);
  EXPECT_EQ(r.inconclusive, 0u);
}

TEST(CheckWellOrdering, RandomQuadrupleCount) {
  const WellOrderReport r = check_well_ordering(ring_inverse(), 16, false, 3, 777);
  EXPECT_EQ(r.random_quadruples, 777u);
  EXPECT_EQ(check_well_ordering(ring_inverse(), 16).random_quadruples, 160u);
}

TEST(TranslationInvariantCriterion, Examples) {
  const Profile wrapped = [](double t) {
    const double a = std::abs(t);
    return kPi - std::min(a, 2.0 * kPi - a);
  };
  EXPECT_EQ(check_translation_invariant_criterion(wrapped, 0.0, 2.0 * kPi, 64).verdict,
            Verdict::well_ordering);
  const WellOrderReport sq = check_translation_invariant_criterion(profiles::power(1.0, 2.0), 0.0, 1.0, 11);
  EXPECT_EQ(sq.verdict, Verdict::violated);
  // d0 = d1 = 0.1, delta = 0.2 violates the shift inequality by 0.16.
  EXPECT_LE(sq.margin, -0.16 + 1e-12);
  EXPECT_EQ(check_translation_invariant_criterion(profiles::exponential(1.0, 1.0), 0.0, 100.0, 64).verdict,
            Verdict::well_ordering);
}

TEST(TranslationInvariantCriterion, AgreesWithQuadrupleChecker) {
  std::mt19937_64 gen(20);
  std::uniform_real_distribution<double> u(0.3, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(gen);
    const double b = u(gen);
    Profile g;
    switch (trial % 4) {
      case 0: g = profiles::exponential(a, b); break;             // convex decreasing
      case 1: g = profiles::power(a, 1.0 + b); break;             // convex increasing
      case 2: g = profiles::linear(a, b); break;                  // affine decreasing
      default: g = [a, b](double t) { return a - b * t * t; };   // concave decreasing
    }
    const double len = 1.0 + a;
    const Verdict crit = check_translation_invariant_criterion(g, 0.0, len, 33).verdict;
    const Verdict quad = check_well_ordering(make_line_cost(g, 0.0, len), 33, false, static_cast<std::uint64_t>(trial)).verdict;
    EXPECT_EQ(crit == Verdict::violated, quad == Verdict::violated) << "trial " << trial;
    EXPECT_EQ(crit == Verdict::violated, trial % 4 == 1 || trial % 4 == 3) << "trial " << trial;
  }
}

TEST(GraphCost, ConvexNonIncreasingPairsAreWellOrdering) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 10; ++trial) {
    const CostModel w = make_graph_cost(sampled_convex(gen), sampled_convex(gen), 0.0, 4.0);
    const WellOrderReport r = check_well_ordering(w, 32, false, static_cast<std::uint64_t>(trial), 2000);
    EXPECT_EQ(r.verdict, Verdict::well_ordering) << "trial " << trial;
  }
}

TEST(CostModel, SymmetryOnRandomPairs) {
  const CostModel w = CostModel::symmetrized([](double x, double y) { return std::exp(-x) + 3.0 * y * y; }, {});
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int s = 0; s < 10000; ++s) {
    const double x = u(gen);
    const double y = u(gen);
    ASSERT_EQ(w(x, y), w(y, x));
  }
}

TEST(Envelopes, Examples) {
  const Envelopes ring = envelopes(ring_inverse(), 256);
  EXPECT_NEAR(ring.m(kPi), 0.5, 1e-12);
  EXPECT_NEAR(ring.M(kPi), 0.5, 1e-12);
  const Envelopes torus = envelopes(make_torus_cost(profiles::linear(kPi, 1.0)), 256);
  EXPECT_NEAR(torus.M(kPi / 2.0), kPi / 2.0, 1e-9);
  const Envelopes chord = envelopes(make_ring_cost(profiles::linear(2.0, 1.0)), 256);
  EXPECT_NEAR(chord.M(kPi), 0.0, 1e-12);
}

TEST(Envelopes, SandwichProperty) {
  const std::vector<CostModel> models = {ring_inverse(), make_ring_cost(profiles::exponential(1.0, 2.0)),
                                         make_torus_cost(profiles::linear(kPi, 1.0))};
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (const CostModel& w : models) {
    const Envelopes env = envelopes(w, 512);
    for (int s = 0; s < 2000; ++s) {
      const double x = u(gen);
      const double y = u(gen);
      const double t = torus_distance(x, y);
      if (t < env.t.front()) continue;
      EXPECT_LE(env.m(t), w(x, y) + 1e-12);
      EXPECT_GE(env.M(t), w(x, y) - 1e-12);
    }
    for (std::size_t k = 1; k < env.t.size(); ++k) {
      EXPECT_LE(env.lower[k], env.lower[k - 1]);
      EXPECT_LE(env.upper[k], env.upper[k - 1]);
    }
  }
}

TEST(Truncate, Examples) {
  const CostModel w = truncate(ring_inverse(), 10.0);
  EXPECT_NEAR(w(0.0, kPi), 0.5, 1e-15);
  const double theta = 2.0 * std::asin(0.025);  // chord 0.05
  EXPECT_EQ(w(0.0, theta), 10.0);
  EXPECT_EQ(w(1.0, 1.0), 10.0);
  EXPECT_EQ(w.infinity_locus(), InfinityLocus::none);
  ASSERT_TRUE(w.truncation().has_value());
  EXPECT_EQ(*w.truncation(), 10.0);
}

TEST(Truncate, BoundedAndEqualBelowLevel) {
  const CostModel full = ring_inverse();
  const CostModel w = truncate(full, 3.0);
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int s = 0; s < 10000; ++s) {
    const double x = u(gen);
    const double y = u(gen);
    ASSERT_LE(w(x, y), 3.0);
    if (full(x, y) <= 3.0) {
      ASSERT_EQ(w(x, y), full(x, y));
    }
  }
}

TEST(SupportThresholds, Examples) {
  const GridDensity uni = densities::uniform();
  EXPECT_THROW(support_thresholds(uni, ring_inverse(), 2, kPi / 2.0), ConcentrationError);
  const SupportThresholds two = support_thresholds(uni, ring_inverse(), 2, kPi / 4.0);
  EXPECT_TRUE(std::isfinite(two.h));
  EXPECT_GT(two.beta, 0.0);
  EXPECT_LE(two.beta / 2.0, kPi / 4.0);
  EXPECT_NEAR(two.kappa, 0.25, 1e-12);
  const SupportThresholds three8 = support_thresholds(uni, ring_inverse(), 3, kPi / 8.0);
  const SupportThresholds two8 = support_thresholds(uni, ring_inverse(), 2, kPi / 8.0);
  EXPECT_TRUE(std::isfinite(three8.h));
  EXPECT_GT(three8.h, two8.h);
}

TEST(SupportThresholds, DefiningInequalities) {
  const GridDensity rho = densities::cosine();
  const CostModel w = ring_inverse();
  const SupportThresholds s = auto_support_thresholds(rho, w, 2);
  const Envelopes env = envelopes(w, 2048);
  EXPECT_GT(env.m(s.beta), s.lower_target);
  EXPECT_LT(s.kappa, 0.5);
  EXPECT_NEAR(s.h, 2.0 * env.M(s.beta / 2.0) * (1.0 + 1e-6), 1e-9 * s.h);
}

}  // namespace
}  // namespace sceot

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sceot/costs.hpp"
#include "sceot/error.hpp"
#include "sceot/swaplab.hpp"

namespace sceot {
namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<int> kWorkedSet = {1, 3, 4, 8, 9, 11, 12};

// Direct prefix count, independent of the library.
std::vector<int> prefix_counts(const std::vector<int>& members, int n) {
  std::vector<int> f(static_cast<std::size_t>(2 * n + 1), 0);
  for (int k = 1; k <= 2 * n; ++k) {
    const bool in = std::find(members.begin(), members.end(), k) != members.end();
    f[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k - 1)] + (in ? 1 : -1);
  }
  return f;
}

Bipartition random_bipartition(std::mt19937_64& gen, int n) {
  std::vector<int> idx(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < 2 * n; ++k) idx[static_cast<std::size_t>(k)] = k + 1;
  std::shuffle(idx.begin(), idx.end(), gen);
  idx.resize(static_cast<std::size_t>(n));
  return Bipartition(n, idx);
}

TEST(Bipartition, Validation) {
  EXPECT_THROW(Bipartition(2, {1}), DomainError);
  EXPECT_THROW(Bipartition(2, {1, 5}), DomainError);
  EXPECT_THROW(Bipartition(2, {2, 2}), DomainError);
  EXPECT_EQ(Bipartition(3, {5, 1, 3}), Bipartition::odd(3));
  EXPECT_EQ(Bipartition::odd(3).complement(), Bipartition::even(3));
}

TEST(CumulativeF, WorkedExampleValues) {
  const StepFunction f = cumulative_f(Bipartition(7, kWorkedSet));
  const std::vector<int> expected = {0, 1, 0, 1, 2, 1, 0, -1, 0, 1, 0, 1, 2, 1, 0};
  EXPECT_EQ(f.values, expected);
  EXPECT_EQ(f.max(), 2);
  EXPECT_EQ(f.min(), -1);
  EXPECT_EQ(oscillation(f), 3);
  EXPECT_EQ(maximum_points(f), (std::vector<int>{4, 12}));
}

TEST(CumulativeF, ExtremalSets) {
  const int n = 6;
  const StepFunction fe = cumulative_f(Bipartition::even(n));
  for (int k = 1; k <= 2 * n; ++k) EXPECT_EQ(fe.values[static_cast<std::size_t>(k)], k % 2 == 1 ? -1 : 0);
  EXPECT_EQ(oscillation(fe), 1);
  const StepFunction fo = cumulative_f(Bipartition::odd(n));
  EXPECT_EQ(oscillation(fo), 1);
  EXPECT_EQ(maximum_points(fo), (std::vector<int>{1, 3, 5, 7, 9, 11}));
  std::vector<int> first;
  for (int k = 1; k <= n; ++k) first.push_back(k);
  const StepFunction ff = cumulative_f(Bipartition(n, first));
  EXPECT_EQ(oscillation(ff), n);
  EXPECT_EQ(maximum_points(ff), std::vector<int>{n});
}

TEST(SwapStep, WorkedExampleSequence) {
  const SwapResult first = swap_step(Bipartition(7, kWorkedSet));
  EXPECT_EQ(first.next.members(), (std::vector<int>{1, 3, 5, 8, 9, 11, 13}));
  EXPECT_FALSE(first.used_complement);
  EXPECT_EQ(first.max_points, (std::vector<int>{4, 12}));
  const SwapResult second = swap_step(first.next);
  EXPECT_EQ(second.next, Bipartition::even(7));
  const SwapResult third = swap_step(second.next);
  EXPECT_TRUE(third.terminal);
  EXPECT_EQ(third.next, Bipartition::even(7));
}

TEST(SwapStep, SinglePeak) {
  EXPECT_EQ(swap_step(Bipartition(2, {1, 2})).next, Bipartition::odd(2));
}

TEST(SwapStep, ComplementRuleWhenMaximumBelowOne) {
  // {3, 4} gives f = 0, -1, -2, -1, 0.
  const SwapResult r = swap_step(Bipartition(2, {3, 4}));
  EXPECT_TRUE(r.used_complement);
  EXPECT_EQ(oscillation(cumulative_f(r.next)), 1);
}

TEST(SwapLab, RandomBipartitionInvariants) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 16);
    Bipartition a = random_bipartition(gen, n);
    const StepFunction f = cumulative_f(a);
    ASSERT_EQ(f.values, prefix_counts(a.members(), n));
    ASSERT_EQ(f.values.back(), 0);
    const StepFunction fc = cumulative_f(a.complement());
    for (std::size_t k = 0; k < f.values.size(); ++k) {
      ASSERT_EQ(fc.values[k], -f.values[k]);
      if (k > 0) {
        ASSERT_EQ(std::abs(f.values[k] - f.values[k - 1]), 1);
      }
    }
    int steps = 0;
    while (oscillation(cumulative_f(a)) > 1) {
      const SwapResult r = swap_step(a);
      const Bipartition& side = r.used_complement ? a.complement() : a;
      for (int l : r.max_points) ASSERT_FALSE(side.contains(l + 1));
      ASSERT_LT(oscillation(cumulative_f(r.next)), oscillation(cumulative_f(a)));
      a = r.next;
      ++steps;
    }
    ASSERT_LE(steps, std::max(0, n - 1));
    ASSERT_TRUE(a == Bipartition::odd(n) || a == Bipartition::even(n));
  }
}

TEST(ReduceToWellordered, WorkedExampleTrace) {
  std::vector<double> x;
  for (int j = 1; j <= 14; ++j) x.push_back(j * 2.0 * kPi / 15.0);
  const SwapTrace t = reduce_to_wellordered(Bipartition(7, kWorkedSet), x, make_ring_cost(profiles::inverse()));
  ASSERT_EQ(t.swaps(), 2);
  EXPECT_EQ(t.steps[1].set.members(), (std::vector<int>{1, 3, 5, 8, 9, 11, 13}));
  EXPECT_EQ(t.steps[2].set, Bipartition::even(7));
  EXPECT_EQ(t.steps[0].oscillation, 3);
  EXPECT_EQ(t.steps[2].oscillation, 1);
  EXPECT_LE(t.steps[1].paired_cost, t.steps[0].paired_cost + 1e-9);
  EXPECT_LE(t.steps[2].paired_cost, t.steps[1].paired_cost + 1e-9);
}

TEST(ReduceToWellordered, TerminalInputHasNoSwaps) {
  const std::vector<double> x = {0.5, 1.0, 2.0, 3.0, 4.0, 5.0};
  const SwapTrace t = reduce_to_wellordered(Bipartition::odd(3), x, make_ring_cost(profiles::inverse()));
  EXPECT_EQ(t.swaps(), 0);
}

TEST(ReduceToWellordered, FourPointExchange) {
  const std::vector<double> x = {0.0, 0.1, 3.0, 3.1};
  const CostModel w = make_torus_cost(profiles::linear(kPi, 1.0));
  const SwapTrace t = reduce_to_wellordered(Bipartition(2, {1, 2}), x, w);
  ASSERT_EQ(t.swaps(), 1);
  EXPECT_EQ(t.steps[1].set, Bipartition::odd(2));
  const double before = 2.0 * w(x[0], x[1]) + 2.0 * w(x[2], x[3]);
  const double after = 2.0 * w(x[0], x[2]) + 2.0 * w(x[1], x[3]);
  EXPECT_NEAR(t.steps[0].paired_cost, before, 1e-12);
  EXPECT_NEAR(t.steps[0].paired_cost - t.steps[1].paired_cost, before - after, 1e-12);
}

TEST(ReduceToWellordered, PairedCostNonIncreasingForWellOrderingCosts) {
  const std::vector<CostModel> costs = {make_ring_cost(profiles::inverse()),
                                        make_ring_cost(profiles::exponential(1.0, 2.0)),
                                        make_torus_cost(profiles::linear(kPi, 1.0))};
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 4);
    std::vector<double> x(static_cast<std::size_t>(2 * n));
    for (double& v : x) v = u(gen);
    std::sort(x.begin(), x.end());
    const CostModel& w = costs[static_cast<std::size_t>(trial) % costs.size()];
    const SwapTrace t = reduce_to_wellordered(random_bipartition(gen, n), x, w);
    for (std::size_t s = 1; s < t.steps.size(); ++s) {
      ASSERT_LE(t.steps[s].paired_cost, t.steps[s - 1].paired_cost + 1e-9);
    }
  }
}

TEST(ReduceToWellordered, StrictCostDecreasesStrictly) {
  const CostModel w = make_torus_cost(profiles::exponential(1.0, 1.0));
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 3);
    std::vector<double> x(static_cast<std::size_t>(2 * n));
    for (double& v : x) v = u(gen);
    std::sort(x.begin(), x.end());
    if (std::adjacent_find(x.begin(), x.end()) != x.end()) continue;
    const SwapTrace t = reduce_to_wellordered(random_bipartition(gen, n), x, w);
    for (std::size_t s = 1; s < t.steps.size(); ++s) {
      ASSERT_LT(t.steps[s].paired_cost, t.steps[s - 1].paired_cost);
    }
  }
}

TEST(BipartitionMinCheck, Examples) {
  const BipartitionCheck four = bipartition_min_check({0.0, 1.0, 2.0, 3.0}, make_ring_cost(profiles::inverse()));
  EXPECT_TRUE(four.odd_even_minimal);
  EXPECT_EQ(four.ranking.size(), 6u);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  std::vector<double> x(6);
  for (double& v : x) v = u(gen);
  std::sort(x.begin(), x.end());
  const BipartitionCheck six = bipartition_min_check(x, make_ring_cost(profiles::inverse()));
  EXPECT_TRUE(six.odd_even_minimal);
  EXPECT_EQ(six.ranking.size(), 20u);
  const BipartitionCheck sq = bipartition_min_check({0.0, 1.0, 2.0, 3.0}, make_line_cost(profiles::power(1.0, 2.0), 0.0, 4.0));
  EXPECT_FALSE(sq.odd_even_minimal);
  EXPECT_LT(sq.min_cost, sq.odd_even_cost);
}

}  // namespace
}  // namespace sceot

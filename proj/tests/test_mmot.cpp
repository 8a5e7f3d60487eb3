#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sceot/costs.hpp"
#include "sceot/discrete.hpp"
#include "sceot/error.hpp"
#include "sceot/measure1d.hpp"
#include "sceot/mmot.hpp"
#include "sceot/seidl.hpp"
#include "sceot/simplex.hpp"

namespace sceot {
namespace {

constexpr double kPi = std::numbers::pi;

DiscreteMarginal uniform_atoms(std::vector<double> atoms) {
  const double w = 1.0 / static_cast<double>(atoms.size());
  return {atoms, std::vector<double>(atoms.size(), w)};
}

TEST(Simplex, SmallKnownOptimum) {
  // min -x1 - 2 x2, x1 + x2 + s1 = 4, x2 + s2 = 3.
  EqualityLP lp;
  lp.rows = 2;
  lp.columns = {{{0}, {1.0}}, {{0, 1}, {1.0, 1.0}}, {{0}, {1.0}}, {{1}, {1.0}}};
  lp.cost = {-1.0, -2.0, 0.0, 0.0};
  lp.rhs = {4.0, 3.0};
  const LPResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LPStatus::optimal);
  EXPECT_NEAR(r.value, -7.0, 1e-12);
  EXPECT_NEAR(r.x[0], 1.0, 1e-12);
  EXPECT_NEAR(r.x[1], 3.0, 1e-12);
  // Strong duality on the original rows.
  EXPECT_NEAR(r.y[0] * 4.0 + r.y[1] * 3.0, -7.0, 1e-12);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  EqualityLP inf;
  inf.rows = 1;
  inf.columns = {{{0}, {1.0}}};
  inf.cost = {1.0};
  inf.rhs = {-1.0};
  EXPECT_EQ(solve_lp(inf).status, LPStatus::infeasible);
  EqualityLP unb;
  unb.rows = 1;
  unb.columns = {{{0}, {1.0}}, {{0}, {-1.0}}};
  unb.cost = {0.0, -1.0};
  unb.rhs = {1.0};
  EXPECT_EQ(solve_lp(unb).status, LPStatus::unbounded);
}

TEST(Quantize, Examples) {
  const DiscreteMarginal q4 = quantize(densities::uniform(), 4);
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(q4.atoms[static_cast<std::size_t>(j)], (2 * j + 1) * kPi / 4.0, 1e-12);
  const GridDensity rho = densities::random_positive(12);
  const DiscreteMarginal q1 = quantize(rho, 1);
  ASSERT_EQ(q1.size(), 1u);
  EXPECT_NEAR(q1.atoms[0], rho.quantile(0.5), 1e-12);
  EXPECT_LE(cdf_sup_gap(quantize(densities::cosine(), 8), densities::cosine()), 1.0 / 8.0 + 1e-12);
}

TEST(SolveMmot, TwoAntipodalAtoms) {
  const CostModel w = make_ring_cost(profiles::inverse());
  const LPSolution sol = solve_mmot(uniform_atoms({0.0, kPi}), 2, w);
  EXPECT_NEAR(sol.value, 1.0, 1e-12);
  ASSERT_EQ(sol.plan.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_NEAR(sol.plan.weight(k), 0.5, 1e-12);
    EXPECT_NE(sol.support[k][0], sol.support[k][1]);
  }
  const std::vector<double> v = symmetrized_duals(sol);
  EXPECT_NEAR(2.0 * 0.5 * (v[0] + v[1]), sol.value, 1e-12);
  const LPCertificate c = certify(sol, w);
  EXPECT_GE(c.symmetric_min_slack, -1e-9);
}

TEST(SolveMmot, AntipodalLowerBound) {
  const CostModel w = make_ring_cost(profiles::linear(4.0, 1.0));
  const LPSolution sol = solve_mmot(quantize(densities::uniform(), 4), 2, w);
  EXPECT_NEAR(sol.value, 4.0, 1e-9);
  const LPCertificate c = certify(sol, w);
  EXPECT_GE(c.min_dual_slack, -1e-9);
  EXPECT_GE(c.symmetric_min_slack, -1e-9);
  EXPECT_EQ(sol.variables, 16u);
}

TEST(SolveMmot, EquilateralTriple) {
  const LPSolution sol = solve_mmot(uniform_atoms({0.0, 2 * kPi / 3, 4 * kPi / 3}), 3,
                                    make_ring_cost(profiles::inverse()));
  EXPECT_NEAR(sol.value, 2.0 * std::sqrt(3.0), 1e-9);
}

TEST(SolveMmot, CertificateAndWeakDuality) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const CostModel w = make_ring_cost(profiles::exponential(1.0, 2.0));
    const int n = 2 + static_cast<int>(seed % 2);
    const LPSolution sol = solve_mmot(quantize(densities::random_positive(seed), 6), n, w);
    const LPCertificate c = certify(sol, w);
    EXPECT_LE(c.primal_residual, 1e-9);
    EXPECT_GE(c.min_dual_slack, -1e-9);
    EXPECT_LE(c.max_support_slack, 1e-7);
    EXPECT_LE(c.dual_objective, sol.value + 1e-9);
    EXPECT_NEAR(c.dual_objective, sol.value, 1e-7);
    EXPECT_NEAR(c.symmetric_objective, sol.value, 1e-7);
    EXPECT_GE(c.symmetric_min_slack, -1e-9);
  }
}

TEST(SolveMmot, Guards) {
  const CostModel w = make_ring_cost(profiles::inverse());
  EXPECT_THROW(solve_mmot(quantize(densities::uniform(), 8), 7, w), SizeError);
  EXPECT_THROW(solve_mmot(quantize(densities::uniform(), 4), 1, w), DomainError);
  EXPECT_THROW(solve_mmot(uniform_atoms({1.0}), 2, w), InfeasibleError);
}

TEST(SolveMmot, SeidlSuboptimalForSquaredDistance) {
  const double s = 1.0 / (4.0 * kPi * kPi);
  const CostModel w = make_line_cost(profiles::power(s, 2.0), 0.0, 2.0 * kPi);
  const GridDensity uni = densities::uniform();
  const double lp = solve_mmot(quantize(uni, 4), 2, w).value;
  const double seidl = plan_cost(seidl_plan(uni, 2, 4), w);
  EXPECT_NEAR(lp, 0.0, 1e-12);
  EXPECT_NEAR(seidl, 0.5, 1e-12);
  EXPECT_EQ(check_well_ordering(w, 16).verdict, Verdict::violated);
}

TEST(SolveMmot, TruncationEquivalence) {
  const CostModel w = make_ring_cost(profiles::inverse());
  for (const GridDensity& rho : {densities::uniform(), densities::cosine()}) {
    for (int n : {2, 3}) {
      const SupportThresholds th = auto_support_thresholds(rho, w, n);
      const CostModel wh = truncate(w, th.h);
      const DiscreteMarginal q = quantize(rho, 6);
      const LPSolution full = solve_mmot(q, n, w);
      const LPSolution trunc = solve_mmot(q, n, wh);
      EXPECT_NEAR(full.value, trunc.value, 1e-7);
      for (std::size_t k = 0; k < trunc.plan.size(); ++k) {
        const auto a = trunc.plan.atom(k);
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) {
            EXPECT_LE(w(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]), th.h);
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace sceot

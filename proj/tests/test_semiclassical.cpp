#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "sceot/costs.hpp"
#include "sceot/error.hpp"
#include "sceot/measure1d.hpp"
#include "sceot/seidl.hpp"
#include "sceot/semiclassical.hpp"

namespace sceot {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Mollifier, NormalizedEvenAndSupported) {
  const Mollifier chi = Mollifier::standard();
  EXPECT_NEAR(chi.l2_norm_squared(), 1.0, 1e-10);
  EXPECT_EQ(chi(1.0), 0.0);
  EXPECT_EQ(chi(-1.2), 0.0);
  for (double t : {0.1, 0.45, 0.9}) {
    EXPECT_EQ(chi(t), chi(-t));
    EXPECT_EQ(chi.derivative(t), -chi.derivative(-t));
  }
  // Independent midpoint estimate of int |chi'|^2.
  double d = 0.0;
  const int N = 200000;
  for (int k = 0; k < N; ++k) {
    const double t = -1.0 + (k + 0.5) * 2.0 / N;
    const double e = std::exp(-1.0 / (1.0 - t * t));
    const double de = e * (-2.0 * t) / ((1.0 - t * t) * (1.0 - t * t));
    d += de * de * 2.0 / N;
  }
  EXPECT_NEAR(chi.dirichlet(), chi.normalization() * chi.normalization() * d, 1e-6 * chi.dirichlet());
}

TEST(SupportSeparation, Examples) {
  EXPECT_NEAR(support_separation(seidl_plan(densities::uniform(), 2, 4)), kPi, 1e-12);
  EXPECT_NEAR(support_separation(seidl_plan(densities::uniform(), 3, 3)), 2 * kPi / 3, 1e-12);
  DiscretePlan p(2);
  const std::vector<double> a = {1.0, 1.0};
  p.add(a, 1.0);
  EXPECT_EQ(support_separation(p), 0.0);
}

TEST(GammaEta, RegimeGuard) {
  const DiscretePlan p = seidl_plan(densities::uniform(), 2, 4);
  EXPECT_THROW(GammaEta(p, densities::uniform(), kPi / 4), RegimeError);
  EXPECT_THROW(GammaEta(p, densities::uniform(), 0.0), RegimeError);
  EXPECT_NO_THROW(GammaEta(p, densities::uniform(), 0.249 * kPi));
}

TEST(MarginalIdentity, CoarseQuantizationIsVisible) {
  // Equal-mass atoms leave gaps of order 1/(m rho) where rho is small.
  const GridDensity cosine = densities::cosine();
  const DiscretePlan p = seidl_plan(cosine, 2, 64);
  EXPECT_GT(marginal_identity_check(GammaEta(p, cosine, support_separation(p) / 8), 256).sup_error, 1e-3);
}

TEST(GammaEta, CompactSupportAndSymmetry) {
  DiscretePlan p(2);
  const std::vector<double> a = {1.0, 1.0 + kPi};
  p.add(a, 1.0);
  const GammaEta g(p, densities::uniform(), 0.2);
  const std::array<double, 2> far = {1.0 + kPi / 2, 1.0 - kPi / 2};
  EXPECT_EQ(g(far), 0.0);
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd(0.0, 0.15);
  for (int k = 0; k < 200; ++k) {
    const std::array<double, 2> x = {1.0 + nd(gen), 1.0 + kPi + nd(gen)};
    const std::array<double, 2> y = {x[1], x[0]};
    EXPECT_GE(g(x), 0.0);
    EXPECT_NEAR(g(x), g(y), 1e-12 * (1.0 + g(x)));
  }
}

TEST(GammaEta, KernelIntegratesToOne) {
  const GridDensity rho = densities::cosine();
  const GammaEta g(seidl_plan(rho, 2, 16), rho, 0.1);
  for (double y : {0.3, 2.0, 6.1}) {
    double s = 0.0;
    const int N = 8192;
    for (int k = 0; k < N; ++k) s += g.kernel(y, (k + 0.5) * 2 * kPi / N) * 2 * kPi / N;
    EXPECT_NEAR(s, 1.0, 1e-4);
  }
}

TEST(MarginalIdentity, UniformCosineAndBoundary) {
  const DiscretePlan pu = seidl_plan(densities::uniform(), 2, 64);
  const double au = support_separation(pu);
  const MarginalCheck u = marginal_identity_check(GammaEta(pu, densities::uniform(), au / 8), 256);
  EXPECT_LE(u.sup_error, 1e-4);
  EXPECT_NEAR(u.total_mass, 1.0, 1e-6);

  const GridDensity cosine = densities::cosine();
  // Cell-mass atoms: the smeared plan marginal matches rho * chi_eta^2 up to O(dx^2).
  const DiscretePlan pc = seidl_plan_on_cells(cosine, 2, 512);
  const double ac = support_separation(pc);
  EXPECT_LE(marginal_identity_check(GammaEta(pc, cosine, ac / 8), 256).sup_error, 1e-4);
  EXPECT_LE(marginal_identity_check(GammaEta(pc, cosine, 0.249 * ac), 256).sup_error, 1e-4);
}

TEST(MarginalIdentity, RandomizedDensitiesAndWidths) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> frac(0.05, 0.24);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const GridDensity rho = densities::random_positive(seed);
    const DiscretePlan p = seidl_plan_on_cells(rho, 2, 512);
    const double alpha = support_separation(p);
    EXPECT_LE(marginal_identity_check(GammaEta(p, rho, frac(gen) * alpha), 256).sup_error, 1e-4);
  }
}

TEST(Localization, ForbiddenRegionVanishes) {
  const GridDensity rho = densities::cosine();
  const DiscretePlan p = seidl_plan(rho, 3, 12);
  const GammaEta g(p, rho, support_separation(p) / 8);
  const LocalizationCheck c = support_localization_check(g, 10000, 5);
  EXPECT_EQ(c.samples, 10000u);
  EXPECT_EQ(c.nonzero, 0u);
  EXPECT_EQ(c.max_density, 0.0);
}

TEST(KineticEnergy, UniformScaling) {
  const DiscretePlan p = seidl_plan(densities::uniform(), 2, 16);
  const GammaEta g1(p, densities::uniform(), 0.2);
  const GammaEta g2(p, densities::uniform(), 0.1);
  const KineticEnergy k1 = kinetic_energy(g1, 512);
  const KineticEnergy k2 = kinetic_energy(g2, 512);
  EXPECT_EQ(k1.sqrt_term, 0.0);
  EXPECT_NEAR(k1.rhs, 2.0 * g1.mollifier().dirichlet() / (0.2 * 0.2), 1e-12 * k1.rhs);
  EXPECT_NEAR(k2.rhs / k1.rhs, 4.0, 1e-12);
  EXPECT_LE(k1.relative_mismatch, 1e-3);
  EXPECT_LE(k2.relative_mismatch, 1e-3);
}

TEST(KineticEnergy, CosineBothSides) {
  const GridDensity rho = densities::cosine();
  const DiscretePlan p = seidl_plan(rho, 2, 32);
  const KineticEnergy k = kinetic_energy(GammaEta(p, rho, 0.1), 512);
  EXPECT_GT(k.sqrt_term, 0.0);
  EXPECT_LE(k.relative_mismatch, 1e-3);
}

TEST(Periodicity, OrbitalsMatchAcrossSeam) {
  const GridDensity rho = densities::random_positive(2);
  const DiscretePlan p = seidl_plan(rho, 2, 32);
  const PeriodicityCheck c = periodicity_check(GammaEta(p, rho, support_separation(p) / 8));
  EXPECT_LE(c.value_mismatch, 1e-8);
  EXPECT_LE(c.derivative_mismatch, 1e-8);
}

TEST(BoundAt, LinearInEpsAtFixedEta) {
  const GridDensity rho = densities::cosine();
  const CostModel w = truncate(make_ring_cost(profiles::inverse()), 25.0);
  const DiscretePlan p = seidl_plan(rho, 2, 64);
  const GammaEta g(p, rho, 0.1);
  const BoundPoint a = bound_at(g, w, 1e-3);
  const BoundPoint b = bound_at(g, w, 2e-3);
  EXPECT_EQ(a.interaction, b.interaction);
  EXPECT_NEAR(b.bound - a.bound, 1e-3 * a.kinetic, 1e-12 * b.bound);
}

TEST(Interaction, ApproachesTransportCostQuadratically) {
  const GridDensity rho = densities::uniform();
  const CostModel w = truncate(make_ring_cost(profiles::inverse()), 25.0);
  const DiscretePlan p = seidl_plan(rho, 2, 64);
  const double f_ot = plan_cost(p, w);
  std::vector<double> gaps;
  for (double eta : {0.2, 0.1, 0.05}) gaps.push_back(interaction(GammaEta(p, rho, eta), w) - f_ot);
  for (double gap : gaps) EXPECT_GT(gap, 0.0);
  // gap ~ C eta^2: each halving divides by about 4.
  EXPECT_NEAR(gaps[0] / gaps[1], 4.0, 0.4);
  EXPECT_NEAR(gaps[1] / gaps[2], 4.0, 0.4);
}

TEST(UpperBoundCurve, UniformRate) {
  const CostModel w = truncate(make_ring_cost(profiles::inverse()), 25.0);
  CurveOptions o;
  o.atoms = 256;
  const UpperBoundCurve c =
      upper_bound_curve(densities::uniform(), w, 2, {1e-1, 1e-2, 1e-3, 1e-4}, o);
  ASSERT_EQ(c.rows.size(), 4u);
  EXPECT_TRUE(c.decreasing);
  EXPECT_TRUE(c.above_floor);
  EXPECT_GE(c.slope, 0.4);
  EXPECT_LE(c.slope, 0.6);
  for (const BoundPoint& r : c.rows) {
    EXPECT_LE(r.eta, c.alpha / 8 + 1e-15);
    EXPECT_NEAR(r.bound, r.eps * r.kinetic + r.interaction, 1e-12 * r.bound);
  }
}

TEST(UpperBoundCurve, DegeneratePlanRejected) {
  DiscretePlan p(2);
  const std::vector<double> a = {1.0, 1.0};
  p.add(a, 1.0);
  EXPECT_THROW(GammaEta(p, densities::uniform(), 0.1), RegimeError);
}

}  // namespace
}  // namespace sceot

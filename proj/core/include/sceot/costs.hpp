#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sceot/config.hpp"
#include "sceot/measure1d.hpp"

namespace sceot {

// Scalar profile t -> g(t), possibly +inf.
using Profile = std::function<double(double)>;

enum class InfinityLocus { none, diagonal, periodic_diagonal };

// Symmetric pairwise interaction w(x, y) with values in R u {+inf}.
class CostModel {
 public:
  using Evaluator = std::function<double(double, double)>;

  struct Traits {
    bool translation_invariant = false;
    bool periodic = false;
    InfinityLocus infinity_locus = InfinityLocus::none;
    double lo = 0.0;
    double hi = kTwoPi;
    std::optional<double> truncation;
    // False when a profile sampled on a grid was found non-convex or
    // increasing. Informational only.
    bool profile_admissible = true;
    std::string description;
  };

  // The evaluator is symmetrised: (f(x, y) + f(y, x)) / 2, with +inf absorbing.
  static CostModel symmetrized(Evaluator f, Traits traits);
  // The caller guarantees f(x, y) == f(y, x).
  static CostModel symmetric(Evaluator f, Traits traits);

  double operator()(double x, double y) const { return eval_(x, y); }

  const Traits& traits() const { return traits_; }
  bool translation_invariant() const { return traits_.translation_invariant; }
  bool periodic() const { return traits_.periodic; }
  InfinityLocus infinity_locus() const { return traits_.infinity_locus; }
  double lo() const { return traits_.lo; }
  double hi() const { return traits_.hi; }
  std::optional<double> truncation() const { return traits_.truncation; }
  const std::string& description() const { return traits_.description; }

 private:
  CostModel(Evaluator f, Traits traits) : eval_(std::move(f)), traits_(std::move(traits)) {}

  Evaluator eval_;
  Traits traits_;
};

// Checked torus distance for x, y in [0, 2pi].
double torus_distance(double x, double y);

namespace profiles {

Profile inverse(double scale = 1.0, double power = 1.0);  // scale / t^power
Profile exponential(double scale, double rate);           // scale * exp(-rate t)
Profile linear(double intercept, double slope);           // intercept - slope t
Profile power(double scale, double exponent);             // scale * t^exponent
// Piecewise-linear through (ts[i], gs[i]); constant beyond the ends.
Profile table(std::vector<double> ts, std::vector<double> gs);

}  // namespace profiles

// w = g(2 sin(|x - y| / 2)).
CostModel make_ring_cost(const Profile& g, std::string description = "ring");
// w = g(|x - y|_T).
CostModel make_torus_cost(const Profile& g, std::string description = "torus");
// w = g(sqrt((x - y)^2 + (f(x) - f(y))^2)) on the window [lo, hi].
CostModel make_graph_cost(const Profile& f, const Profile& g, double lo, double hi,
                          std::string description = "graph");
// w = g(|x - y|) on [lo, hi], no periodic identification.
CostModel make_line_cost(const Profile& g, double lo, double hi,
                         std::string description = "line");
// w = f(x) + f(y).
CostModel make_one_body_cost(const Profile& f, double lo, double hi,
                             std::string description = "one-body");
// Positive combination sum_k weights[k] * models[k].
CostModel cone_combine(const std::vector<CostModel>& models,
                       const std::vector<double>& weights);
// min(w, h).
CostModel truncate(const CostModel& w, double h);

enum class Verdict { well_ordering, violated, strictly_well_ordering };
std::string to_string(Verdict v);

enum class Pairing { nested, adjacent, outer };  // (13|24), (12|34), (14|23)
std::string to_string(Pairing p);

struct Counterexample {
  std::array<double, 4> quadruple{};
  Pairing better_pairing = Pairing::adjacent;
  double nested_value = 0.0;  // w13 + w24
  double better_value = 0.0;
};

struct WellOrderReport {
  Verdict verdict = Verdict::well_ordering;
  std::optional<Counterexample> counterexample;
  // Smallest min(w12 + w34, w14 + w23) - (w13 + w24) over checked quadruples
  // with a finite nested pairing.
  double margin = 0.0;
  std::size_t grid_size = 0;
  std::size_t random_quadruples = 0;
  std::size_t quadruples_checked = 0;
  // Distinct-point quadruples whose slack was within tolerance in strict mode.
  std::size_t inconclusive = 0;
};

// Slack min(w12 + w34, w14 + w23) - (w13 + w24) for x1 <= x2 <= x3 <= x4.
// +inf when the nested pairing and its competitor are both infinite, -inf when
// only the nested pairing is infinite.
double quadruple_slack(const CostModel& w, const std::array<double, 4>& x,
                       Pairing* better = nullptr);

// Exhaustive over grid quadruples, then `random_quadruples` seeded uniform
// samples; the default is 10 per grid point.
WellOrderReport check_well_ordering(const CostModel& w, std::size_t grid_size,
                                    bool strict = false, std::uint64_t seed = 0,
                                    std::optional<std::size_t> random_quadruples = std::nullopt);

// Convexity of g on [0, b - a] plus the shift inequality
// g(d0 + delta) + g(d1 + delta) <= g(d0) + g(d1) for d0 + d1 + delta <= b - a.
WellOrderReport check_translation_invariant_criterion(const Profile& g, double a,
                                                      double b, std::size_t grid_size);

struct Envelopes {
  std::vector<double> t;      // t_k = pi k / K, k = 1..K
  std::vector<double> lower;  // m(t_k) = inf { w : |x - y|_T <= t_k }
  std::vector<double> upper;  // M(t_k) = sup { w : |x - y|_T >= t_k }

  // Conservative lookups: m at the nearest grid point >= t, M at the nearest
  // grid point <= t (+inf below t_1).
  double m(double t) const;
  double M(double t) const;
};

Envelopes envelopes(const CostModel& w, std::size_t t_grid,
                    std::size_t x_samples = 512);

struct SupportThresholds {
  double beta = 0.0;
  double h = 0.0;
  double kappa = 0.0;
  double radius = 0.0;
  double lower_target = 0.0;  // n(n-1) M(r) / (1 - n kappa)
};

// Largest grid beta with m(beta) > n(n-1) M(r) / (1 - n kappa(rho, r)) and
// beta / 2 <= r, with h = 2 (n - 1) M(beta / 2) (1 + 1e-6).
SupportThresholds support_thresholds(const GridDensity& rho, const CostModel& w,
                                     int n, double r, std::size_t t_grid = 2048);
SupportThresholds support_thresholds(const GridDensity& rho, const Envelopes& env,
                                     int n, double r);

// Scans radii and returns the admissible thresholds with the smallest h.
SupportThresholds auto_support_thresholds(const GridDensity& rho, const CostModel& w,
                                          int n, std::size_t radii = 64,
                                          std::size_t t_grid = 2048);

}  // namespace sceot

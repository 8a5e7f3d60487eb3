#include "sceot/costs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "sceot/config.hpp"
#include "sceot/error.hpp"
#include "sceot/numeric.hpp"

namespace sceot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Samples g on [lo, hi]; throws on NaN, returns whether g looks convex and
// non-increasing where finite.
bool inspect_profile(const Profile& g, double lo, double hi, const char* what) {
  constexpr int kSamples = 257;
  std::vector<double> v(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    const double t = lo + (hi - lo) * i / (kSamples - 1);
    v[static_cast<std::size_t>(i)] = g(t);
    if (std::isnan(v[static_cast<std::size_t>(i)])) {
      throw ConstructionError(std::string(what) + " profile undefined at t = " +
                              std::to_string(t));
    }
  }
  bool ok = true;
  for (int i = 0; i + 1 < kSamples; ++i) {
    const double a = v[static_cast<std::size_t>(i)];
    const double b = v[static_cast<std::size_t>(i) + 1];
    if (std::isfinite(a) && std::isfinite(b) && b > a + 1e-12 * std::max(1.0, std::abs(a))) ok = false;
  }
  for (int i = 1; i + 1 < kSamples; ++i) {
    const double a = v[static_cast<std::size_t>(i) - 1];
    const double b = v[static_cast<std::size_t>(i)];
    const double c = v[static_cast<std::size_t>(i) + 1];
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) continue;
    if (a + c - 2.0 * b < -1e-9 * std::max(1.0, std::abs(b))) ok = false;
  }
  return ok;
}

void check_position(double x, double lo, double hi) {
  if (!(x >= lo && x <= hi)) throw DomainError("position outside the cost domain");
}

// Slack with the +inf conventions documented on quadruple_slack.
double pairing_slack(double nested, double adjacent, double outer, Pairing* better) {
  const double rhs = std::min(adjacent, outer);
  if (better != nullptr) *better = adjacent <= outer ? Pairing::adjacent : Pairing::outer;
  if (std::isinf(nested)) return std::isinf(rhs) ? kInf : -kInf;
  return rhs - nested;
}

}  // namespace

CostModel CostModel::symmetrized(Evaluator f, Traits traits) {
  Evaluator sym = [f = std::move(f)](double x, double y) {
    return 0.5 * (f(x, y) + f(y, x));
  };
  return CostModel(std::move(sym), std::move(traits));
}

CostModel CostModel::symmetric(Evaluator f, Traits traits) {
  return CostModel(std::move(f), std::move(traits));
}

double torus_distance(double x, double y) {
  check_position(x, 0.0, kTwoPi);
  check_position(y, 0.0, kTwoPi);
  return periodic_distance(x, y);
}

namespace profiles {

Profile inverse(double scale, double power) {
  return [scale, power](double t) {
    if (t <= 0.0) return kInf;
    return scale / std::pow(t, power);
  };
}

Profile exponential(double scale, double rate) {
  return [scale, rate](double t) { return scale * std::exp(-rate * t); };
}

Profile linear(double intercept, double slope) {
  return [intercept, slope](double t) { return intercept - slope * t; };
}

Profile power(double scale, double exponent) {
  return [scale, exponent](double t) { return scale * std::pow(std::abs(t), exponent); };
}

Profile table(std::vector<double> ts, std::vector<double> gs) {
  if (ts.size() != gs.size() || ts.size() < 2) {
    throw ConstructionError("table profile needs matching t and g arrays of length >= 2");
  }
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (!(ts[i + 1] > ts[i])) throw ConstructionError("table profile t must increase strictly");
  }
  return [ts = std::move(ts), gs = std::move(gs)](double t) {
    if (t <= ts.front()) return gs.front();
    if (t >= ts.back()) return gs.back();
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - ts.begin()) - 1;
    const double u = (t - ts[i]) / (ts[i + 1] - ts[i]);
    return gs[i] + u * (gs[i + 1] - gs[i]);
  };
}

}  // namespace profiles

CostModel make_ring_cost(const Profile& g, std::string description) {
  CostModel::Traits tr;
  tr.translation_invariant = true;
  tr.periodic = true;
  tr.profile_admissible = inspect_profile(g, 0.0, 2.0, "ring");
  tr.infinity_locus = std::isinf(g(0.0)) ? InfinityLocus::periodic_diagonal : InfinityLocus::none;
  tr.description = std::move(description);
  return CostModel::symmetric(
      [g](double x, double y) {
        check_position(x, 0.0, kTwoPi);
        check_position(y, 0.0, kTwoPi);
        return g(2.0 * std::sin(0.5 * periodic_distance(x, y)));
      },
      std::move(tr));
}

CostModel make_torus_cost(const Profile& g, std::string description) {
  CostModel::Traits tr;
  tr.translation_invariant = true;
  tr.periodic = true;
  tr.profile_admissible = inspect_profile(g, 0.0, std::numbers::pi, "torus");
  tr.infinity_locus = std::isinf(g(0.0)) ? InfinityLocus::periodic_diagonal : InfinityLocus::none;
  tr.description = std::move(description);
  return CostModel::symmetric(
      [g](double x, double y) {
        check_position(x, 0.0, kTwoPi);
        check_position(y, 0.0, kTwoPi);
        return g(periodic_distance(x, y));
      },
      std::move(tr));
}

CostModel make_graph_cost(const Profile& f, const Profile& g, double lo, double hi,
                          std::string description) {
  if (!(hi > lo)) throw ConstructionError("graph cost window must have lo < hi");
  const bool f_ok = inspect_profile(f, lo, hi, "graph height");
  for (int i = 0; i <= 256; ++i) {
    if (!std::isfinite(f(lo + (hi - lo) * i / 256.0))) {
      throw ConstructionError("graph height profile is not finite on the window");
    }
  }
  // The radial profile is inspected up to the largest sampled chord.
  double span = 0.0;
  for (int i = 0; i <= 256; ++i) {
    for (int j = 0; j <= 256; j += 16) {
      const double x = lo + (hi - lo) * i / 256.0;
      const double y = lo + (hi - lo) * j / 256.0;
      span = std::max(span, std::hypot(x - y, f(x) - f(y)));
    }
  }
  const bool g_ok = inspect_profile(g, 0.0, std::max(span, hi - lo), "graph radial");
  CostModel::Traits tr;
  tr.lo = lo;
  tr.hi = hi;
  tr.profile_admissible = f_ok && g_ok;
  tr.infinity_locus = std::isinf(g(0.0)) ? InfinityLocus::diagonal : InfinityLocus::none;
  tr.description = std::move(description);
  return CostModel::symmetric(
      [f, g, lo, hi](double x, double y) {
        check_position(x, lo, hi);
        check_position(y, lo, hi);
        return g(std::hypot(x - y, f(x) - f(y)));
      },
      std::move(tr));
}

CostModel make_line_cost(const Profile& g, double lo, double hi, std::string description) {
  if (!(hi > lo)) throw ConstructionError("line cost window must have lo < hi");
  CostModel::Traits tr;
  tr.translation_invariant = true;
  tr.lo = lo;
  tr.hi = hi;
  tr.profile_admissible = inspect_profile(g, 0.0, hi - lo, "line");
  tr.infinity_locus = std::isinf(g(0.0)) ? InfinityLocus::diagonal : InfinityLocus::none;
  tr.description = std::move(description);
  return CostModel::symmetric(
      [g, lo, hi](double x, double y) {
        check_position(x, lo, hi);
        check_position(y, lo, hi);
        return g(std::abs(x - y));
      },
      std::move(tr));
}

CostModel make_one_body_cost(const Profile& f, double lo, double hi, std::string description) {
  if (!(hi > lo)) throw ConstructionError("one-body cost window must have lo < hi");
  CostModel::Traits tr;
  tr.lo = lo;
  tr.hi = hi;
  tr.description = std::move(description);
  return CostModel::symmetric(
      [f, lo, hi](double x, double y) {
        check_position(x, lo, hi);
        check_position(y, lo, hi);
        return f(x) + f(y);
      },
      std::move(tr));
}

CostModel cone_combine(const std::vector<CostModel>& models, const std::vector<double>& weights) {
  if (models.empty()) throw ConstructionError("cone_combine needs at least one model");
  if (models.size() != weights.size()) {
    throw ConstructionError("cone_combine needs one weight per model");
  }
  CostModel::Traits tr;
  tr.translation_invariant = true;
  tr.periodic = true;
  tr.lo = -kInf;
  tr.hi = kInf;
  bool all_truncated = true;
  double bound = 0.0;
  std::string desc = "sum(";
  for (std::size_t k = 0; k < models.size(); ++k) {
    if (!(weights[k] > 0.0) || !std::isfinite(weights[k])) {
      throw ConstructionError("cone_combine weights must be positive and finite");
    }
    const auto& m = models[k];
    tr.translation_invariant = tr.translation_invariant && m.translation_invariant();
    tr.periodic = tr.periodic && m.periodic();
    tr.lo = std::max(tr.lo, m.lo());
    tr.hi = std::min(tr.hi, m.hi());
    tr.profile_admissible = tr.profile_admissible && m.traits().profile_admissible;
    if (m.infinity_locus() == InfinityLocus::periodic_diagonal) {
      tr.infinity_locus = InfinityLocus::periodic_diagonal;
    } else if (m.infinity_locus() == InfinityLocus::diagonal &&
               tr.infinity_locus == InfinityLocus::none) {
      tr.infinity_locus = InfinityLocus::diagonal;
    }
    if (m.truncation()) {
      bound += weights[k] * *m.truncation();
    } else {
      all_truncated = false;
    }
    if (k > 0) desc += ",";
    desc += m.description();
  }
  if (!(tr.hi > tr.lo)) throw ConstructionError("cone_combine models have disjoint domains");
  if (all_truncated) tr.truncation = bound;
  tr.description = desc + ")";
  return CostModel::symmetric(
      [models, weights](double x, double y) {
        double s = 0.0;
        for (std::size_t k = 0; k < models.size(); ++k) {
          const double v = models[k](x, y);
          if (std::isinf(v) && v > 0.0) return kInf;
          s += weights[k] * v;
        }
        return s;
      },
      std::move(tr));
}

CostModel truncate(const CostModel& w, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("truncation level must be positive");
  CostModel::Traits tr = w.traits();
  tr.infinity_locus = InfinityLocus::none;
  tr.truncation = tr.truncation ? std::min(*tr.truncation, h) : h;
  tr.description = "truncated(" + w.description() + ")";
  return CostModel::symmetric([w, h](double x, double y) { return std::min(w(x, y), h); },
                              std::move(tr));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::well_ordering: return "well_ordering";
    case Verdict::violated: return "violated";
    case Verdict::strictly_well_ordering: return "strictly_well_ordering";
  }
  return "unknown";
}

std::string to_string(Pairing p) {
  switch (p) {
    case Pairing::nested: return "13|24";
    case Pairing::adjacent: return "12|34";
    case Pairing::outer: return "14|23";
  }
  return "unknown";
}

double quadruple_slack(const CostModel& w, const std::array<double, 4>& x, Pairing* better) {
  const double nested = w(x[0], x[2]) + w(x[1], x[3]);
  const double adjacent = w(x[0], x[1]) + w(x[2], x[3]);
  const double outer = w(x[0], x[3]) + w(x[1], x[2]);
  return pairing_slack(nested, adjacent, outer, better);
}

namespace {

struct QuadrupleScan {
  double margin = kInf;
  double worst = 0.0;
  std::optional<Counterexample> counterexample;
  std::size_t checked = 0;
  std::size_t inconclusive = 0;

  void record(const std::array<double, 4>& x, double nested, double adjacent, double outer,
              bool strict, bool distinct) {
    ++checked;
    Pairing better = Pairing::adjacent;
    const double slack = pairing_slack(nested, adjacent, outer, &better);
    if (std::isfinite(slack)) margin = std::min(margin, slack);
    if (slack < -Tolerances::well_ordering_slack && slack < worst) {
      worst = slack;
      Counterexample c;
      c.quadruple = x;
      c.better_pairing = better;
      c.nested_value = nested;
      c.better_value = std::min(adjacent, outer);
      counterexample = c;
    } else if (strict && distinct && std::isfinite(nested) &&
               slack <= Tolerances::well_ordering_slack) {
      ++inconclusive;
    }
  }

  WellOrderReport report(bool strict, std::size_t grid, std::size_t random) const {
    WellOrderReport r;
    r.counterexample = counterexample;
    r.margin = margin;
    r.grid_size = grid;
    r.random_quadruples = random;
    r.quadruples_checked = checked;
    r.inconclusive = inconclusive;
    if (counterexample) {
      r.verdict = Verdict::violated;
    } else if (strict && inconclusive == 0) {
      r.verdict = Verdict::strictly_well_ordering;
    } else {
      r.verdict = Verdict::well_ordering;
    }
    return r;
  }
};

}  // namespace

WellOrderReport check_well_ordering(const CostModel& w, std::size_t grid_size, bool strict,
                                    std::uint64_t seed,
                                    std::optional<std::size_t> random_quadruples) {
  if (grid_size < 4) throw DomainError("well-ordering check needs grid_size >= 4");
  const double lo = w.lo();
  const double hi = w.hi();
  const std::size_t g = grid_size;
  std::vector<double> x(g);
  for (std::size_t i = 0; i < g; ++i) {
    x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(g - 1);
  }
  x.back() = hi;
  std::vector<double> wm(g * g);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = i; j < g; ++j) {
      wm[i * g + j] = wm[j * g + i] = w(x[i], x[j]);
    }
  }
  auto W = [&](std::size_t i, std::size_t j) { return wm[i * g + j]; };

  QuadrupleScan scan;
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = i; j < g; ++j) {
      for (std::size_t k = j; k < g; ++k) {
        for (std::size_t l = k; l < g; ++l) {
          const bool distinct = i < j && j < k && k < l;
          scan.record({x[i], x[j], x[k], x[l]}, W(i, k) + W(j, l), W(i, j) + W(k, l),
                      W(i, l) + W(j, k), strict, distinct);
        }
      }
    }
  }

  const std::size_t random = random_quadruples.value_or(
      Tolerances::random_quadruples_per_grid_point * grid_size);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  for (std::size_t s = 0; s < random; ++s) {
    std::array<double, 4> q{dist(gen), dist(gen), dist(gen), dist(gen)};
    std::sort(q.begin(), q.end());
    const bool distinct = q[0] < q[1] && q[1] < q[2] && q[2] < q[3];
    scan.record(q, w(q[0], q[2]) + w(q[1], q[3]), w(q[0], q[1]) + w(q[2], q[3]),
                w(q[0], q[3]) + w(q[1], q[2]), strict, distinct);
  }
  return scan.report(strict, grid_size, random);
}

WellOrderReport check_translation_invariant_criterion(const Profile& g, double a, double b,
                                                      std::size_t grid_size) {
  if (grid_size < 3) throw DomainError("criterion check needs grid_size >= 3");
  if (!(b > a)) throw DomainError("criterion check needs a < b");
  const double len = b - a;
  const std::size_t n = grid_size;
  std::vector<double> t(n);
  std::vector<double> gv(n);
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = len * static_cast<double>(k) / static_cast<double>(n - 1);
    gv[k] = g(t[k]);
  }
  QuadrupleScan scan;
  // Midpoint convexity. Quadruple (a, a + (t - s), a + t, a + u), u = 2t - s,
  // has nested pairing 2 g(t) and outer pairing g(s) + g(u).
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 2; k < n; k += 2) {
      const std::size_t mid = (i + k) / 2;
      const double s = t[i];
      const double tm = t[mid];
      const std::array<double, 4> q{a, a + (tm - s), a + tm, a + t[k]};
      scan.record(q, 2.0 * gv[mid], kInf, gv[i] + gv[k], false, false);
    }
  }
  // Shift inequality. Quadruple (a, a + d0, a + d0 + delta, a + d0 + delta + d1).
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; i + j < n; ++j) {
      for (std::size_t k = 1; i + j + k < n; ++k) {
        const std::array<double, 4> q{a, a + t[i], a + t[i + k], a + t[i + k + j]};
        scan.record(q, gv[i + k] + gv[j + k], gv[i] + gv[j], kInf, false, false);
      }
    }
  }
  return scan.report(false, grid_size, 0);
}

double Envelopes::m(double t) const {
  if (this->t.empty()) throw StateError("empty envelopes");
  const double step = this->t.front();
  double idx = t / step;
  const double r = std::round(idx);
  if (std::abs(idx - r) < 1e-9) idx = r;
  long k = static_cast<long>(std::ceil(idx));
  k = std::clamp<long>(k, 1, static_cast<long>(this->t.size()));
  return lower[static_cast<std::size_t>(k - 1)];
}

double Envelopes::M(double t) const {
  if (this->t.empty()) throw StateError("empty envelopes");
  const double step = this->t.front();
  double idx = t / step;
  const double r = std::round(idx);
  if (std::abs(idx - r) < 1e-9) idx = r;
  const long k = static_cast<long>(std::floor(idx));
  if (k < 1) return kInf;
  if (k > static_cast<long>(this->t.size())) return -kInf;
  return upper[static_cast<std::size_t>(k - 1)];
}

Envelopes envelopes(const CostModel& w, std::size_t t_grid, std::size_t x_samples) {
  if (!w.periodic()) throw DomainError("envelopes need a periodic cost on [0, 2pi]");
  if (t_grid < 1 || x_samples < 1) throw DomainError("envelopes need non-empty grids");
  const std::size_t K = t_grid;
  std::vector<double> lo_raw(K, kInf);
  std::vector<double> hi_raw(K, -kInf);
  double diag = kInf;
  for (std::size_t i = 0; i < x_samples; ++i) {
    const double x = kTwoPi * static_cast<double>(i) / static_cast<double>(x_samples);
    diag = std::min(diag, w(x, x));
    for (std::size_t k = 0; k < K; ++k) {
      const double d = std::numbers::pi * static_cast<double>(k + 1) / static_cast<double>(K);
      const double v1 = w(x, wrap_angle(x + d));
      const double v2 = w(x, wrap_angle(x - d));
      lo_raw[k] = std::min({lo_raw[k], v1, v2});
      hi_raw[k] = std::max({hi_raw[k], v1, v2});
    }
  }
  Envelopes env;
  env.t.resize(K);
  env.lower.resize(K);
  env.upper.resize(K);
  double running = diag;
  for (std::size_t k = 0; k < K; ++k) {
    env.t[k] = std::numbers::pi * static_cast<double>(k + 1) / static_cast<double>(K);
    running = std::min(running, lo_raw[k]);
    env.lower[k] = running;
  }
  double top = -kInf;
  for (std::size_t k = K; k-- > 0;) {
    top = std::max(top, hi_raw[k]);
    env.upper[k] = top;
  }
  return env;
}

SupportThresholds support_thresholds(const GridDensity& rho, const Envelopes& env, int n,
                                     double r) {
  if (n < 2) throw DomainError("support thresholds need n >= 2");
  const double kappa = concentration(rho, r);
  if (!(kappa < 1.0 / n)) {
    throw ConcentrationError("concentration " + std::to_string(kappa) + " at radius " +
                             std::to_string(r) + " is not below 1/n");
  }
  const double Mr = env.M(r);
  if (!std::isfinite(Mr)) {
    throw ThresholdNotFoundError("upper envelope is unbounded at the requested radius");
  }
  const double target = n * (n - 1) * Mr / (1.0 - n * kappa);
  for (std::size_t k = env.t.size(); k-- > 0;) {
    const double beta = env.t[k];
    if (beta / 2.0 > r) continue;
    if (!(env.lower[k] > target)) continue;
    const double Mh = env.M(beta / 2.0);
    if (!std::isfinite(Mh)) continue;
    SupportThresholds out;
    out.beta = beta;
    out.h = 2.0 * (n - 1) * Mh * (1.0 + Tolerances::threshold_inflation);
    out.kappa = kappa;
    out.radius = r;
    out.lower_target = target;
    return out;
  }
  throw ThresholdNotFoundError("no grid beta satisfies the support conditions");
}

SupportThresholds support_thresholds(const GridDensity& rho, const CostModel& w, int n,
                                     double r, std::size_t t_grid) {
  return support_thresholds(rho, envelopes(w, t_grid), n, r);
}

SupportThresholds auto_support_thresholds(const GridDensity& rho, const CostModel& w, int n,
                                          std::size_t radii, std::size_t t_grid) {
  const Envelopes env = envelopes(w, t_grid);
  std::optional<SupportThresholds> best;
  for (std::size_t j = 1; j <= radii; ++j) {
    const double r = std::numbers::pi * static_cast<double>(j) / static_cast<double>(radii);
    try {
      SupportThresholds s = support_thresholds(rho, env, n, r);
      if (!best || s.h < best->h) best = s;
    } catch (const ConcentrationError&) {
    } catch (const ThresholdNotFoundError&) {
    }
  }
  if (!best) throw ThresholdNotFoundError("no radius admits support thresholds");
  return *best;
}

}  // namespace sceot

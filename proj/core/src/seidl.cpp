#include "sceot/seidl.hpp"

#include <algorithm>
#include <cmath>

#include "sceot/config.hpp"
#include "sceot/error.hpp"
#include "sceot/numeric.hpp"

namespace sceot {

SeidlMap::SeidlMap(GridDensity rho, int n) : rho_(std::move(rho)), seg_(segments(rho_, n)) {}

double SeidlMap::operator()(double x) const {
  double q = rho_.cdf(x) + 1.0 / seg_.n;
  if (q >= 1.0) q -= 1.0;
  return rho_.quantile(std::clamp(q, 0.0, 1.0));
}

double SeidlMap::iterate(int k, double x) const {
  if (k < 0) throw DomainError("map iterate count must be non-negative");
  for (int i = 0; i < k; ++i) x = (*this)(x);
  return x;
}

SeidlMap build_seidl_map(const GridDensity& rho, int n) { return SeidlMap(rho, n); }

double iterate_map(const SeidlMap& T, int k, double x) { return T.iterate(k, x); }

namespace {

// Breakpoints of t -> frac(t + k/n) against the cumulative levels. Intervals
// shorter than 1e-15 are rounding slivers and are dropped.
IndexedPlan weighted_coupling(const DiscreteMarginal& marginal, int n) {
  const std::size_t m = marginal.size();
  std::vector<double> level(m + 1, 0.0);
  CompensatedSum acc;
  for (std::size_t j = 0; j < m; ++j) {
    acc.add(marginal.weights[j]);
    level[j + 1] = acc.value();
  }
  if (std::abs(level[m] - 1.0) > Tolerances::integral) throw DomainError("weights must sum to 1");
  level[m] = 1.0;
  std::vector<double> cuts{0.0, 1.0};
  for (int k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      double t = level[j] - static_cast<double>(k) / n;
      t -= std::floor(t);
      cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  IndexedPlan out{DiscretePlan(n), {}};
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::vector<int> prev;
  double run = 0.0;
  std::vector<double> coords(static_cast<std::size_t>(n));
  auto flush = [&]() {
    if (run <= 0.0) return;
    for (int k = 0; k < n; ++k) coords[static_cast<std::size_t>(k)] = marginal.atoms[static_cast<std::size_t>(prev[static_cast<std::size_t>(k)])];
    out.plan.add(coords, run);
    out.indices.push_back(prev);
  };
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double len = cuts[c + 1] - cuts[c];
    if (len <= 1e-15) continue;
    const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
    for (int k = 0; k < n; ++k) {
      double l = mid + static_cast<double>(k) / n;
      l -= std::floor(l);
      const auto it = std::upper_bound(level.begin(), level.end(), l);
      idx[static_cast<std::size_t>(k)] = static_cast<int>(std::min<std::ptrdiff_t>(it - level.begin() - 1, static_cast<std::ptrdiff_t>(m) - 1));
    }
    if (run > 0.0 && idx == prev) {
      run += len;
      continue;
    }
    flush();
    prev = idx;
    run = len;
  }
  flush();
  return out;
}

}  // namespace

IndexedPlan cyclic_quantile_coupling(const DiscreteMarginal& marginal, int n) {
  if (n < 1) throw DomainError("coupling needs n >= 1");
  const auto m = static_cast<long>(marginal.size());
  if (m < 1) throw DomainError("coupling needs a non-empty marginal");
  bool uniform = true;
  for (double w : marginal.weights) {
    if (!(w > 0.0)) throw DomainError("coupling needs positive weights");
    uniform = uniform && std::abs(w - 1.0 / static_cast<double>(m)) <= 1e-12;
  }
  if (!uniform) return weighted_coupling(marginal, n);
  const long total = m * n;
  IndexedPlan out{DiscretePlan(n), {}};
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::vector<int> prev;
  long run = 0;
  std::vector<double> coords(static_cast<std::size_t>(n));
  auto flush = [&]() {
    if (run == 0) return;
    for (int k = 0; k < n; ++k) {
      coords[static_cast<std::size_t>(k)] = marginal.atoms[static_cast<std::size_t>(prev[static_cast<std::size_t>(k)])];
    }
    out.plan.add(coords, static_cast<double>(run) / static_cast<double>(total));
    out.indices.push_back(prev);
  };
  for (long t = 0; t < total; ++t) {
    for (int k = 0; k < n; ++k) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(((t + k * m) % total) / n);
    }
    if (run > 0 && idx == prev) {
      ++run;
      continue;
    }
    flush();
    prev = idx;
    run = 1;
  }
  flush();
  return out;
}

DiscretePlan seidl_plan(const GridDensity& rho, int n, int m, bool symmetrize) {
  if (n < 2) throw DomainError("Seidl plan needs n >= 2");
  if (m < 1) throw DomainError("Seidl plan needs m >= 1");
  if (rho.has_plateau()) {
    throw DegenerateQuantileError("Seidl plan needs a density without zero plateaus");
  }
  DiscretePlan plan = cyclic_quantile_coupling(quantize(rho, m), n).plan;
  return symmetrize ? plan.symmetrized() : plan;
}

}  // namespace sceot

namespace sceot {

DiscretePlan seidl_plan_on_cells(const GridDensity& rho, int n, int cells) {
  if (n < 2) throw DomainError("Seidl plan needs n >= 2");
  if (cells < 1) throw DomainError("Seidl plan needs at least one cell");
  DiscreteMarginal mu;
  const double width = kTwoPi / cells;
  for (int j = 0; j < cells; ++j) {
    const double a = width * j;
    const double mass = rho.arc_mass(a, a + width);
    if (mass <= 0.0) continue;
    mu.atoms.push_back(a + 0.5 * width);
    mu.weights.push_back(mass);
  }
  const double total = compensated_sum(mu.weights);
  for (double& w : mu.weights) w /= total;
  return cyclic_quantile_coupling(mu, n).plan;
}

}  // namespace sceot

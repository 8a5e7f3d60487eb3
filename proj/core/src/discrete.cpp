#include "sceot/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sceot/error.hpp"
#include "sceot/numeric.hpp"

namespace sceot {

DiscreteMarginal quantize(const GridDensity& rho, int m) {
  if (m < 1) throw DomainError("quantisation needs at least one atom");
  DiscreteMarginal out;
  out.atoms.resize(static_cast<std::size_t>(m));
  out.weights.assign(static_cast<std::size_t>(m), 1.0 / m);
  for (int j = 0; j < m; ++j) {
    out.atoms[static_cast<std::size_t>(j)] = rho.quantile((j + 0.5) / m);
  }
  for (std::size_t j = 0; j + 1 < out.atoms.size(); ++j) {
    if (!(out.atoms[j + 1] > out.atoms[j])) {
      throw DegenerateQuantileError("quantised atoms are not distinct");
    }
  }
  return out;
}

void DiscretePlan::add(std::span<const double> coords, double weight) {
  if (static_cast<int>(coords.size()) != n_) {
    throw DomainError("plan atom has the wrong number of coordinates");
  }
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw DomainError("plan weights must be finite and non-negative");
  }
  coords_.insert(coords_.end(), coords.begin(), coords.end());
  weights_.push_back(weight);
}

double DiscretePlan::total_weight() const { return compensated_sum(weights_); }

DiscreteMarginal DiscretePlan::marginal(int i) const {
  if (i < 0 || i >= n_) throw DomainError("marginal index out of range");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) pts.emplace_back(atom(k)[static_cast<std::size_t>(i)], weights_[k]);
  std::sort(pts.begin(), pts.end());
  DiscreteMarginal out;
  for (const auto& [x, w] : pts) {
    if (!out.atoms.empty() && out.atoms.back() == x) {
      out.weights.back() += w;
    } else {
      out.atoms.push_back(x);
      out.weights.push_back(w);
    }
  }
  return out;
}

DiscretePlan DiscretePlan::symmetrized() const {
  DiscretePlan out(n_);
  std::vector<int> perm(static_cast<std::size_t>(n_));
  double fact = 1.0;
  for (int k = 2; k <= n_; ++k) fact *= k;
  std::vector<double> buf(static_cast<std::size_t>(n_));
  for (std::size_t k = 0; k < size(); ++k) {
    std::iota(perm.begin(), perm.end(), 0);
    const auto a = atom(k);
    do {
      for (int j = 0; j < n_; ++j) buf[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
      out.add(buf, weights_[k] / fact);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

double pair_cost(std::span<const double> x, const CostModel& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double v = w(x[i], x[j]);
      if (std::isinf(v) && v > 0.0) return std::numeric_limits<double>::infinity();
      s += v;
    }
  }
  return 2.0 * s;
}

double plan_cost(const DiscretePlan& plan, const CostModel& w) {
  CompensatedSum s;
  for (std::size_t k = 0; k < plan.size(); ++k) {
    if (plan.weight(k) == 0.0) continue;
    const double c = pair_cost(plan.atom(k), w);
    if (std::isinf(c) && c > 0.0) return std::numeric_limits<double>::infinity();
    s.add(plan.weight(k) * c);
  }
  return s.value();
}

double cdf_sup_gap(const DiscreteMarginal& marginal, const GridDensity& rho) {
  double gap = 0.0;
  double below = 0.0;
  for (std::size_t j = 0; j < marginal.size(); ++j) {
    const double f = rho.cdf(marginal.atoms[j]);
    const double above = below + marginal.weights[j];
    gap = std::max({gap, std::abs(f - below), std::abs(f - above)});
    below = above;
  }
  return gap;
}

}  // namespace sceot

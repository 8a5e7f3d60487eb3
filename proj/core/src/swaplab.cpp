#include "sceot/swaplab.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sceot/config.hpp"
#include "sceot/error.hpp"

namespace sceot {

Bipartition::Bipartition(int n, std::vector<int> members) : n_(n), members_(std::move(members)) {
  if (n_ < 1) throw DomainError("bipartition needs n >= 1");
  std::sort(members_.begin(), members_.end());
  if (static_cast<int>(members_.size()) != n_) {
    throw DomainError("bipartition must have exactly n members");
  }
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 1 || members_[i] > 2 * n_) {
      throw DomainError("bipartition index " + std::to_string(members_[i]) + " out of range");
    }
    if (i > 0 && members_[i] == members_[i - 1]) throw DomainError("bipartition has a repeated index");
  }
}

Bipartition Bipartition::odd(int n) {
  std::vector<int> m;
  for (int k = 1; k <= 2 * n; k += 2) m.push_back(k);
  return Bipartition(n, std::move(m));
}

Bipartition Bipartition::even(int n) {
  std::vector<int> m;
  for (int k = 2; k <= 2 * n; k += 2) m.push_back(k);
  return Bipartition(n, std::move(m));
}

bool Bipartition::contains(int k) const {
  return std::binary_search(members_.begin(), members_.end(), k);
}

Bipartition Bipartition::complement() const {
  std::vector<int> c;
  for (int k = 1; k <= 2 * n_; ++k) {
    if (!contains(k)) c.push_back(k);
  }
  return Bipartition(n_, std::move(c));
}

int StepFunction::max() const { return *std::max_element(values.begin(), values.end()); }
int StepFunction::min() const { return *std::min_element(values.begin(), values.end()); }

StepFunction cumulative_f(const Bipartition& a) {
  StepFunction f;
  const int len = 2 * a.n();
  f.values.assign(static_cast<std::size_t>(len) + 1, 0);
  for (int k = 1; k <= len; ++k) {
    f.values[static_cast<std::size_t>(k)] = f.values[static_cast<std::size_t>(k) - 1] + (a.contains(k) ? 1 : -1);
  }
  return f;
}

int oscillation(const StepFunction& f) { return f.max() - f.min(); }

std::vector<int> maximum_points(const StepFunction& f) {
  const int top = f.max();
  std::vector<int> pts;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    if (f.values[k] == top) pts.push_back(static_cast<int>(k));
  }
  return pts;
}

namespace {

Bipartition swap_at_maxima(const Bipartition& a, const std::vector<int>& maxima) {
  std::vector<int> m = a.members();
  for (int l : maxima) {
    // Each maximum point l lies in A and l + 1 lies in A^c.
    if (!a.contains(l) || a.contains(l + 1)) {
      throw StateError("maximum point structure violated at " + std::to_string(l));
    }
    *std::find(m.begin(), m.end(), l) = l + 1;
  }
  return Bipartition(a.n(), std::move(m));
}

}  // namespace

SwapResult swap_step(const Bipartition& a) {
  const StepFunction f = cumulative_f(a);
  if (oscillation(f) <= 1) return SwapResult{a, true, false, {}};
  if (f.max() >= 1) {
    auto maxima = maximum_points(f);
    return SwapResult{swap_at_maxima(a, maxima), false, false, std::move(maxima)};
  }
  const Bipartition c = a.complement();
  auto maxima = maximum_points(cumulative_f(c));
  return SwapResult{swap_at_maxima(c, maxima).complement(), false, true, std::move(maxima)};
}

double paired_cost(const Bipartition& a, const std::vector<double>& x, const CostModel& w) {
  if (static_cast<int>(x.size()) != 2 * a.n()) {
    throw DomainError("paired cost needs 2n positions");
  }
  std::vector<double> in;
  std::vector<double> out;
  for (int k = 1; k <= 2 * a.n(); ++k) {
    (a.contains(k) ? in : out).push_back(x[static_cast<std::size_t>(k) - 1]);
  }
  auto cn = [&w](const std::vector<double>& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i + 1; j < p.size(); ++j) s += w(p[i], p[j]);
    }
    return 2.0 * s;
  };
  return cn(in) + cn(out);
}

SwapTrace reduce_to_wellordered(const Bipartition& a, const std::vector<double>& x,
                                const CostModel& w) {
  if (!std::is_sorted(x.begin(), x.end())) throw DomainError("positions must be sorted");
  SwapTrace trace;
  trace.x = x;
  Bipartition cur = a;
  // Oscillation starts at most n and drops by one per swap.
  for (int guard = 0; guard <= 2 * a.n(); ++guard) {
    const StepFunction f = cumulative_f(cur);
    SwapResult r = swap_step(cur);
    trace.steps.push_back(TraceStep{cur, f, oscillation(f), paired_cost(cur, x, w),
                                    r.terminal ? std::vector<int>{} : r.max_points,
                                    r.used_complement});
    if (r.terminal) return trace;
    cur = r.next;
  }
  throw StateError("swap reduction did not terminate");
}

BipartitionCheck bipartition_min_check(const std::vector<double>& x, const CostModel& w) {
  if (x.size() % 2 != 0 || x.empty()) throw DomainError("need an even number of positions");
  if (x.size() > 12) throw SizeError("bipartition enumeration guard: 2n <= 12");
  if (!std::is_sorted(x.begin(), x.end())) throw DomainError("positions must be sorted");
  const int n = static_cast<int>(x.size()) / 2;
  BipartitionCheck out;
  std::vector<bool> pick(x.size(), false);
  std::fill(pick.begin(), pick.begin() + n, true);
  do {
    std::vector<int> m;
    for (std::size_t k = 0; k < pick.size(); ++k) {
      if (pick[k]) m.push_back(static_cast<int>(k) + 1);
    }
    Bipartition b(n, std::move(m));
    const double c = paired_cost(b, x, w);
    out.ranking.push_back(BipartitionRank{std::move(b), c});
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::stable_sort(out.ranking.begin(), out.ranking.end(),
                   [](const BipartitionRank& l, const BipartitionRank& r) { return l.cost < r.cost; });
  out.min_cost = out.ranking.front().cost;
  out.odd_even_cost = paired_cost(Bipartition::odd(n), x, w);
  out.odd_even_minimal =
      out.odd_even_cost <= out.min_cost + Tolerances::well_ordering_slack ||
      (std::isinf(out.odd_even_cost) && std::isinf(out.min_cost));
  return out;
}

}  // namespace sceot

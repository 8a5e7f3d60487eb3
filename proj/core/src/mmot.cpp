#include "sceot/mmot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sceot/config.hpp"
#include "sceot/error.hpp"
#include "sceot/numeric.hpp"

namespace sceot {

namespace {

struct CellGrid {
  int n;
  int m;
  std::vector<double> pair;  // m x m matrix of w

  double cost(const std::vector<int>& idx) const {
    double s = 0.0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        const double v = pair[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)] * m + idx[static_cast<std::size_t>(b)])];
        if (std::isinf(v) && v > 0.0) return std::numeric_limits<double>::infinity();
        s += v;
      }
    }
    return 2.0 * s;
  }
};

// Odometer over {0..m-1}^n in lexicographic order.
bool advance(std::vector<int>& idx, int m) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < m) return true;
    idx[k] = 0;
  }
  return false;
}

int row_of(int i, int j, int m) {
  if (i == 0) return j;
  if (j == m - 1) return -1;
  return m + (i - 1) * (m - 1) + j;
}

CellGrid make_grid(const DiscreteMarginal& marginal, int n, const CostModel& w) {
  const int m = static_cast<int>(marginal.size());
  CellGrid g{n, m, std::vector<double>(static_cast<std::size_t>(m * m))};
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      g.pair[static_cast<std::size_t>(a * m + b)] = w(marginal.atoms[static_cast<std::size_t>(a)], marginal.atoms[static_cast<std::size_t>(b)]);
    }
  }
  return g;
}

}  // namespace

LPSolution solve_mmot(const DiscreteMarginal& marginal, int n, const CostModel& w) {
  if (n < 2) throw DomainError("MMOT needs n >= 2");
  const int m = static_cast<int>(marginal.size());
  if (m < 1 || marginal.weights.size() != marginal.atoms.size()) {
    throw DomainError("MMOT needs a non-empty marginal");
  }
  if (std::abs(compensated_sum(marginal.weights) - 1.0) > Tolerances::integral) {
    throw DomainError("marginal weights must sum to 1");
  }
  const double cells = std::pow(static_cast<double>(m), n);
  if (cells > Tolerances::lp_size_guard) {
    throw SizeError("LP size guard m^n <= 2e5 exceeded (m^n = " +
                    std::to_string(static_cast<long long>(cells)) + ")");
  }
  const CellGrid grid = make_grid(marginal, n, w);

  EqualityLP lp;
  lp.rows = m + (n - 1) * (m - 1);
  lp.rhs.assign(static_cast<std::size_t>(lp.rows), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const int r = row_of(i, j, m);
      if (r >= 0) lp.rhs[static_cast<std::size_t>(r)] = marginal.weights[static_cast<std::size_t>(j)];
    }
  }
  std::vector<std::vector<int>> cell_index;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  do {
    const double c = grid.cost(idx);
    if (std::isinf(c)) continue;
    SparseColumn col;
    for (int i = 0; i < n; ++i) {
      const int r = row_of(i, idx[static_cast<std::size_t>(i)], m);
      if (r >= 0) {
        col.rows.push_back(r);
        col.values.push_back(1.0);
      }
    }
    lp.columns.push_back(std::move(col));
    lp.cost.push_back(c);
    cell_index.push_back(idx);
  } while (advance(idx, m));

  if (lp.columns.empty()) throw InfeasibleError("every cell has infinite cost");
  const LPResult res = solve_lp(lp);
  if (res.status == LPStatus::infeasible) {
    throw InfeasibleError("no finite-cost coupling of the marginal exists");
  }
  if (res.status != LPStatus::optimal) throw StateError("MMOT LP did not reach optimality");

  LPSolution sol;
  sol.status = LPStatus::optimal;
  sol.n = n;
  sol.marginal = marginal;
  sol.plan = DiscretePlan(n);
  sol.value = res.value;
  sol.iterations = res.iterations;
  sol.variables = lp.columns.size();
  std::vector<double> coords(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < res.x.size(); ++k) {
    if (res.x[k] <= 0.0) continue;
    for (int i = 0; i < n; ++i) coords[static_cast<std::size_t>(i)] = marginal.atoms[static_cast<std::size_t>(cell_index[k][static_cast<std::size_t>(i)])];
    sol.plan.add(coords, res.x[k]);
    sol.support.push_back(cell_index[k]);
  }
  sol.duals.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const int r = row_of(i, j, m);
      if (r >= 0) sol.duals[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = res.y[static_cast<std::size_t>(r)];
    }
  }
  return sol;
}

std::vector<double> symmetrized_duals(const LPSolution& sol) {
  if (sol.status != LPStatus::optimal) throw StateError("duals requested from a non-optimal solution");
  const std::size_t m = sol.marginal.size();
  std::vector<double> v(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (int i = 0; i < sol.n; ++i) v[j] += sol.duals[static_cast<std::size_t>(i)][j];
    v[j] /= sol.n;
  }
  return v;
}

LPCertificate certify(const LPSolution& sol, const CostModel& w) {
  const int n = sol.n;
  const int m = static_cast<int>(sol.marginal.size());
  const CellGrid grid = make_grid(sol.marginal, n, w);
  const std::vector<double> v = symmetrized_duals(sol);
  LPCertificate cert;
  cert.min_dual_slack = std::numeric_limits<double>::infinity();
  cert.symmetric_min_slack = std::numeric_limits<double>::infinity();
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  do {
    const double c = grid.cost(idx);
    if (std::isinf(c)) continue;
    double su = 0.0;
    double sv = 0.0;
    for (int i = 0; i < n; ++i) {
      su += sol.duals[static_cast<std::size_t>(i)][static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      sv += v[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    }
    cert.min_dual_slack = std::min(cert.min_dual_slack, c - su);
    cert.symmetric_min_slack = std::min(cert.symmetric_min_slack, c - sv);
  } while (advance(idx, m));

  for (const auto& cell : sol.support) {
    double su = 0.0;
    for (int i = 0; i < n; ++i) su += sol.duals[static_cast<std::size_t>(i)][static_cast<std::size_t>(cell[static_cast<std::size_t>(i)])];
    cert.max_support_slack = std::max(cert.max_support_slack, std::abs(grid.cost(cell) - su));
  }

  std::vector<CompensatedSum> mass(static_cast<std::size_t>(n * m));
  for (std::size_t k = 0; k < sol.support.size(); ++k) {
    for (int i = 0; i < n; ++i) mass[static_cast<std::size_t>(i * m + sol.support[k][static_cast<std::size_t>(i)])].add(sol.plan.weight(k));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      cert.primal_residual = std::max(cert.primal_residual,
                                      std::abs(mass[static_cast<std::size_t>(i * m + j)].value() - sol.marginal.weights[static_cast<std::size_t>(j)]));
    }
  }
  CompensatedSum dobj;
  CompensatedSum sobj;
  for (int j = 0; j < m; ++j) {
    const double wj = sol.marginal.weights[static_cast<std::size_t>(j)];
    for (int i = 0; i < n; ++i) dobj.add(wj * sol.duals[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    sobj.add(n * wj * v[static_cast<std::size_t>(j)]);
  }
  cert.dual_objective = dobj.value();
  cert.symmetric_objective = sobj.value();
  return cert;
}

}  // namespace sceot

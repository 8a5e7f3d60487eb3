#pragma once

#include <cstddef>
#include <vector>

namespace sceot {

struct SparseColumn {
  std::vector<int> rows;
  std::vector<double> values;
};

// min c^T x subject to A x = b, x >= 0, with A given by sparse columns.
struct EqualityLP {
  int rows = 0;
  std::vector<SparseColumn> columns;
  std::vector<double> cost;
  std::vector<double> rhs;
};

enum class LPStatus { optimal, infeasible, unbounded };

struct LPResult {
  LPStatus status = LPStatus::infeasible;
  std::vector<double> x;  // one entry per column
  std::vector<double> y;  // one dual per original (unscaled) row
  double value = 0.0;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  std::size_t refactor_every = 50;
  std::size_t max_iterations = 1000000;
};

// Dense revised simplex with Bland's rule, two phases with artificials.
// Rows are scaled to unit Euclidean norm internally; returned duals refer to
// the original rows.
LPResult solve_lp(const EqualityLP& lp, const SimplexOptions& options = {});

}  // namespace sceot

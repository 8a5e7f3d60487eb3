#pragma once

#include <cstddef>
#include <vector>

#include "sceot/costs.hpp"
#include "sceot/discrete.hpp"
#include "sceot/simplex.hpp"

namespace sceot {

struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  int n = 0;
  DiscreteMarginal marginal;
  DiscretePlan plan;                      // cells with positive mass
  std::vector<std::vector<int>> support;  // atom indices of each plan cell
  double value = 0.0;
  // duals[i][j]: potential of marginal i at atom j. The constraint for the
  // last atom of marginals 2..n is redundant and dropped; its dual is 0.
  std::vector<std::vector<double>> duals;
  std::size_t iterations = 0;
  std::size_t variables = 0;  // finite-cost cells
};

// Exact LP over the full m^n tensor of cells; +inf cells are excluded.
// Throws SizeError when m^n > 2e5 and InfeasibleError when no finite-cost
// coupling exists.
LPSolution solve_mmot(const DiscreteMarginal& marginal, int n, const CostModel& w);

// v(atom) = (1/n) sum_i duals[i][atom].
std::vector<double> symmetrized_duals(const LPSolution& sol);

struct LPCertificate {
  double primal_residual = 0.0;       // max marginal constraint violation
  double min_dual_slack = 0.0;        // min over finite cells of c - sum_i u_i
  double max_support_slack = 0.0;     // max over support cells of |c - sum_i u_i|
  double dual_objective = 0.0;        // sum_i sum_j w_j u_i(j)
  double symmetric_min_slack = 0.0;   // same as min_dual_slack for v
  double symmetric_objective = 0.0;   // n sum_j w_j v_j
};

// Re-evaluates every cell; independent of the simplex internals.
LPCertificate certify(const LPSolution& sol, const CostModel& w);

}  // namespace sceot

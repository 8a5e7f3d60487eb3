#pragma once

#include <vector>

#include "sceot/discrete.hpp"
#include "sceot/measure1d.hpp"

namespace sceot {

// T(x) = quantile(frac(cdf(x) + 1/n)). Increasing on each (d_i, d_{i+1});
// values exactly at the boundaries d_i follow the same formula but carry no
// meaning, and the plan construction never evaluates there.
class SeidlMap {
 public:
  SeidlMap(GridDensity rho, int n);

  double operator()(double x) const;
  // k-fold composition, any k >= 0.
  double iterate(int k, double x) const;

  int n() const { return seg_.n; }
  const Segmentation& segmentation() const { return seg_; }
  const GridDensity& density() const { return rho_; }

 private:
  GridDensity rho_;
  Segmentation seg_;
};

SeidlMap build_seidl_map(const GridDensity& rho, int n);
double iterate_map(const SeidlMap& T, int k, double x);

// Seidl plan on the midpoint quantisation with m atoms per marginal. Atom
// coordinates are the quantised atoms themselves. When n divides m this is
// {(x_j, T x_j, ..., T^{n-1} x_j)} with weight 1/m; otherwise it is the
// cyclic quantile coupling of the m-atom marginal, whose atoms carry weights
// that are multiples of 1/(mn).
DiscretePlan seidl_plan(const GridDensity& rho, int n, int m, bool symmetrize = false);

// Same coupling for an arbitrary uniform-weight marginal, with index tuples.
struct IndexedPlan {
  DiscretePlan plan;
  std::vector<std::vector<int>> indices;  // per plan atom, one index per marginal
};
// Non-uniform weights are coupled through the cumulative mass levels.
IndexedPlan cyclic_quantile_coupling(const DiscreteMarginal& marginal, int n);

// Cyclic coupling of the measure with atoms at the midpoints of `cells`
// equal-width cells of [0, 2pi], weighted by the exact cell masses. Unlike
// seidl_plan the atoms stay dense where rho is small.
DiscretePlan seidl_plan_on_cells(const GridDensity& rho, int n, int cells);

}  // namespace sceot

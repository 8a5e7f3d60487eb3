#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sceot/costs.hpp"
#include "sceot/measure1d.hpp"

namespace sceot {

struct DiscreteMarginal {
  std::vector<double> atoms;    // distinct, increasing
  std::vector<double> weights;  // positive, sum to 1

  std::size_t size() const { return atoms.size(); }
};

// Midpoint-quantile quantisation: atoms quantile((j - 1/2) / m), weights 1/m.
DiscreteMarginal quantize(const GridDensity& rho, int m);

// Sparse joint probability on [0, 2pi]^n. Coordinates are stored row-major,
// n per atom.
class DiscretePlan {
 public:
  DiscretePlan() = default;
  explicit DiscretePlan(int n) : n_(n) {}

  void add(std::span<const double> coords, double weight);

  int n() const { return n_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> atom(std::size_t k) const {
    return {coords_.data() + k * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }
  double weight(std::size_t k) const { return weights_[k]; }
  const std::vector<double>& weights() const { return weights_; }
  double total_weight() const;

  // Empirical marginal i as sorted (position, mass) pairs with equal
  // positions merged.
  DiscreteMarginal marginal(int i) const;

  // Every atom replaced by its n! coordinate permutations at weight / n!.
  DiscretePlan symmetrized() const;

 private:
  int n_ = 0;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

// c_n(x) = sum over ordered pairs i != j of w(x_i, x_j).
double pair_cost(std::span<const double> x, const CostModel& w);

// sum_k weight_k c_n(atom_k); +inf when a weighted atom has infinite cost.
double plan_cost(const DiscretePlan& plan, const CostModel& w);

// sup_t |F_emp(t) - F(t)| evaluated at atoms, both one-sided limits.
double cdf_sup_gap(const DiscreteMarginal& marginal, const GridDensity& rho);

}  // namespace sceot

#pragma once

#include <vector>

#include "sceot/costs.hpp"

namespace sceot {

// Balanced subset A of {1, ..., 2n} with |A| = n, stored sorted and 1-based.
class Bipartition {
 public:
  Bipartition(int n, std::vector<int> members);

  static Bipartition odd(int n);   // {1, 3, ..., 2n - 1}
  static Bipartition even(int n);  // {2, 4, ..., 2n}

  int n() const { return n_; }
  const std::vector<int>& members() const { return members_; }
  bool contains(int k) const;
  Bipartition complement() const;

  bool operator==(const Bipartition& other) const = default;

 private:
  int n_;
  std::vector<int> members_;
};

// Values f(0), ..., f(2n) of f_A(k) = |A n [1, k]| - |A^c n [1, k]|.
struct StepFunction {
  std::vector<int> values;

  int max() const;
  int min() const;
};

StepFunction cumulative_f(const Bipartition& a);
int oscillation(const StepFunction& f);
std::vector<int> maximum_points(const StepFunction& f);

struct SwapResult {
  Bipartition next;
  bool terminal = false;         // oscillation was already 1; next == input
  bool used_complement = false;  // max f_A < 1, so the swap acted on A^c
  std::vector<int> max_points;   // maximum points of the side that was swapped
};

// B(A) = A u {l_j + 1} \ {l_j} over all maximum points l_j of f_A, with the
// complement rule when max f_A < 1.
SwapResult swap_step(const Bipartition& a);

// c_n(x_A) + c_n(x_{A^c}) for sorted positions x of length 2n.
double paired_cost(const Bipartition& a, const std::vector<double>& x, const CostModel& w);

struct TraceStep {
  Bipartition set;
  StepFunction f;
  int oscillation = 0;
  double paired_cost = 0.0;
  std::vector<int> max_points;   // empty on the terminal step
  bool used_complement = false;
};

struct SwapTrace {
  std::vector<double> x;
  std::vector<TraceStep> steps;  // steps[0] is the input set

  int swaps() const { return static_cast<int>(steps.size()) - 1; }
};

SwapTrace reduce_to_wellordered(const Bipartition& a, const std::vector<double>& x,
                                const CostModel& w);

struct BipartitionRank {
  Bipartition set;
  double cost;
};

struct BipartitionCheck {
  bool odd_even_minimal = false;
  double odd_even_cost = 0.0;
  double min_cost = 0.0;
  std::vector<BipartitionRank> ranking;  // ascending cost, ties by set order
};

// Exhaustive over all C(2n, n) balanced bipartitions; requires 2n <= 12.
BipartitionCheck bipartition_min_check(const std::vector<double>& x, const CostModel& w);

}  // namespace sceot

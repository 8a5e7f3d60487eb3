#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sceot/costs.hpp"
#include "sceot/measure1d.hpp"
#include "sceot/mmot.hpp"

namespace sceot {

enum class Normalization { raw, normalized };

// Values on the periodic grid x_i = 2 pi i / G, i = 0..G-1.
struct Potential {
  std::vector<double> grid;
  std::vector<double> values;
  Normalization tag = Normalization::raw;

  std::size_t size() const { return grid.size(); }
  static Potential constant(std::size_t grid_size, double value);
};

std::vector<double> periodic_grid(std::size_t grid_size);

// u_c(x_i) = min over grid (n-1)-tuples y of c_n(x_i, y) - sum_j u(y_j).
// Ties go to the lexicographically lowest tuple. Throws PreconditionError when
// w is infinite anywhere on the grid and SizeError when G^(n-1) > 1e6.
Potential c_transform(const Potential& v, const CostModel& w, int n);

struct ConvergenceReport {
  bool converged = false;
  std::size_t iterations = 0;
  double residual = 0.0;  // sup |v - v_c| of the returned potential
  std::vector<double> residual_history;
  double initial_shift = 0.0;  // downward shift applied to an infeasible start
  bool repaired = false;       // final v <- min(v, v_c) was needed
};

struct IterationResult {
  Potential potential;
  ConvergenceReport report;
};

// v <- ((n - 1) v + v_c) / n until sup |v - v_c| <= tol or max_iters.
// An infeasible start is first shifted down by |margin| / n.
IterationResult averaged_iteration(const Potential& v0, const CostModel& w, int n,
                                   std::size_t max_iters, double tol);

struct MarginReport {
  double margin = 0.0;  // min over tuples of c_n(x) - sum_j v(x_j)
  bool sampled = false;
  std::size_t tuples = 0;
  std::vector<int> argmin;  // grid indices of the minimising tuple
};

// Exact over all grid n-tuples when G^n <= 1e7, otherwise 1e6 seeded samples.
MarginReport feasibility_margin(const Potential& v, const CostModel& w, int n,
                                std::uint64_t seed = 0);

// Exact masses of rho on the cells [x_i - pi/G, x_i + pi/G].
std::vector<double> quadrature_weights(const GridDensity& rho, std::size_t grid_size);

// n sum_i rho_i v_i with the cell masses above.
double pairing(const GridDensity& rho, const Potential& v, int n);

// transport_value - n <rho, v>. Throws PreconditionError when the grid
// margin of v is below -tol.
double duality_gap(const GridDensity& rho, const Potential& v, double transport_value,
                   int n, const CostModel& w, double tol);

// Shifts v so that n <rho, v> equals transport_value.
Potential normalize(const Potential& v, const GridDensity& rho, double transport_value, int n);

struct OscillationCheck {
  double oscillation = 0.0;
  double bound = 0.0;
  double reference = 0.0;  // v - reference is compared with the box
  double box_lower = 0.0;  // -h (n - 1) / n
  double box_upper = 0.0;  // h / n
  bool oscillation_ok = false;
  bool box_ok = false;
  bool passed() const { return oscillation_ok && box_ok; }
};

// max v - min v <= h + tol and -h (n-1)/n - tol <= v - ref <= h/n + tol.
// A normalized potential uses ref = 0; a raw one uses the centred reference.
OscillationCheck oscillation_bound_check(const Potential& v, double h, int n, double tol);

struct UntruncatedCertificate {
  double truncated_margin = 0.0;
  double full_margin = 0.0;
  double gap = 0.0;
  double gap_tol = 0.0;
  bool passed = false;
};

// Re-checks v against the full cost. transport_value is the full-cost optimum.
UntruncatedCertificate untruncate_certificate(const Potential& v, const CostModel& w_full,
                                              const CostModel& w_trunc, const GridDensity& rho,
                                              int n, double transport_value, double gap_tol,
                                              double tol);

// Periodic piecewise-linear interpolation of (atoms, values) onto the grid.
Potential interpolate_periodic(const std::vector<double>& atoms,
                               const std::vector<double>& values, std::size_t grid_size);

// Grid c-transform of the symmetrized LP duals over the quantized atoms.
Potential ctransform_extension(const LPSolution& sol, const CostModel& w, std::size_t grid_size);

struct EntropicOptions {
  double eps_min_ratio = 1e-4;  // final eps relative to the spread of c on the grid
  std::size_t sweeps_per_stage = 200;
  double tol = 1e-10;
};

// Symmetric entropic dual on the grid with eps halving from the standard
// deviation of the pair cost. Approximates the optimal potential on the
// support of rho; not feasible in general. Throws SizeError when G^n > 2e6.
Potential entropic_potential(const GridDensity& rho, const CostModel& w, int n,
                             std::size_t grid_size, const EntropicOptions& options = {});

struct CertifyOptions {
  // lp_duals interpolates the symmetrized LP duals. The fixed point reached
  // from them need not maximise <rho, v>; entropic falls back to lp_duals
  // above the entropic size guard.
  enum class Start { entropic, lp_duals };
  Start start = Start::entropic;
  std::size_t grid = 128;
  int atoms = 8;
  std::size_t max_iters = 200;
  double tol = 1e-6;
};

struct KantorovichCertificate {
  Potential potential;             // converged, feasible
  Potential normalized;            // potential shifted to n <rho, v> = lp_value
  ConvergenceReport convergence;
  double lp_value = 0.0;           // optimum of the m-atom LP for the given cost
  MarginReport margin;
  double gap = 0.0;
  double gap_tol = 0.0;
  std::optional<double> h;         // truncation level, when the cost has one
  std::optional<OscillationCheck> oscillation;
  std::optional<UntruncatedCertificate> untruncated;
  std::optional<double> full_lp_value;
  bool entropic_start = false;
  bool passed = false;
};

// Quantize, solve the LP for w_trunc, iterate from the chosen start, and
// check margin, gap and oscillation. With w_full the
// untruncated certificate is added and requires an equal full-cost LP value.
KantorovichCertificate certify_potential(const GridDensity& rho, const CostModel& w_trunc,
                                         int n, const CertifyOptions& options,
                                         const CostModel* w_full = nullptr);

}  // namespace sceot

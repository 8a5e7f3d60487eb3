#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sceot/costs.hpp"
#include "sceot/discrete.hpp"
#include "sceot/measure1d.hpp"

namespace sceot {

// chi(t) = C exp(-1 / (1 - t^2)) on (-1, 1), with C fixing int chi^2 = 1.
class Mollifier {
 public:
  static Mollifier standard();

  double operator()(double t) const;
  double derivative(double t) const;
  double normalization() const { return c_; }
  double dirichlet() const { return dirichlet_; }  // int |chi'|^2
  double l2_norm_squared() const { return l2_; }   // int chi^2, by quadrature

 private:
  Mollifier() = default;
  double c_ = 1.0;
  double dirichlet_ = 0.0;
  double l2_ = 0.0;
};

// min over plan atoms and i != j of |x_i - x_j|_T; 0 for coincident coordinates.
double support_separation(const DiscretePlan& plan);

struct GammaOptions {
  // z-table spacing eta / z_per_eta. S = rho * chi_eta^2 by 7-point
  // Gauss-Legendre on each linear piece of rho, split into parts of length
  // at most 2 eta / s_parts.
  std::size_t z_per_eta = 48;
  std::size_t s_parts = 32;
};

// Diagonal of the smeared Slater-determinant trial state built from a plan.
// Cross terms vanish in the regime eta < alpha / 4 and are not evaluated.
class GammaEta {
 public:
  // Throws RegimeError unless 0 < eta < alpha / 4.
  GammaEta(DiscretePlan plan, GridDensity rho, double eta, GammaOptions options = {},
           Mollifier chi = Mollifier::standard());

  int n() const { return plan_.n(); }
  double eta() const { return eta_; }
  double alpha() const { return alpha_; }
  const DiscretePlan& plan() const { return plan_; }
  const GridDensity& density() const { return rho_; }
  const Mollifier& mollifier() const { return chi_; }

  // Periodised chi_eta(x - z) and its x-derivative.
  double bump(double x, double z) const;
  double bump_derivative(double x, double z) const;
  // (rho~ * chi_eta^2)(z), interpolated from the table.
  double smeared(double z) const;
  // k_y(x) = rho(x) int chi~^2(x - z) chi~^2(y - z) / S(z) dz. Integrates to 1.
  double kernel(double y, double x) const;
  // B(x, y) = k_y(x) / rho(x), smooth in x.
  double overlap(double y, double x) const;
  // Gamma_eta(x, x) = sum_a p_a (1/n!) sum_sigma prod_j k_{y_a,sigma(j)}(x_j).
  double operator()(std::span<const double> x) const;
  // rho(x) int chi~^2(x - z) P(z) / S(z) dz with P the smeared plan marginals.
  double marginal_formula(double x) const;

  // Table access for quadratures.
  const std::vector<double>& z_table() const { return z_; }
  const std::vector<double>& s_table() const { return s_; }
  const std::vector<double>& p_table() const { return p_; }
  double dz() const { return dz_; }

  // phi_z(x) = sqrt(rho(x)) chi~_eta(x - z) and its derivative.
  double orbital(double x, double z) const;
  double orbital_derivative(double x, double z) const;

 private:
  DiscretePlan plan_;
  GridDensity rho_;
  double eta_;
  double alpha_;
  Mollifier chi_;
  double dz_ = 0.0;
  std::vector<double> z_;
  std::vector<double> s_;
  std::vector<double> p_;
};

struct MarginalCheck {
  std::vector<double> x;
  std::vector<double> rho_gamma;  // n int Gamma(x, x_2..x_n) by quadrature
  std::vector<double> target;     // n rho(x)
  double sup_error = 0.0;
  double total_mass = 0.0;        // int Gamma over I_n on the same grid
};

// rho_Gamma is evaluated on the periodic grid x_g = 2 pi g / G. The x_2..x_n
// integrals use Gauss-Legendre on the linear pieces of rho.
MarginalCheck marginal_identity_check(const GammaEta& gamma, std::size_t grid);

struct LocalizationCheck {
  std::size_t samples = 0;
  std::size_t nonzero = 0;
  double max_density = 0.0;
};

// Samples tuples with some |x_i - x_j|_T < alpha - 4 eta; Gamma must vanish there.
LocalizationCheck support_localization_check(const GammaEta& gamma, std::size_t samples,
                                             std::uint64_t seed);

struct KineticEnergy {
  double lhs = 0.0;  // quadrature of the orbitals
  double rhs = 0.0;  // n (int |sqrt(rho)'|^2 + eta^-2 int |chi'|^2)
  double sqrt_term = 0.0;
  double mollifier_term = 0.0;
  double relative_mismatch = 0.0;
};

// lhs = int (P / S)(z) int |phi_z'|^2 dx dz with x on the offset grid
// (g + 1/2) 2 pi / G.
KineticEnergy kinetic_energy(const GammaEta& gamma, std::size_t grid);

struct PeriodicityCheck {
  double value_mismatch = 0.0;
  double derivative_mismatch = 0.0;
};

// |phi_z(0) - phi_z(2 pi)| and the same for derivatives, over z near the seam.
PeriodicityCheck periodicity_check(const GammaEta& gamma, std::size_t samples = 64);

// int c_n(x) Gamma_eta(x, x) dx on local cells of width eta / 24 around each
// plan coordinate, weighted by exact cell masses.
double interaction(const GammaEta& gamma, const CostModel& w);

struct BoundPoint {
  double eps = 0.0;
  double eta = 0.0;
  double kinetic = 0.0;      // rhs of the kinetic identity
  double interaction = 0.0;
  double bound = 0.0;        // eps * kinetic + interaction
};

BoundPoint bound_at(const GammaEta& gamma, const CostModel& w, double eps);

struct CurveOptions {
  int atoms = 1024;
  GammaOptions gamma;
};

struct UpperBoundCurve {
  std::vector<BoundPoint> rows;  // ordered as the input eps list
  double f_ot = 0.0;             // Seidl cost on the base plan atoms
  double alpha = 0.0;
  double c = 0.0;                // eta = c eps^(1/4), capped at alpha / 8
  double pilot_constant = 0.0;   // (interaction - f_ot) / eta0^2 at eta0 = alpha / 16
  double slope = 0.0;            // least squares of log(bound - f_ot) on log eps
  double quantization_budget = 0.0;
  bool decreasing = false;       // bound falls as eps falls
  bool above_floor = false;      // bound >= f_ot - budget
};

// Throws RegimeError when the base plan has alpha = 0.
UpperBoundCurve upper_bound_curve(const GridDensity& rho, const CostModel& w, int n,
                                  const std::vector<double>& eps, const CurveOptions& options = {});

}  // namespace sceot

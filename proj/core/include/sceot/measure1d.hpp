#pragma once

#include <cstdint>
#include <vector>

namespace sceot {

// Probability density on [0, 2pi], piecewise linear between nodes.
//
// Isolated zeros are allowed. Two consecutive zero nodes would create a flat
// CDF plateau and make quantiles ambiguous; such densities are accepted but
// quantile() reports DegenerateQuantileError on the plateau level.
class GridDensity {
 public:
  // Throws DomainError unless nodes run strictly increasing from 0 to 2pi,
  // values are finite and non-negative, and the mass is 1 within 1e-12.
  GridDensity(std::vector<double> nodes, std::vector<double> values,
              bool periodic = false);

  // Rescales values to unit mass; the applied factor is written to *scale.
  static GridDensity normalized(std::vector<double> nodes,
                                std::vector<double> values, bool periodic,
                                double* scale = nullptr);

  double operator()(double x) const;
  double cdf(double x) const;
  double quantile(double q) const;

  // Periodic CDF: floor(t / 2pi) + cdf(t mod 2pi), for any real t.
  double periodic_cdf(double t) const;
  // Mass of the torus arc [a, b] with a <= b <= a + 2pi.
  double arc_mass(double a, double b) const;

  // Integral of |(sqrt rho)'|^2, exact for the piecewise-linear form.
  // Infinite when the density touches zero with non-zero slope.
  double sqrt_dirichlet_energy() const;

  // Derivative of sqrt(rho). At nodes (0 and 2pi included when periodic)
  // the average of the two one-sided slopes is used.
  double sqrt_derivative(double x) const;

  bool has_plateau() const;
  double min_value() const;

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  bool periodic() const { return periodic_; }

 private:
  std::size_t piece(double x) const;
  double piece_cdf(std::size_t i, double t) const;
  double one_sided_sqrt_slope(std::size_t i, double x) const;

  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> cumulative_;
  bool periodic_;
};

struct Segmentation {
  int n = 0;
  std::vector<double> boundaries;  // d_0 = 0 < d_1 < ... < d_n = 2pi
};

double cdf(const GridDensity& rho, double x);
double quantile(const GridDensity& rho, double q);

// Equal-mass segmentation; requires n >= 2 and no CDF plateau.
Segmentation segments(const GridDensity& rho, int n);

// Largest mass in a torus ball of radius r, 0 < r <= pi, maximised over
// 4096 equispaced centres.
double concentration(const GridDensity& rho, double r);

namespace densities {

GridDensity uniform();

// (1 + cos x) / (2pi) on an equispaced grid. The default interval count is
// odd so that pi is not a node and the interpolant stays strictly positive.
GridDensity cosine(int intervals = 1023);

// Random positive periodic density with node values in [lo, hi] before
// normalisation.
GridDensity random_positive(std::uint64_t seed, int intervals = 16,
                            double lo = 0.5, double hi = 1.5);

}  // namespace densities

}  // namespace sceot

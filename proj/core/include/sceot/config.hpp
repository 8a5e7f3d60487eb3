#pragma once

#include <cstddef>
#include <numbers>

namespace sceot {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Numerical tolerances and size guards shared by all modules.
struct Tolerances {
  static constexpr double integral = 1e-12;
  static constexpr double segment_mass = 1e-10;
  static constexpr double quantile = 1e-12;
  static constexpr double inverse_consistency = 1e-9;
  static constexpr std::size_t concentration_windows = 4096;

  static constexpr double well_ordering_slack = 1e-9;
  static constexpr std::size_t random_quadruples_per_grid_point = 10;

  static constexpr double lp_feasibility = 1e-9;
  static constexpr double lp_optimality = 1e-9;
  static constexpr double lp_certificate = 1e-7;
  static constexpr double lp_size_guard = 2e5;

  static constexpr double ctransform_size_guard = 1e6;
  static constexpr double exact_margin_guard = 1e7;
  static constexpr double entropic_size_guard = 2e6;
  static constexpr std::size_t margin_samples = 1000000;

  static constexpr double threshold_inflation = 1e-6;
  static constexpr double mollifier_norm = 1e-10;

  // Grid plus quantization budget for Kantorovich duality gaps.
  static constexpr double gap_tol(std::size_t grid, std::size_t atoms) {
    return 10.0 / static_cast<double>(grid) + 10.0 / static_cast<double>(atoms);
  }
};

}  // namespace sceot

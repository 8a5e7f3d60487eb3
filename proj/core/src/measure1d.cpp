#include "sceot/measure1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "sceot/config.hpp"
#include "sceot/error.hpp"
#include "sceot/numeric.hpp"

namespace sceot {

namespace {

constexpr double kEndpointSnap = 1e-12;

double raw_mass(const std::vector<double>& nodes,
                const std::vector<double>& values) {
  CompensatedSum s;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    s.add(0.5 * (nodes[i + 1] - nodes[i]) * (values[i] + values[i + 1]));
  }
  return s.value();
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

GridDensity::GridDensity(std::vector<double> nodes, std::vector<double> values,
                         bool periodic)
    : nodes_(std::move(nodes)), values_(std::move(values)), periodic_(periodic) {
  if (nodes_.size() < 2) throw DomainError("density needs at least two nodes");
  if (nodes_.size() != values_.size()) {
    throw DomainError("density nodes and values differ in length");
  }
  if (std::abs(nodes_.front()) > kEndpointSnap) {
    throw DomainError("first density node must be 0, got " + fmt_double(nodes_.front()));
  }
  if (std::abs(nodes_.back() - kTwoPi) > kEndpointSnap) {
    throw DomainError("last density node must be 2pi, got " + fmt_double(nodes_.back()));
  }
  nodes_.front() = 0.0;
  nodes_.back() = kTwoPi;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    if (!(nodes_[i + 1] > nodes_[i])) {
      throw DomainError("density nodes must be strictly increasing (index " +
                        std::to_string(i + 1) + ")");
    }
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw DomainError("density value at index " + std::to_string(i) +
                        " is negative or not finite");
    }
  }
  if (periodic_ && std::abs(values_.front() - values_.back()) > Tolerances::integral) {
    throw DomainError("periodic density must take equal values at 0 and 2pi");
  }
  cumulative_.assign(nodes_.size(), 0.0);
  CompensatedSum s;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    s.add(0.5 * (nodes_[i + 1] - nodes_[i]) * (values_[i] + values_[i + 1]));
    cumulative_[i + 1] = s.value();
  }
  const double mass = cumulative_.back();
  if (std::abs(mass - 1.0) > Tolerances::integral) {
    throw DomainError("density mass is " + fmt_double(mass) + ", expected 1");
  }
}

GridDensity GridDensity::normalized(std::vector<double> nodes,
                                    std::vector<double> values, bool periodic,
                                    double* scale) {
  if (nodes.size() != values.size() || nodes.size() < 2) {
    throw DomainError("density nodes and values must have equal length >= 2");
  }
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw DomainError("density values must be finite and non-negative");
    }
  }
  const double mass = raw_mass(nodes, values);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw DomainError("density has zero or non-finite mass");
  }
  const double factor = 1.0 / mass;
  for (double& v : values) v *= factor;
  if (scale != nullptr) *scale = factor;
  return GridDensity(std::move(nodes), std::move(values), periodic);
}

std::size_t GridDensity::piece(double x) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  std::size_t i = (it == nodes_.begin()) ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return std::min(i, nodes_.size() - 2);
}

double GridDensity::piece_cdf(std::size_t i, double t) const {
  const double len = nodes_[i + 1] - nodes_[i];
  const double a = values_[i];
  const double s = (values_[i + 1] - values_[i]) / len;
  return a * t + 0.5 * s * t * t;
}

double GridDensity::operator()(double x) const {
  if (!(x >= 0.0 && x <= kTwoPi)) throw DomainError("density evaluated outside [0, 2pi]");
  const std::size_t i = piece(x);
  const double len = nodes_[i + 1] - nodes_[i];
  const double t = (x - nodes_[i]) / len;
  return values_[i] + t * (values_[i + 1] - values_[i]);
}

double GridDensity::cdf(double x) const {
  if (!(x >= 0.0 && x <= kTwoPi)) {
    throw DomainError("cdf argument " + fmt_double(x) + " outside [0, 2pi]");
  }
  if (x == kTwoPi) return 1.0;
  const std::size_t i = piece(x);
  const double raw = cumulative_[i] + piece_cdf(i, x - nodes_[i]);
  return std::clamp(raw / cumulative_.back(), 0.0, 1.0);
}

double GridDensity::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("quantile level " + fmt_double(q) + " outside [0, 1]");
  }
  const std::size_t pieces = nodes_.size() - 1;
  auto zero_piece = [&](std::size_t j) {
    return j < pieces && values_[j] == 0.0 && values_[j + 1] == 0.0;
  };
  const double target = q * cumulative_.back();
  auto it = std::lower_bound(cumulative_.begin() + 1, cumulative_.end(), target);
  std::size_t i = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  i = std::min(i, pieces - 1);

  const bool at_start = cumulative_[i] == target;
  const bool at_end = cumulative_[i + 1] == target;
  if (zero_piece(i) || (at_start && i > 0 && zero_piece(i - 1)) ||
      (at_end && zero_piece(i + 1))) {
    throw DegenerateQuantileError("cdf is flat at level " + fmt_double(q));
  }
  if (q == 1.0) return kTwoPi;

  const double len = nodes_[i + 1] - nodes_[i];
  const double a = values_[i];
  const double s = (values_[i + 1] - values_[i]) / len;
  const double r = target - cumulative_[i];
  const double disc = std::max(0.0, a * a + 2.0 * s * r);
  const double denom = a + std::sqrt(disc);
  double t = denom > 0.0 ? 2.0 * r / denom : 0.0;
  t = std::clamp(t, 0.0, len);
  for (int k = 0; k < 3; ++k) {
    const double f = piece_cdf(i, t) - r;
    const double fp = a + s * t;
    if (!(fp > 0.0)) break;
    const double next = std::clamp(t - f / fp, 0.0, len);
    if (next == t) break;
    t = next;
  }
  return std::min(nodes_[i] + t, kTwoPi);
}

double GridDensity::periodic_cdf(double t) const {
  const double k = std::floor(t / kTwoPi);
  const double r = std::clamp(t - k * kTwoPi, 0.0, kTwoPi);
  return k + cdf(r);
}

double GridDensity::arc_mass(double a, double b) const {
  return periodic_cdf(b) - periodic_cdf(a);
}

double GridDensity::sqrt_dirichlet_energy() const {
  CompensatedSum s;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const double a = values_[i];
    const double b = values_[i + 1];
    if (a == b) continue;
    if (a == 0.0 || b == 0.0) return std::numeric_limits<double>::infinity();
    const double len = nodes_[i + 1] - nodes_[i];
    s.add((b - a) * std::log(b / a) / (4.0 * len));
  }
  return s.value();
}

double GridDensity::one_sided_sqrt_slope(std::size_t i, double x) const {
  const double len = nodes_[i + 1] - nodes_[i];
  const double s = (values_[i + 1] - values_[i]) / len;
  if (s == 0.0) return 0.0;
  const double t = std::clamp((x - nodes_[i]) / len, 0.0, 1.0);
  const double v = values_[i] + t * (values_[i + 1] - values_[i]);
  if (v <= 0.0) return std::numeric_limits<double>::infinity();
  return s / (2.0 * std::sqrt(v));
}

double GridDensity::sqrt_derivative(double x) const {
  if (!(x >= 0.0 && x <= kTwoPi)) throw DomainError("derivative outside [0, 2pi]");
  const std::size_t last = nodes_.size() - 2;
  if (x == 0.0 || x == kTwoPi) {
    const double right = one_sided_sqrt_slope(0, 0.0);
    const double left = one_sided_sqrt_slope(last, kTwoPi);
    if (!periodic_) return x == 0.0 ? right : left;
    return 0.5 * (left + right);
  }
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
  if (it != nodes_.end() && *it == x) {
    const std::size_t k = static_cast<std::size_t>(it - nodes_.begin());
    return 0.5 * (one_sided_sqrt_slope(k - 1, x) + one_sided_sqrt_slope(k, x));
  }
  return one_sided_sqrt_slope(piece(x), x);
}

bool GridDensity::has_plateau() const {
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
    if (values_[i] == 0.0 && values_[i + 1] == 0.0) return true;
  }
  return false;
}

double GridDensity::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double cdf(const GridDensity& rho, double x) { return rho.cdf(x); }

double quantile(const GridDensity& rho, double q) { return rho.quantile(q); }

Segmentation segments(const GridDensity& rho, int n) {
  if (n < 2) throw DomainError("segmentation needs n >= 2");
  if (rho.has_plateau()) {
    throw DegenerateQuantileError("segmentation needs a density without zero plateaus");
  }
  Segmentation seg;
  seg.n = n;
  seg.boundaries.resize(static_cast<std::size_t>(n) + 1);
  seg.boundaries.front() = 0.0;
  seg.boundaries.back() = kTwoPi;
  for (int i = 1; i < n; ++i) {
    seg.boundaries[static_cast<std::size_t>(i)] =
        rho.quantile(static_cast<double>(i) / static_cast<double>(n));
  }
  for (int i = 0; i < n; ++i) {
    const double a = seg.boundaries[static_cast<std::size_t>(i)];
    const double b = seg.boundaries[static_cast<std::size_t>(i) + 1];
    if (!(b > a)) throw DegenerateQuantileError("segment boundaries not strictly increasing");
    const double mass = rho.cdf(b) - rho.cdf(a);
    if (std::abs(mass - 1.0 / n) > Tolerances::segment_mass) {
      throw DegenerateQuantileError("segment mass deviates from 1/n");
    }
  }
  return seg;
}

double concentration(const GridDensity& rho, double r) {
  if (!(r > 0.0 && r <= std::numbers::pi)) {
    throw DomainError("concentration radius must lie in (0, pi]");
  }
  const std::size_t windows = Tolerances::concentration_windows;
  double best = 0.0;
  for (std::size_t k = 0; k < windows; ++k) {
    const double c = kTwoPi * static_cast<double>(k) / static_cast<double>(windows);
    best = std::max(best, rho.arc_mass(c - r, c + r));
  }
  return std::clamp(best, 0.0, 1.0);
}

namespace densities {

GridDensity uniform() {
  return GridDensity({0.0, kTwoPi}, {1.0 / kTwoPi, 1.0 / kTwoPi}, true);
}

GridDensity cosine(int intervals) {
  if (intervals < 2) throw DomainError("cosine density needs at least two intervals");
  std::vector<double> nodes(static_cast<std::size_t>(intervals) + 1);
  std::vector<double> values(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    nodes[k] = kTwoPi * static_cast<double>(k) / intervals;
    values[k] = (1.0 + std::cos(nodes[k])) / kTwoPi;
  }
  nodes.back() = kTwoPi;
  values.back() = values.front();
  return GridDensity::normalized(std::move(nodes), std::move(values), true);
}

GridDensity random_positive(std::uint64_t seed, int intervals, double lo, double hi) {
  if (intervals < 1) throw DomainError("random density needs at least one interval");
  if (!(lo > 0.0 && hi >= lo)) throw DomainError("random density needs 0 < lo <= hi");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> nodes(static_cast<std::size_t>(intervals) + 1);
  std::vector<double> values(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    nodes[k] = kTwoPi * static_cast<double>(k) / intervals;
    values[k] = dist(gen);
  }
  nodes.back() = kTwoPi;
  values.back() = values.front();
  return GridDensity::normalized(std::move(nodes), std::move(values), true);
}

}  // namespace densities

}  // namespace sceot

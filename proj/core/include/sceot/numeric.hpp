#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sceot/config.hpp"

namespace sceot {

// Neumaier compensated summation. Result depends only on insertion order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(const std::vector<double>& xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

// Maps any real to [0, 2pi).
inline double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

// Distance on R / 2piZ, in [0, pi]. No domain check.
inline double periodic_distance(double x, double y) {
  const double d = std::abs(x - y);
  const double r = std::fmod(d, kTwoPi);
  return std::min(r, kTwoPi - r);
}

}  // namespace sceot

#pragma once

#include <span>
#include <vector>

namespace wgan {

// Quantile interval with half-open membership (lower, upper]. A degenerate
// interval (all samples equal) covers exactly its single point.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  double alpha = 0.0;

  bool contains(double t) const {
    if (lower == upper) return t == upper;
    return lower < t && t <= upper;
  }
};

struct CoverageReport {
  long total = 0;
  long covered = 0;
  double rate = 0.0;
  std::vector<char> flags;  // per-observation covered flag
};

// Fraction of samples <= x.
double empirical_cdf(std::span<const double> samples, double x);

// Interval between the ceil(N*alpha/2)-th and ceil(N*(1-alpha/2))-th order
// statistics (no interpolation). Requires at least 2 samples.
Interval quantile_interval(std::span<const double> samples, double alpha);

CoverageReport coverage(std::span<const Interval> intervals,
                        std::span<const double> truths);

// Convenience for a shared interval applied to every truth.
CoverageReport coverage(const Interval& interval, std::span<const double> truths);

}  // namespace wgan

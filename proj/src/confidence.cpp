#include "wgan/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wgan {

namespace {

// ceil with a guard against the product landing a few ulps above an integer.
long robust_ceil(double x) { return static_cast<long>(std::ceil(x - 1e-9)); }

}  // namespace

double empirical_cdf(std::span<const double> samples, double x) {
  if (samples.empty()) throw std::invalid_argument("empirical_cdf of an empty sample set");
  long count = 0;
  for (double s : samples)
    if (s <= x) ++count;
  return static_cast<double>(count) / static_cast<double>(samples.size());
}

Interval quantile_interval(std::span<const double> samples, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  const long n = static_cast<long>(samples.size());
  if (n < 2) throw std::invalid_argument("quantile_interval needs at least 2 samples");

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  const long lo = std::clamp(robust_ceil(static_cast<double>(n) * alpha / 2.0), 1L, n);
  const long hi = std::clamp(robust_ceil(static_cast<double>(n) * (1.0 - alpha / 2.0)), 1L, n);

  Interval out;
  out.lower = sorted[static_cast<std::size_t>(lo - 1)];
  out.upper = sorted[static_cast<std::size_t>(hi - 1)];
  out.alpha = alpha;
  return out;
}

CoverageReport coverage(std::span<const Interval> intervals,
                        std::span<const double> truths) {
  if (intervals.size() != truths.size())
    throw std::invalid_argument("coverage: interval/truth count mismatch");
  CoverageReport report;
  report.total = static_cast<long>(truths.size());
  report.flags.reserve(truths.size());
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const bool in = intervals[i].contains(truths[i]);
    report.flags.push_back(in ? 1 : 0);
    if (in) ++report.covered;
  }
  report.rate = report.total == 0
                    ? 0.0
                    : static_cast<double>(report.covered) / static_cast<double>(report.total);
  return report;
}

CoverageReport coverage(const Interval& interval, std::span<const double> truths) {
  std::vector<Interval> intervals(truths.size(), interval);
  return coverage(std::span<const Interval>(intervals), truths);
}

}  // namespace wgan

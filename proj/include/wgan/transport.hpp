#pragma once

#include <Eigen/Core>

#include <functional>

#include "wgan/rng.hpp"

namespace wgan {

// Point clouds are row-per-point matrices with uniform weight 1/n.
// exact_w1 solves the assignment problem on the Euclidean cost matrix
// (cubic-time shortest augmenting path), so results are exact up to
// floating-point rounding. Practical ceiling is around n = 2000, where the
// dense solve takes tens of seconds.
double exact_w1(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Test oracle: minimum average cost over all n! pairings. Refuses n > 8.
double brute_force_w1(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct TransportEstimate {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 when repetitions == 1
  int repetitions = 0;
  int batch_size = 0;
};

// Draws `repetitions` independent batch pairs from the two sources and
// averages exact_w1 over them. Each repetition uses its own substream of
// rng so the estimate is deterministic.
using BatchSource = std::function<Eigen::MatrixXd(int count, Rng& rng)>;
TransportEstimate ot_report(const BatchSource& real_source,
                            const BatchSource& generated_source, int batch_size,
                            int repetitions, Rng& rng);

}  // namespace wgan

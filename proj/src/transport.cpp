#include "wgan/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace wgan {

namespace {

void check_clouds(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() == 0 || b.rows() == 0)
    throw std::invalid_argument("point clouds must be nonempty");
  if (a.rows() != b.rows())
    throw std::invalid_argument("point clouds must have equal size");
  if (a.cols() != b.cols())
    throw std::invalid_argument("point clouds must share a dimension");
  if (!a.allFinite() || !b.allFinite())
    throw std::invalid_argument("point clouds must be finite");
}

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const auto n = a.rows();
  Eigen::MatrixXd cost(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      cost(i, j) = (a.row(i) - b.row(j)).norm();
  return cost;
}

// Shortest-augmenting-path assignment (Jonker-Volgenant / Hungarian family).
// Returns the minimum total cost of a perfect matching on a square matrix.
double solve_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<int> match(static_cast<std::size_t>(n) + 1, 0);  // column -> row
  std::vector<int> path(static_cast<std::size_t>(n) + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> min_slack(static_cast<std::size_t>(n) + 1, kInf);
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = match[static_cast<std::size_t>(j0)];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                           v[static_cast<std::size_t>(j)];
        if (cur < min_slack[static_cast<std::size_t>(j)]) {
          min_slack[static_cast<std::size_t>(j)] = cur;
          path[static_cast<std::size_t>(j)] = j0;
        }
        if (min_slack[static_cast<std::size_t>(j)] < delta) {
          delta = min_slack[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          min_slack[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = path[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  double total = 0.0;
  for (int j = 1; j <= n; ++j)
    total += cost(match[static_cast<std::size_t>(j)] - 1, j - 1);
  return total;
}

}  // namespace

double exact_w1(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  check_clouds(a, b);
  const auto n = a.rows();
  if (n == 1) return (a.row(0) - b.row(0)).norm();
  return solve_assignment(pairwise_distances(a, b)) / static_cast<double>(n);
}

double brute_force_w1(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  check_clouds(a, b);
  const int n = static_cast<int>(a.rows());
  if (n > 8) throw std::invalid_argument("brute_force_w1 refuses clouds larger than 8");
  const Eigen::MatrixXd cost = pairwise_distances(a, b);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += cost(i, perm[static_cast<std::size_t>(i)]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(n);
}

TransportEstimate ot_report(const BatchSource& real_source,
                            const BatchSource& generated_source, int batch_size,
                            int repetitions, Rng& rng) {
  if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(repetitions));
  const std::uint64_t stream_root = rng.next_u64();
  for (int r = 0; r < repetitions; ++r) {
    Rng sub = Rng::substream(stream_root, "ot-rep-" + std::to_string(r));
    Eigen::MatrixXd real = real_source(batch_size, sub);
    Eigen::MatrixXd fake = generated_source(batch_size, sub);
    values.push_back(exact_w1(real, fake));
  }

  TransportEstimate est;
  est.repetitions = repetitions;
  est.batch_size = batch_size;
  est.mean = std::accumulate(values.begin(), values.end(), 0.0) /
             static_cast<double>(repetitions);
  if (repetitions > 1) {
    double ss = 0.0;
    for (double x : values) ss += (x - est.mean) * (x - est.mean);
    est.std = std::sqrt(ss / static_cast<double>(repetitions - 1));
  }
  return est;
}

}  // namespace wgan

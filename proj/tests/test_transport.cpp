#include <doctest.h>

#include <cmath>

#include "wgan/rng.hpp"
#include "wgan/transport.hpp"

using namespace wgan;
using Eigen::MatrixXd;

namespace {

MatrixXd random_cloud(int n, int d, Rng& rng, double scale = 1.0) {
  MatrixXd m(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = scale * (2.0 * rng.uniform01() - 1.0);
  return m;
}

}  // namespace

TEST_CASE("exact_w1: identity, singleton and 1-d example") {
  Rng rng(3);
  MatrixXd a = random_cloud(12, 3, rng);
  CHECK(exact_w1(a, a) == doctest::Approx(0.0).epsilon(1e-12));

  MatrixXd p(1, 2), q(1, 2);
  p << 0.0, 0.0;
  q << 3.0, 4.0;
  CHECK(exact_w1(p, q) == doctest::Approx(5.0));

  MatrixXd u(2, 1), v(2, 1);
  u << 0.0, 2.0;
  v << 1.0, 3.0;
  CHECK(exact_w1(u, v) == doctest::Approx(1.0));
}

TEST_CASE("exact_w1: errors") {
  MatrixXd a(2, 2), b(3, 2);
  a.setZero();
  b.setZero();
  CHECK_THROWS(exact_w1(a, b));
  CHECK_THROWS(exact_w1(MatrixXd(0, 2), MatrixXd(0, 2)));
}

TEST_CASE("brute_force_w1: refuses large clouds, matches trivial cases") {
  Rng rng(4);
  MatrixXd a = random_cloud(9, 2, rng);
  CHECK_THROWS(brute_force_w1(a, a));

  MatrixXd p(1, 3), q(1, 3);
  p << 1.0, 2.0, 2.0;
  q << 1.0, 2.0, 4.0;
  CHECK(brute_force_w1(p, q) == doctest::Approx(2.0));

  // shuffled copy pairs up at zero cost
  MatrixXd c = random_cloud(6, 2, rng);
  MatrixXd shuffled(6, 2);
  std::vector<int> order{3, 0, 5, 1, 4, 2};
  for (int i = 0; i < 6; ++i) shuffled.row(i) = c.row(order[static_cast<std::size_t>(i)]);
  CHECK(brute_force_w1(c, shuffled) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("exact_w1 equals brute force on random pairs") {
  Rng rng(2024);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(rng.below(6));  // 2..7
    const int d = std::vector<int>{1, 2, 5}[static_cast<std::size_t>(rng.below(3))];
    MatrixXd a = random_cloud(n, d, rng);
    MatrixXd b = random_cloud(n, d, rng);
    CHECK(std::abs(exact_w1(a, b) - brute_force_w1(a, b)) <= 1e-9);
  }
}

TEST_CASE("metric axioms on random triples") {
  Rng rng(55);
  for (int t = 0; t < 25; ++t) {
    const int n = 3 + static_cast<int>(rng.below(10));
    const int d = 1 + static_cast<int>(rng.below(4));
    MatrixXd a = random_cloud(n, d, rng);
    MatrixXd b = random_cloud(n, d, rng);
    MatrixXd c = random_cloud(n, d, rng);
    const double ab = exact_w1(a, b);
    const double ba = exact_w1(b, a);
    const double ac = exact_w1(a, c);
    const double cb = exact_w1(c, b);
    CHECK(std::abs(ab - ba) <= 1e-12);
    CHECK(ab <= ac + cb + 1e-9);
    CHECK(exact_w1(a, a) <= 1e-12);
  }
}

TEST_CASE("translation: cost bounded by the shift norm, exact for singletons") {
  Rng rng(77);
  MatrixXd a = random_cloud(15, 3, rng);
  Eigen::RowVector3d t(0.3, -0.4, 1.2);
  MatrixXd b = a.rowwise() + t;
  CHECK(exact_w1(a, b) <= t.norm() + 1e-12);
  MatrixXd single = random_cloud(1, 3, rng);
  MatrixXd moved = single.rowwise() + t;
  CHECK(exact_w1(single, moved) == doctest::Approx(t.norm()));
}

TEST_CASE("ot_report: memorizing generator gives zero mean and std") {
  Rng rng(8);
  MatrixXd bank = random_cloud(40, 2, rng);
  BatchSource source = [&](int count, Rng&) { return bank.topRows(count); };
  Rng seed_rng(1);
  TransportEstimate est = ot_report(source, source, 20, 5, seed_rng);
  CHECK(est.mean == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(est.std == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(est.repetitions == 5);
  CHECK(est.batch_size == 20);
}

TEST_CASE("ot_report: single repetition reports zero std; deterministic") {
  Rng rng(9);
  MatrixXd bank_a = random_cloud(64, 2, rng);
  MatrixXd bank_b = random_cloud(64, 2, rng, 2.0);
  BatchSource sa = [&](int count, Rng& r) {
    MatrixXd out(count, 2);
    for (int i = 0; i < count; ++i) out.row(i) = bank_a.row(static_cast<int>(r.below(64)));
    return out;
  };
  BatchSource sb = [&](int count, Rng& r) {
    MatrixXd out(count, 2);
    for (int i = 0; i < count; ++i) out.row(i) = bank_b.row(static_cast<int>(r.below(64)));
    return out;
  };
  Rng r1(123), r2(123);
  TransportEstimate once = ot_report(sa, sb, 16, 1, r1);
  CHECK(once.std == 0.0);
  TransportEstimate again = ot_report(sa, sb, 16, 1, r2);
  CHECK(once.mean == again.mean);
}

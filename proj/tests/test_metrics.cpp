#include "oracles.hpp"
#include "wstrank/metrics.hpp"
#include "wstrank/simgen.hpp"

#include <doctest.h>

using namespace wstrank;

namespace {

Ranking ranks(std::initializer_list<int> r) {
  Eigen::VectorXi v(static_cast<Eigen::Index>(r.size()));
  int i = 0;
  for (int x : r) v[i++] = x;
  return Ranking(v);
}

ProbabilityMatrix three_player() {
  // 1-based p*_21 = 0.9, p*_31 = 0.6, p*_32 = 0.55.
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(3, 3, 0.5);
  auto set = [&](int i, int j, double v) {
    p(i, j) = v;
    p(j, i) = 1 - v;
  };
  set(1, 0, 0.9);
  set(2, 0, 0.6);
  set(2, 1, 0.55);
  return ProbabilityMatrix(p);
}

}  // namespace

TEST_CASE("kendall_tau examples") {
  CHECK(kendall_tau(ranks({1, 2, 3, 4}), ranks({1, 2, 3, 4})) == 0);
  CHECK(kendall_tau(ranks({1, 2, 3, 4}), ranks({4, 3, 2, 1})) == 6);
  CHECK_THROWS_AS(kendall_tau(ranks({1, 2}), ranks({1, 2, 3})), InvalidArgument);
}

TEST_CASE("kendall_tau matches the quadratic oracle") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> size(1, 50);
  for (int t = 0; t < 200; ++t) {
    const int n = size(rng);
    const auto a = oracle::random_ranking(n, rng);
    const auto b = oracle::random_ranking(n, rng);
    CHECK(kendall_tau(a, b) == oracle::kendall_brute(a, b));
  }
}

TEST_CASE("kendall_tau is a metric") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 100; ++t) {
    const int n = 12;
    const auto a = oracle::random_ranking(n, rng);
    const auto b = oracle::random_ranking(n, rng);
    const auto c = oracle::random_ranking(n, rng);
    CHECK(kendall_tau(a, b) == kendall_tau(b, a));
    CHECK((kendall_tau(a, b) == 0) == (a == b));
    CHECK(kendall_tau(a, c) <= kendall_tau(a, b) + kendall_tau(b, c));
    CHECK(kendall_tau(a, b) + kendall_tau(a.reversed(), b) == n * (n - 1) / 2);
  }
}

TEST_CASE("error_rate conventions") {
  CHECK(error_rate(0, 10, ErrorConvention::kPairs) == 0.0);
  CHECK(error_rate(0, 10, ErrorConvention::kPaper) == 0.0);
  CHECK(error_rate(6, 4, ErrorConvention::kPairs) == 1.0);
  CHECK(error_rate(6, 4, ErrorConvention::kPaper) == 0.25);
  std::mt19937_64 rng(53);
  for (int t = 0; t < 50; ++t) {
    std::uniform_int_distribution<int> tau(1, 4950);
    const auto v = tau(rng);
    CHECK(error_rate(v, 100, ErrorConvention::kPairs) /
              error_rate(v, 100, ErrorConvention::kPaper) ==
          doctest::Approx(4.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(error_rate(7, 4, ErrorConvention::kPairs), InvalidArgument);
  CHECK_THROWS_AS(error_rate(-1, 4, ErrorConvention::kPairs), InvalidArgument);
}

TEST_CASE("spearman_rho") {
  CHECK(spearman_rho(ranks({1, 2, 3, 4}), ranks({1, 2, 3, 4})) == 1.0);
  CHECK(spearman_rho(ranks({1, 2, 3, 4}), ranks({4, 3, 2, 1})) == -1.0);
  std::mt19937_64 rng(54);
  for (int t = 0; t < 50; ++t) {
    const auto a = oracle::random_ranking(100, rng);
    const auto b = oracle::random_ranking(100, rng);
    CHECK(std::abs(spearman_rho(a, b) - oracle::pearson_of_ranks(a, b)) < 1e-12);
  }
}

TEST_CASE("q_sequence examples") {
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(4, 4, 0.5);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      p(i, j) = 0.3;
      p(j, i) = 0.7;
    }
  }
  const auto q = q_sequence(ProbabilityMatrix(p));
  REQUIRE(q.size() == 6);
  for (double v : q.values()) CHECK(v == doctest::Approx(0.4));

  const auto q3 = q_sequence(three_player());
  REQUIRE(q3.size() == 3);
  CHECK(q3.values()[0] == doctest::Approx(0.1));
  CHECK(q3.values()[1] == doctest::Approx(0.2));
  CHECK(q3.values()[2] == doctest::Approx(0.8));

  CHECK_THROWS_AS(q_sequence(ProbabilityMatrix(Eigen::MatrixXd::Constant(2, 2, 0.5))),
                  InvalidArgument);
}

TEST_CASE("q from the uniform scenario is close to Uniform(0, 1)") {
  SimConfig cfg;
  cfg.n = 500;
  Rng rng(55);
  const auto q = q_sequence(gen_probabilities(cfg, rng).p_star);
  // Kolmogorov-Smirnov distance against the identity CDF.
  double ks = 0;
  const double m = static_cast<double>(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double v = q.values()[k];
    ks = std::max({ks, std::abs((k + 1) / m - v), std::abs(k / m - v)});
  }
  CHECK(ks < 0.05);
}

TEST_CASE("q_bar") {
  const QSequence flat(std::vector<double>(10, 0.4));
  CHECK(q_bar(0, flat) == 0.0);
  for (int s = 1; s <= 10; ++s) CHECK(q_bar(s, flat) == doctest::Approx(0.4));
  CHECK_THROWS_AS(q_bar(11, flat), InvalidArgument);
  CHECK_THROWS_AS(q_bar(-1, flat), InvalidArgument);
  CHECK_THROWS_AS(QSequence({0.5, 0.2}), InvalidArgument);
  CHECK_THROWS_AS(QSequence({0.0}), InvalidArgument);

  SimConfig cfg;
  cfg.scenario = Scenario::kTwoGroup;
  cfg.n = 40;
  Rng rng(56);
  const auto q = q_sequence(gen_probabilities(cfg, rng).p_star);
  for (std::size_t s = 1; s < q.size(); ++s) {
    CHECK(q_bar(static_cast<std::int64_t>(s) + 1, q) >= q_bar(static_cast<std::int64_t>(s), q));
    CHECK(q_bar(static_cast<std::int64_t>(s), q) <= 1.0);
  }
}

TEST_CASE("mean of the smallest uniform q values is about s / (n(n-1))") {
  // For q ~ Uniform(0, 1) the s smallest of N = n(n-1)/2 values average
  // about s / (2N).
  SimConfig cfg;
  cfg.n = 500;
  Rng rng(57);
  const auto q = q_sequence(gen_probabilities(cfg, rng).p_star);
  const double big_n = static_cast<double>(q.size());
  for (std::int64_t s : {5000, 20000, 60000, 124750}) {
    CHECK(q_bar(s, q) == doctest::Approx(s / (2.0 * big_n)).epsilon(0.03));
  }
}

TEST_CASE("modified_tau") {
  const QSequence flat(std::vector<double>(45, 0.4));
  const auto pi = Ranking::identity(10);
  CHECK(modified_tau(pi, pi, flat) == 0.0);

  const std::vector<int> order{1, 0, 3, 2, 5, 4, 7, 6, 9, 8};  // five adjacent swaps
  const auto moved = Ranking::from_order_worst_first(order);
  REQUIRE(kendall_tau(moved, pi) == 5);
  CHECK(modified_tau(moved, pi, flat) == doctest::Approx(5 * 0.16));

  std::mt19937_64 rng(58);
  SimConfig cfg;
  cfg.n = 10;
  Rng grng(59);
  const auto q = q_sequence(gen_probabilities(cfg, grng).p_star);
  for (int t = 0; t < 100; ++t) {
    const auto a = oracle::random_ranking(10, rng);
    CHECK(modified_tau(a, pi, q) <= static_cast<double>(kendall_tau(a, pi)));
  }
}

TEST_CASE("modified_tau with tau = 10 and constant q = 0.4") {
  // pi* = identity on 5 players, pi = reversal: tau = 10.
  const QSequence flat(std::vector<double>(10, 0.4));
  const auto star = Ranking::identity(5);
  CHECK(kendall_tau(star.reversed(), star) == 10);
  CHECK(modified_tau(star.reversed(), star, flat) == doctest::Approx(1.6));
}

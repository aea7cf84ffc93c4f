#include "wstrank/core.hpp"

#include <doctest.h>

using namespace wstrank;

TEST_CASE("Ranking validates permutations") {
  CHECK_NOTHROW(Ranking(Eigen::Vector3i(3, 1, 2)));
  CHECK_THROWS_AS(Ranking(Eigen::Vector3i(3, 3, 2)), InvalidArgument);
  CHECK_THROWS_AS(Ranking(Eigen::Vector3i(0, 1, 2)), InvalidArgument);
  CHECK_THROWS_AS(Ranking::from_order_worst_first({0, 0, 1}), InvalidArgument);
}

TEST_CASE("Ranking orders and reversal") {
  const Ranking r(Eigen::Vector3i(2, 3, 1));
  CHECK(r.order_worst_first() == std::vector<int>{2, 0, 1});
  CHECK(r.order_best_first() == std::vector<int>{1, 0, 2});
  CHECK(Ranking::from_order_worst_first(r.order_worst_first()) == r);
  CHECK(r.reversed().ranks() == Eigen::Vector3i(2, 1, 3));
  CHECK(r.reversed().reversed() == r);
  CHECK(Ranking::identity(4).ranks() == Eigen::Vector4i(1, 2, 3, 4));
}

TEST_CASE("rank_of breaks ties by index") {
  CHECK(rank_of(Eigen::Vector3d(0.5, 0.1, 0.9)).ranks() == Eigen::Vector3i(2, 1, 3));
  CHECK(rank_of(Eigen::Vector3d(1, 1, 1)) == Ranking::identity(3));
  CHECK(rank_of(Eigen::Vector3f(2, 1, 2)).ranks() == Eigen::Vector3i(2, 1, 3));
}

TEST_CASE("ComparisonCounts basics") {
  CountMatrix w(3, 3);
  w << 0, 2, 0, 1, 0, 4, 0, 3, 0;
  const auto c = ComparisonCounts::from_wins(w, {"a", "b", "c"});
  CHECK(c.pairs(0, 1) == 3);
  CHECK(c.pairs(1, 2) == 7);
  CHECK(c.total_games() == 10);
  CHECK(c.margins() == -c.margins().transpose());
  CHECK(c.labels()[2] == "c");
  CHECK(ComparisonCounts::from_wins(w).labels() == std::vector<std::string>{"0", "1", "2"});
  CHECK_THROWS_AS(ComparisonCounts::from_wins(w, {"a", "b"}), InvalidArgument);
  CHECK_THROWS_AS(ComparisonCounts::from_wins(w, {"a", "a", "b"}), InvalidArgument);
}

TEST_CASE("ProbabilityMatrix validation") {
  Eigen::Matrix2d p;
  p << 0.5, 0.3, 0.7, 0.5;
  const ProbabilityMatrix pm(p);
  CHECK(pm(1, 0) == 0.7);
  const auto q = pm.with_pair(0, 1, 0.9);
  CHECK(q(0, 1) == 0.9);
  CHECK(q(1, 0) == doctest::Approx(0.1));
  p(0, 1) = 0.4;
  CHECK_THROWS_AS(ProbabilityMatrix{p}, InvalidArgument);
  p << 0.4, 0.3, 0.7, 0.5;
  CHECK_THROWS_AS(ProbabilityMatrix{p}, InvalidArgument);
  p << 0.5, -0.1, 1.1, 0.5;
  CHECK_THROWS_AS(ProbabilityMatrix{p}, InvalidArgument);
}

TEST_CASE("ConvergenceError is a NumericError") {
  try {
    throw ConvergenceError("stuck", Eigen::Vector2d(1, 2));
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()) == "stuck");
  }
}

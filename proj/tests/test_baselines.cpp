#include "oracles.hpp"
#include "wstrank/baselines.hpp"
#include "wstrank/metrics.hpp"
#include "wstrank/simgen.hpp"

#include <doctest.h>

using namespace wstrank;

namespace {

ComparisonCounts connected_counts(int n, std::mt19937_64& rng, double density = 0.7) {
  while (true) {
    auto c = oracle::random_counts(n, rng, density);
    if (oracle::strongly_connected_bfs(c.win_counts())) return c;
  }
}

}  // namespace

TEST_CASE("borda: one dominant pair") {
  CountMatrix w = CountMatrix::Zero(2, 2);
  w(1, 0) = 5;
  const auto r = borda_rank(ComparisonCounts::from_wins(w));
  CHECK(r.ranking[1] > r.ranking[0]);
}

TEST_CASE("borda: symmetric data falls back to index order") {
  CountMatrix w = CountMatrix::Constant(5, 5, 1);
  w.diagonal().setZero();
  CHECK(borda_rank(ComparisonCounts::from_wins(w)).ranking == Ranking::identity(5));
}

TEST_CASE("borda recovers the truth from dense noiseless data") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 10; ++t) {
    const int n = 15;
    const auto truth = oracle::random_ranking(n, rng);
    std::uniform_int_distribution<int> games(1, 5);
    CountMatrix w = CountMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const int g = games(rng);
        (truth[i] > truth[j] ? w(i, j) : w(j, i)) = g;
      }
    }
    const auto c = ComparisonCounts::from_wins(w);
    CHECK(borda_rank(c).ranking == truth);
    CHECK(borda_rank(c, BordaScore::kRawWins).ranking.size() == n);
  }
}

TEST_CASE("borda is invariant to replaying every game") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 10; ++t) {
    const auto c = oracle::random_counts(20, rng, 0.4);
    const auto tripled = ComparisonCounts::from_wins(3 * c.win_counts());
    CHECK(borda_rank(tripled).ranking == borda_rank(c).ranking);
  }
}

TEST_CASE("bt_fit: symmetric pair gives equal strengths") {
  CountMatrix w = CountMatrix::Zero(2, 2);
  w(0, 1) = 1;
  w(1, 0) = 1;
  const auto r = bt_fit(ComparisonCounts::from_wins(w));
  CHECK(std::abs(r.beta[0]) < 1e-12);
  CHECK(std::abs(r.beta[1]) < 1e-12);
}

TEST_CASE("bt_fit matches the golden-section oracle on three players") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 20; ++t) {
    const auto c = connected_counts(3, rng, 0.9);
    const auto fit = bt_fit(c);
    const auto ref = oracle::bt_three_player_oracle(c);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(fit.beta[i] - ref[i]) < 1e-4);
    CHECK(fit.grad_norm <= 1e-8);
  }
}

TEST_CASE("bt_fit contract on random connected data") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 10; ++t) {
    const auto c = connected_counts(25, rng, 0.3);
    const auto fit = bt_fit(c);
    CHECK(std::abs(fit.beta.sum()) < 1e-12);
    CHECK(bt_gradient(c, fit.beta).norm() <= 1e-8);
    CHECK(bt_log_likelihood(c, fit.beta) >= bt_log_likelihood(c, Eigen::VectorXd::Zero(25)));
    CHECK(oracle::bt_loglik_direct(c, std::vector<double>(fit.beta.data(), fit.beta.data() + 25)) ==
          doctest::Approx(bt_log_likelihood(c, fit.beta)));
    CHECK(bt_fit(c).ranking == fit.ranking);
    CHECK(rank_of((fit.beta.array() + 3.0).matrix()) == fit.ranking);
  }
}

TEST_CASE("bt_fit rejects disconnected win graphs") {
  CountMatrix w = CountMatrix::Zero(3, 3);
  w(0, 1) = 2;
  w(1, 0) = 1;
  w(2, 0) = 1;  // player 2 never loses
  try {
    bt_fit(ComparisonCounts::from_wins(w));
    FAIL("expected ModelError");
  } catch (const ModelError& e) {
    CHECK(std::string(e.what()).find("bt-connected") != std::string::npos);
  }
}

TEST_CASE("bt_fit non-convergence carries the last iterate") {
  std::mt19937_64 rng(45);
  const auto c = connected_counts(10, rng, 0.5);
  BtOptions opts;
  opts.max_iters = 1;
  opts.tol = 1e-300;
  try {
    bt_fit(c, opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_iterate().size() == 10);
  }
  opts.tol = 0;
  CHECK_THROWS_AS(opts.validate(), InvalidArgument);
}

TEST_CASE("usvt: zero input gives a flat estimate") {
  CountMatrix w = CountMatrix::Zero(4, 4);
  w(0, 1) = 1;
  w(1, 0) = 1;  // one observed pair, x = 0 everywhere
  const auto r = usvt_rank(ComparisonCounts::from_wins(w));
  CHECK(r.retained == 0);
  CHECK((r.estimate.probs().array() - 0.5).abs().maxCoeff() == 0.0);
  CHECK(r.ranking == Ranking::identity(4));
}

TEST_CASE("usvt: no observed pairs is degenerate") {
  CHECK_THROWS_AS(usvt_rank(ComparisonCounts::from_wins(CountMatrix::Zero(4, 4))), DataError);
  CHECK_THROWS_AS(usvt_rank(ComparisonCounts::from_wins(CountMatrix::Zero(1, 1))), InvalidArgument);
}

TEST_CASE("usvt with exact expectations ranks bt_latent players well (n = 200)") {
  SimConfig cfg;
  cfg.scenario = Scenario::kBtLatent;
  cfg.n = 200;
  Rng rng(46);
  const auto truth = gen_probabilities(cfg, rng);
  const Eigen::MatrixXd x = 2.0 * truth.p_star.probs().array() - 1.0;
  const auto r = usvt_from_matrix(x, 1.0);
  CHECK(error_rate(kendall_tau(r.ranking, truth.pi_star), cfg.n, ErrorConvention::kPairs) < 0.10);
}

TEST_CASE("usvt estimate is a valid probability matrix") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 10; ++t) {
    const auto c = oracle::random_counts(40, rng, 0.3);
    const auto r = usvt_rank(c);
    const auto& p = r.estimate.probs();
    CHECK(p.minCoeff() >= 0.0);
    CHECK(p.maxCoeff() <= 1.0);
    CHECK((p + p.transpose() - Eigen::MatrixXd::Ones(40, 40)).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("usvt ranking is equivariant under relabeling") {
  // Planted strengths so that the retained spectrum is well separated.
  SimConfig cfg;
  cfg.scenario = Scenario::kBtLatent;
  cfg.n = 60;
  cfg.t_max = 20;
  Rng rng(48);
  const auto truth = gen_probabilities(cfg, rng);
  const auto c = gen_counts(truth.p_star, cfg, rng);
  const auto base = usvt_rank(c);
  const auto [shuffled, moved] = shuffle_players(c, base.ranking, rng);
  CHECK(usvt_rank(shuffled).ranking == moved);
}

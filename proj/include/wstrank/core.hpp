#pragma once

// Core value types shared by every module: rankings, comparison counts,
// probability matrices and the error hierarchy.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wstrank {

using CountMatrix = Eigen::MatrixXi;

// Errors. The CLI maps these onto stable exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or preconditions on caller-supplied values.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed or empty input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// The data do not support the requested model (e.g. BT on a graph that
// is not strongly connected).
class ModelError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// Iterative solver ran out of iterations; carries the last iterate.
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, Eigen::VectorXd last)
      : NumericError(what), last_iterate_(std::move(last)) {}
  const Eigen::VectorXd& last_iterate() const { return last_iterate_; }

 private:
  Eigen::VectorXd last_iterate_;
};

/// A permutation pi of {1..n}. pi[i] is the rank of player i; a larger
/// value means a better player.
class Ranking {
 public:
  Ranking() = default;
  explicit Ranking(Eigen::VectorXi ranks);

  static Ranking identity(int n);

  /// Builds a ranking from player indices listed worst first.
  static Ranking from_order_worst_first(const std::vector<int>& order);

  int size() const { return static_cast<int>(ranks_.size()); }
  int operator[](int i) const { return ranks_[i]; }
  const Eigen::VectorXi& ranks() const { return ranks_; }

  /// pi_i -> n + 1 - pi_i.
  Ranking reversed() const;

  /// Player indices ordered from rank 1 up to rank n.
  std::vector<int> order_worst_first() const;
  std::vector<int> order_best_first() const;

  bool operator==(const Ranking& other) const { return ranks_ == other.ranks_; }
  bool operator!=(const Ranking& other) const { return !(*this == other); }

 private:
  Eigen::VectorXi ranks_;
};

/// Ranks the entries of `scores` in increasing order. Equal scores are
/// broken by index: the lower index gets the lower rank.
template <typename Derived>
Ranking rank_of(const Eigen::DenseBase<Derived>& scores) {
  const Eigen::Index n = scores.size();
  std::vector<int> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scores(a) < scores(b);
  });
  return Ranking::from_order_worst_first(order);
}

/// Symmetric pair counts n_ij and win counts y_ij for n players.
class ComparisonCounts {
 public:
  ComparisonCounts() = default;

  /// Validates every invariant; throws InvalidArgument on violation.
  ComparisonCounts(CountMatrix pair_counts, CountMatrix win_counts,
                   std::vector<std::string> labels = {});

  /// pair_counts is derived as wins + wins^T.
  static ComparisonCounts from_wins(const CountMatrix& wins,
                                    std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(pairs_.rows()); }
  const CountMatrix& pair_counts() const { return pairs_; }
  const CountMatrix& win_counts() const { return wins_; }
  int pairs(int i, int j) const { return pairs_(i, j); }
  int wins(int i, int j) const { return wins_(i, j); }

  /// Labels are always populated; unlabeled inputs get "0", "1", ...
  const std::vector<std::string>& labels() const { return labels_; }

  /// 2 y_ij - n_ij for every ordered pair (skew-symmetric).
  CountMatrix margins() const { return 2 * wins_ - pairs_; }

  std::int64_t total_games() const;

 private:
  CountMatrix pairs_;
  CountMatrix wins_;
  std::vector<std::string> labels_;
};

/// Pairwise winning probabilities with p_ij + p_ji = 1 and p_ii = 0.5.
class ProbabilityMatrix {
 public:
  ProbabilityMatrix() = default;
  explicit ProbabilityMatrix(Eigen::MatrixXd probs);

  int size() const { return static_cast<int>(probs_.rows()); }
  double operator()(int i, int j) const { return probs_(i, j); }
  const Eigen::MatrixXd& probs() const { return probs_; }

  /// Sets p_ij and its complement p_ji = 1 - p_ij.
  ProbabilityMatrix with_pair(int i, int j, double p) const;

 private:
  Eigen::MatrixXd probs_;
};

struct MatchRecord {
  std::string winner;
  std::string loser;
};

void require_same_size(int a, int b, const char* what);

}  // namespace wstrank

#include "wstrank/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace wstrank {

Ranking::Ranking(Eigen::VectorXi ranks) : ranks_(std::move(ranks)) {
  const int n = size();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    const int r = ranks_[i];
    if (r < 1 || r > n || seen[r - 1]) {
      throw InvalidArgument("ranking is not a permutation of 1.." +
                            std::to_string(n));
    }
    seen[r - 1] = true;
  }
}

Ranking Ranking::identity(int n) {
  if (n < 0) throw InvalidArgument("negative ranking size");
  return Ranking(Eigen::VectorXi::LinSpaced(n, 1, n));
}

Ranking Ranking::from_order_worst_first(const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  Eigen::VectorXi ranks = Eigen::VectorXi::Zero(n);
  for (int pos = 0; pos < n; ++pos) {
    if (order[pos] < 0 || order[pos] >= n) {
      throw InvalidArgument("player index out of range in order");
    }
    ranks[order[pos]] = pos + 1;
  }
  return Ranking(std::move(ranks));
}

Ranking Ranking::reversed() const {
  Eigen::VectorXi r = (size() + 1) - ranks_.array();
  return Ranking(std::move(r));
}

std::vector<int> Ranking::order_worst_first() const {
  std::vector<int> order(static_cast<std::size_t>(size()));
  for (int i = 0; i < size(); ++i) order[ranks_[i] - 1] = i;
  return order;
}

std::vector<int> Ranking::order_best_first() const {
  auto order = order_worst_first();
  std::reverse(order.begin(), order.end());
  return order;
}

ComparisonCounts::ComparisonCounts(CountMatrix pair_counts,
                                   CountMatrix win_counts,
                                   std::vector<std::string> labels)
    : pairs_(std::move(pair_counts)),
      wins_(std::move(win_counts)),
      labels_(std::move(labels)) {
  const Eigen::Index n = pairs_.rows();
  if (pairs_.cols() != n || wins_.rows() != n || wins_.cols() != n) {
    throw InvalidArgument("count matrices must be square and of equal size");
  }
  if ((pairs_.array() < 0).any() || (wins_.array() < 0).any()) {
    throw InvalidArgument("counts must be non-negative");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (pairs_(i, i) != 0 || wins_(i, i) != 0) {
      throw InvalidArgument("diagonal counts must be zero");
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (pairs_(i, j) != pairs_(j, i)) {
        throw InvalidArgument("pair counts must be symmetric");
      }
      if (wins_(i, j) + wins_(j, i) != pairs_(i, j)) {
        throw InvalidArgument("win counts of a pair must sum to its pair count");
      }
    }
  }
  if (labels_.empty()) {
    labels_.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
  } else if (static_cast<Eigen::Index>(labels_.size()) != n) {
    throw InvalidArgument("label count does not match player count");
  } else {
    std::set<std::string> distinct(labels_.begin(), labels_.end());
    if (distinct.size() != labels_.size()) throw InvalidArgument("labels must be distinct");
  }
}

ComparisonCounts ComparisonCounts::from_wins(const CountMatrix& wins,
                                             std::vector<std::string> labels) {
  CountMatrix pairs = wins + wins.transpose();
  return ComparisonCounts(std::move(pairs), wins, std::move(labels));
}

std::int64_t ComparisonCounts::total_games() const {
  return pairs_.cast<std::int64_t>().sum() / 2;
}

ProbabilityMatrix::ProbabilityMatrix(Eigen::MatrixXd probs)
    : probs_(std::move(probs)) {
  const Eigen::Index n = probs_.rows();
  if (probs_.cols() != n) throw InvalidArgument("probability matrix not square");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (probs_(i, i) != 0.5) {
      throw InvalidArgument("probability matrix diagonal must be 0.5");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double p = probs_(i, j);
      if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument("probabilities must lie in [0, 1]");
      }
      if (std::abs(p + probs_(j, i) - 1.0) > 1e-12) {
        throw InvalidArgument("p_ij + p_ji must equal 1");
      }
    }
  }
}

ProbabilityMatrix ProbabilityMatrix::with_pair(int i, int j, double p) const {
  Eigen::MatrixXd probs = probs_;
  probs(i, j) = p;
  probs(j, i) = 1.0 - p;
  return ProbabilityMatrix(std::move(probs));
}

void require_same_size(int a, int b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" +
                          std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace wstrank

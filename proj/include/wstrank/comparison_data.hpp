#pragma once

#include "wstrank/core.hpp"

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace wstrank {

/// Aggregates match records into counts. Players are indexed in order of
/// first appearance. Throws DataError on empty input, empty identifiers or
/// a record whose winner equals its loser (ties are not representable).
ComparisonCounts load_matches(std::span<const MatchRecord> records);

/// Expands counts back into one record per game (pair order, winner
/// direction first). Inverse of load_matches up to record order.
std::vector<MatchRecord> to_matches(const ComparisonCounts& counts);

enum class FilterPolicy {
  kNoWins,       // drop every player without a win (one pass)
  kBtConnected,  // kNoWins, then keep the largest strongly connected component
};

struct FilteredCounts {
  ComparisonCounts counts;
  std::vector<int> original_index;  // new index -> index in the input
};

/// Throws DataError if the policy removes every player.
FilteredCounts filter_players(const ComparisonCounts& counts,
                              FilterPolicy policy);

/// Strongly connected components of the directed graph with an edge
/// i -> j whenever y_ij > 0. Each component is sorted by index; the list
/// is ordered by smallest member.
std::vector<std::vector<int>> win_graph_components(const CountMatrix& wins);

bool win_graph_strongly_connected(const CountMatrix& wins);

struct WstReport {
  // (i, j, k) with p_ij >= 0.5, p_jk >= 0.5 and p_ik < 0.5 - tol.
  std::vector<std::array<int, 3>> violations;
  // i < j with |p_ij - 0.5| <= tol: the implied ranking is not unique.
  std::vector<std::pair<int, int>> near_ties;

  bool ok() const { return violations.empty() && near_ties.empty(); }
};

/// Brute-force O(n^3) scan for weak stochastic transitivity.
WstReport check_wst(const ProbabilityMatrix& probs, double tol = 0.0);

/// Standardized skew-symmetric outcome matrix: x_ij = 2 y_ij / n_ij - 1,
/// or 0 for pairs that never met.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> skew_statistic(
    const ComparisonCounts& counts) {
  const int n = counts.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> x =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int games = counts.pairs(i, j);
      if (games == 0) continue;
      // Computed once and mirrored so that x + x^T is exactly zero.
      const Scalar v = Scalar(2 * counts.wins(i, j) - games) / Scalar(games);
      x(i, j) = v;
      x(j, i) = -v;
    }
  }
  return x;
}

}  // namespace wstrank

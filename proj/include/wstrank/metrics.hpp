#pragma once

#include "wstrank/core.hpp"

#include <cstdint>
#include <vector>

namespace wstrank {

/// Number of player pairs ordered differently by the two rankings,
/// counted by merge-sort inversion counting in O(n log n).
std::int64_t kendall_tau(const Ranking& pi, const Ranking& omega);

enum class ErrorConvention {
  kPairs,  // tau / (n(n-1)/2): proportion of discordant pairs
  kPaper,  // tau / (2n(n-1))
};

double error_rate(std::int64_t tau, int n, ErrorConvention convention);

/// Kendall rank correlation 1 - 2 tau / (n(n-1)/2).
double kendall_correlation(const Ranking& pi, const Ranking& omega);

/// 1 - 6 sum (pi_i - omega_i)^2 / (n(n^2 - 1)).
double spearman_rho(const Ranking& pi, const Ranking& omega);

/// Pair difficulties q_ij = |2 p*_ij - 1| for i < j, sorted ascending,
/// with prefix sums for Q(s).
class QSequence {
 public:
  explicit QSequence(std::vector<double> q_sorted);

  std::size_t size() const { return q_.size(); }
  const std::vector<double>& values() const { return q_; }

  /// Q(s): mean of the s smallest values, Q(0) = 0.
  double mean_of_smallest(std::int64_t s) const;

 private:
  std::vector<double> q_;
  std::vector<double> prefix_;  // prefix_[s] = q_(1) + ... + q_(s)
};

/// Throws InvalidArgument if some p*_ij equals 0.5.
QSequence q_sequence(const ProbabilityMatrix& p_star);

inline double q_bar(std::int64_t s, const QSequence& q) {
  return q.mean_of_smallest(s);
}

/// tau(pi, pi*) * Q(tau(pi, pi*))^2.
double modified_tau(const Ranking& pi, const Ranking& pi_star, const QSequence& q);

}  // namespace wstrank

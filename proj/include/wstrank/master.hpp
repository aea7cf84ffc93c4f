#pragma once

// Maximum-score rank aggregation: the pairwise objective
//
//   L(pi) = sum_{i<j} (2 y_ij - n_ij) * I(pi_i > pi_j),
//
// a logistic-smoothed surrogate used to pick a starting ranking, and a
// consecutive K-tuple local search that only accepts strict improvements.

#include "wstrank/core.hpp"

#include <cstdint>
#include <vector>

namespace wstrank {

struct MasterOptions {
  int k = 3;
  // <= 0 selects 0.5 / sqrt(mean games per player).
  double surrogate_step = 0.0;
  int surrogate_iters = 500;
  double surrogate_ridge = 1e-4;

  void validate() const;
};

struct MasterResult {
  Ranking ranking;
  std::int64_t objective = 0;
  Ranking init_ranking;
  std::int64_t init_objective = 0;
  int sweeps = 0;  // applied improving permutations
  // Objective after each applied permutation, starting at init_objective.
  std::vector<std::int64_t> objective_trace;
};

struct SurrogateResult {
  Eigen::VectorXd scores;  // centered to mean 0
  Ranking ranking;
  // Penalized surrogate objective at beta = 0 and after every iteration.
  std::vector<double> objective_trace;
  double step = 0.0;  // step size in effect at the end
};

/// Exact integer value of L(pi). Pairs that never met contribute 0.
std::int64_t score(const Ranking& pi, const ComparisonCounts& counts);

/// Default gradient step: 0.5 / sqrt(mean games per player).
double default_surrogate_step(const ComparisonCounts& counts);

/// Gradient ascent from beta = 0 on
///   sum_{i<j} (2 y_ij - n_ij) sigmoid(beta_i - beta_j) - ridge * |beta|^2,
/// re-centering beta after each step. A step that would lower the
/// objective is halved until it does not, so the trace is non-decreasing.
SurrogateResult surrogate_init(const ComparisonCounts& counts,
                               const MasterOptions& opts);

/// Consecutive K-tuple search. Scans segments of K adjacent rank positions
/// from the bottom; when some reassignment of a segment strictly improves
/// L, the best one (lexicographically first among ties) is applied and the
/// scan restarts at the bottom.
MasterResult ktuple_search(const ComparisonCounts& counts, const Ranking& init,
                           int k);

/// surrogate_init followed by ktuple_search.
MasterResult master_rank(const ComparisonCounts& counts,
                         const MasterOptions& opts = {});

struct Certificate {
  bool ok = false;
  std::int64_t margin = 0;  // L(candidate) - L(truth)
};

/// Checks L(candidate) >= L(truth). Only meaningful when truth is known.
Certificate certify(const Ranking& candidate, const Ranking& truth,
                    const ComparisonCounts& counts);

}  // namespace wstrank

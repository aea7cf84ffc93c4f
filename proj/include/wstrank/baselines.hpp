#pragma once

// Comparison methods: Borda counting, Bradley-Terry maximum likelihood and
// universal singular value thresholding (USVT).

#include "wstrank/core.hpp"

namespace wstrank {

enum class BordaScore {
  kWinFractions,  // sum over opponents of y_ij / n_ij
  kRawWins,       // sum over opponents of y_ij
};

struct BordaResult {
  Eigen::VectorXd scores;
  Ranking ranking;
};

BordaResult borda_rank(const ComparisonCounts& counts,
                       BordaScore kind = BordaScore::kWinFractions);

struct BtOptions {
  double tol = 1e-8;  // Euclidean norm of the log-likelihood gradient
  int max_iters = 10000;

  void validate() const;
};

struct BtResult {
  Eigen::VectorXd beta;  // sums to zero
  Ranking ranking;
  int iterations = 0;
  double grad_norm = 0.0;
};

/// sum_{i != j} y_ij log sigmoid(beta_i - beta_j)
double bt_log_likelihood(const ComparisonCounts& counts,
                         const Eigen::VectorXd& beta);

Eigen::VectorXd bt_gradient(const ComparisonCounts& counts,
                            const Eigen::VectorXd& beta);

/// Damped Newton ascent on the BT log-likelihood under sum(beta) = 0.
/// Throws ModelError when the win graph is not strongly connected (the MLE
/// does not exist) and ConvergenceError after max_iters.
BtResult bt_fit(const ComparisonCounts& counts, const BtOptions& opts = {});

struct UsvtOptions {
  double eta = 0.01;

  void validate() const;
};

struct UsvtResult {
  ProbabilityMatrix estimate;
  Ranking ranking;
  int retained = 0;  // singular values above the threshold
  double threshold = 0.0;
  double observed_fraction = 0.0;
};

/// Thresholds the SVD of the skew statistic at (2 + eta) sqrt(n p_hat),
/// rescales by 1/p_hat, clips to [-1, 1] and maps to probabilities. Players
/// are ranked by the row sums of the estimate.
UsvtResult usvt_rank(const ComparisonCounts& counts, const UsvtOptions& opts = {});

/// The estimation step of usvt_rank on an arbitrary skew-symmetric input
/// with the given observed-pair fraction.
UsvtResult usvt_from_matrix(const Eigen::MatrixXd& x, double observed_fraction,
                            const UsvtOptions& opts = {});

}  // namespace wstrank

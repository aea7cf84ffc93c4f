#include "wstrank/baselines.hpp"

#include "wstrank/comparison_data.hpp"

#include <cmath>

namespace wstrank {

BordaResult borda_rank(const ComparisonCounts& counts, BordaScore kind) {
  const int n = counts.size();
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int games = counts.pairs(i, j);
      if (games == 0) continue;
      scores[i] += kind == BordaScore::kRawWins
                       ? counts.wins(i, j)
                       : static_cast<double>(counts.wins(i, j)) / games;
    }
  }
  Ranking ranking = rank_of(scores);
  return {std::move(scores), std::move(ranking)};
}

void BtOptions::validate() const {
  if (!(tol > 0.0)) throw InvalidArgument("BT tolerance must be > 0");
  if (max_iters < 1) throw InvalidArgument("BT max_iters must be >= 1");
}

namespace {

// log(sigmoid(x)) without overflow.
double log_sigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

double bt_log_likelihood(const ComparisonCounts& counts,
                         const Eigen::VectorXd& beta) {
  require_same_size(static_cast<int>(beta.size()), counts.size(), "bt_log_likelihood");
  const int n = counts.size();
  double ll = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int y = counts.wins(i, j);
      if (y > 0) ll += y * log_sigmoid(beta[i] - beta[j]);
    }
  }
  return ll;
}

Eigen::VectorXd bt_gradient(const ComparisonCounts& counts,
                            const Eigen::VectorXd& beta) {
  require_same_size(static_cast<int>(beta.size()), counts.size(), "bt_gradient");
  const int n = counts.size();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int games = counts.pairs(i, j);
      if (games == 0) continue;
      const double r = counts.wins(i, j) - games * sigmoid(beta[i] - beta[j]);
      g[i] += r;
      g[j] -= r;
    }
  }
  return g;
}

BtResult bt_fit(const ComparisonCounts& counts, const BtOptions& opts) {
  opts.validate();
  const int n = counts.size();
  if (n == 0) throw DataError("BT fit on an empty player set");
  if (!win_graph_strongly_connected(counts.win_counts())) {
    throw ModelError(
        "BT likelihood is ill-posed: the win graph is not strongly connected; "
        "filter players with the 'bt-connected' policy first");
  }

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = bt_gradient(counts, beta);
  double ll = bt_log_likelihood(counts, beta);
  Eigen::MatrixXd hess(n, n);

  for (int it = 0; it < opts.max_iters; ++it) {
    const double gnorm = grad.norm();
    if (!std::isfinite(gnorm)) throw NumericError("BT gradient is not finite");
    if (gnorm <= opts.tol) {
      return {beta, rank_of(beta), it, gnorm};
    }

    // Negative Hessian: weighted graph Laplacian, made definite on the
    // sum-zero subspace by adding J/n.
    hess.setConstant(1.0 / n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const int games = counts.pairs(i, j);
        if (games == 0) continue;
        const double p = sigmoid(beta[i] - beta[j]);
        const double w = games * p * (1.0 - p);
        hess(i, j) -= w;
        hess(j, i) -= w;
        hess(i, i) += w;
        hess(j, j) += w;
      }
    }
    const Eigen::VectorXd dir = hess.ldlt().solve(grad);

    double step = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      Eigen::VectorXd cand = beta + step * dir;
      cand.array() -= cand.mean();
      const double cand_ll = bt_log_likelihood(counts, cand);
      Eigen::VectorXd cand_grad = bt_gradient(counts, cand);
      // Near the optimum the likelihood change drowns in rounding, so a
      // smaller gradient also counts as progress.
      if (std::isfinite(cand_ll) &&
          (cand_ll > ll || cand_grad.norm() < gnorm)) {
        beta = std::move(cand);
        grad = std::move(cand_grad);
        ll = cand_ll;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      throw ConvergenceError("BT Newton step made no progress", beta);
    }
  }
  const double gnorm = grad.norm();
  if (gnorm <= opts.tol) return {beta, rank_of(beta), opts.max_iters, gnorm};
  throw ConvergenceError("BT fit did not converge within " +
                             std::to_string(opts.max_iters) + " iterations",
                         beta);
}

void UsvtOptions::validate() const {
  if (!(eta > 0.0)) throw InvalidArgument("USVT eta must be > 0");
}

UsvtResult usvt_from_matrix(const Eigen::MatrixXd& x, double observed_fraction,
                            const UsvtOptions& opts) {
  opts.validate();
  const Eigen::Index n = x.rows();
  if (n < 2 || x.cols() != n) throw InvalidArgument("USVT needs a square matrix, n >= 2");
  if (!(observed_fraction > 0.0)) {
    throw DataError("USVT is degenerate: no observed pairs");
  }

  UsvtResult out;
  out.observed_fraction = observed_fraction;
  out.threshold = (2.0 + opts.eta) * std::sqrt(static_cast<double>(n) * observed_fraction);

  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index r = 0; r < sv.size(); ++r) {
    if (sv[r] <= out.threshold) continue;
    m.noalias() += sv[r] * svd.matrixU().col(r) * svd.matrixV().col(r).transpose();
    ++out.retained;
  }
  m = (m / observed_fraction).cwiseMax(-1.0).cwiseMin(1.0);

  Eigen::MatrixXd est = Eigen::MatrixXd::Constant(n, n, 0.5);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double pij = 0.5 * (m(i, j) + 1.0);
      const double pji = 0.5 * (m(j, i) + 1.0);
      const double sym = 0.5 * (pij + 1.0 - pji);
      est(i, j) = sym;
      est(j, i) = 1.0 - sym;
    }
  }
  const Eigen::VectorXd row_sums = est.rowwise().sum();
  out.ranking = rank_of(row_sums);
  out.estimate = ProbabilityMatrix(std::move(est));
  return out;
}

UsvtResult usvt_rank(const ComparisonCounts& counts, const UsvtOptions& opts) {
  const int n = counts.size();
  if (n < 2) throw InvalidArgument("USVT needs at least two players");
  long observed = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) observed += counts.pairs(i, j) > 0;
  }
  const double fraction =
      static_cast<double>(observed) / (static_cast<double>(n) * (n - 1) / 2.0);
  return usvt_from_matrix(skew_statistic(counts), fraction, opts);
}

}  // namespace wstrank

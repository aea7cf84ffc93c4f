#include "wstrank/master.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace wstrank {

void MasterOptions::validate() const {
  if (k < 2 || k > 8) throw InvalidArgument("k must be in [2, 8]");
  if (!(surrogate_step >= 0.0) || !std::isfinite(surrogate_step)) {
    throw InvalidArgument("surrogate_step must be finite and >= 0");
  }
  if (surrogate_iters <= 0) throw InvalidArgument("surrogate_iters must be > 0");
  if (!(surrogate_ridge >= 0.0)) throw InvalidArgument("surrogate_ridge must be >= 0");
}

std::int64_t score(const Ranking& pi, const ComparisonCounts& counts) {
  require_same_size(pi.size(), counts.size(), "score");
  const int n = counts.size();
  std::int64_t total = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (pi[i] > pi[j]) {
        total += 2 * counts.wins(i, j) - counts.pairs(i, j);
      }
    }
  }
  return total;
}

double default_surrogate_step(const ComparisonCounts& counts) {
  if (counts.size() == 0) return 0.5;
  const double per_player =
      2.0 * static_cast<double>(counts.total_games()) / counts.size();
  return per_player > 0.0 ? 0.5 / std::sqrt(per_player) : 0.5;
}

namespace {

// Evaluates the penalized surrogate at beta and stores the pairwise
// sigmoid matrix in `sig`.
double surrogate_value(const Eigen::MatrixXd& margins, double upper_sum,
                       const Eigen::VectorXd& beta, double ridge,
                       Eigen::MatrixXd& sig) {
  const Eigen::Index n = beta.size();
  sig = ((beta.replicate(1, n) - beta.transpose().replicate(n, 1)).array() * -1.0)
            .exp()
            .unaryExpr([](double e) { return 1.0 / (1.0 + e); })
            .matrix();
  // sum_{i<j} d_ij s_ij = (sum_{i != j} d_ij s_ij + sum_{i<j} d_ij) / 2
  const double full = margins.cwiseProduct(sig).sum();
  return 0.5 * (full + upper_sum) - ridge * beta.squaredNorm();
}

}  // namespace

SurrogateResult surrogate_init(const ComparisonCounts& counts,
                               const MasterOptions& opts) {
  opts.validate();
  const int n = counts.size();
  const Eigen::MatrixXd margins = counts.margins().cast<double>();
  const double upper_sum = margins.triangularView<Eigen::StrictlyUpper>()
                               .toDenseMatrix()
                               .sum();

  SurrogateResult out;
  out.step = opts.surrogate_step > 0.0 ? opts.surrogate_step
                                       : default_surrogate_step(counts);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd sig, cand_sig;
  double value = surrogate_value(margins, upper_sum, beta, opts.surrogate_ridge, sig);
  out.objective_trace.reserve(static_cast<std::size_t>(opts.surrogate_iters) + 1);
  out.objective_trace.push_back(value);

  for (int it = 0; it < opts.surrogate_iters; ++it) {
    const Eigen::VectorXd grad =
        margins.cwiseProduct(sig.cwiseProduct((1.0 - sig.array()).matrix()))
            .rowwise()
            .sum() -
        2.0 * opts.surrogate_ridge * beta;
    if (!grad.allFinite()) throw NumericError("surrogate gradient is not finite");
    if (grad.squaredNorm() == 0.0) {
      out.objective_trace.push_back(value);
      continue;
    }
    // Backtrack until the step does not lower the objective.
    bool moved = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      Eigen::VectorXd cand = beta + out.step * grad;
      cand.array() -= cand.mean();
      const double cand_value =
          surrogate_value(margins, upper_sum, cand, opts.surrogate_ridge, cand_sig);
      if (!std::isfinite(cand_value)) {
        throw NumericError("surrogate objective is not finite");
      }
      if (cand_value >= value) {
        beta = std::move(cand);
        sig.swap(cand_sig);
        value = cand_value;
        moved = true;
        break;
      }
      out.step *= 0.5;
    }
    out.objective_trace.push_back(value);
    if (!moved) break;
  }

  out.ranking = rank_of(beta);
  out.scores = std::move(beta);
  return out;
}

MasterResult ktuple_search(const ComparisonCounts& counts, const Ranking& init,
                           int k) {
  const int n = counts.size();
  require_same_size(init.size(), n, "ktuple_search");
  if (k < 2 || k > std::min(n, 8)) {
    throw InvalidArgument("k must satisfy 2 <= k <= min(n, 8); got k=" +
                          std::to_string(k) + ", n=" + std::to_string(n));
  }
  const CountMatrix margins = counts.margins();

  MasterResult res;
  res.init_ranking = init;
  res.init_objective = score(init, counts);
  res.objective_trace.push_back(res.init_objective);

  // order[p] is the player at 0-based rank position p (worst first).
  std::vector<int> order = init.order_worst_first();
  std::int64_t objective = res.init_objective;

  std::array<int, 8> seg{};
  std::array<int, 8> perm{};
  std::array<int, 8> best_perm{};
  // gain[a][b]: contribution of segment players a below b.
  std::array<std::array<std::int64_t, 8>, 8> gain{};

  auto segment_value = [&](const std::array<int, 8>& p) {
    std::int64_t v = 0;
    for (int lo = 0; lo < k; ++lo) {
      for (int hi = lo + 1; hi < k; ++hi) v += gain[p[lo]][p[hi]];
    }
    return v;
  };

  int t = k;
  while (t <= n) {
    const int start = t - k;
    for (int a = 0; a < k; ++a) seg[a] = order[start + a];
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        // Pair (i<j) scores d_ij when the lower index sits higher.
        gain[a][b] = (a != b && seg[b] < seg[a]) ? margins(seg[b], seg[a]) : 0;
      }
    }
    std::iota(perm.begin(), perm.begin() + k, 0);
    const std::int64_t current = segment_value(perm);
    std::int64_t best = current;
    bool improved = false;
    while (std::next_permutation(perm.begin(), perm.begin() + k)) {
      const std::int64_t v = segment_value(perm);
      if (v > best) {
        best = v;
        best_perm = perm;
        improved = true;
      }
    }
    if (improved) {
      for (int a = 0; a < k; ++a) order[start + a] = seg[best_perm[a]];
      objective += best - current;
      ++res.sweeps;
      res.objective_trace.push_back(objective);
      t = k;
    } else {
      ++t;
    }
  }

  res.ranking = Ranking::from_order_worst_first(order);
  res.objective = objective;
  return res;
}

MasterResult master_rank(const ComparisonCounts& counts,
                         const MasterOptions& opts) {
  opts.validate();
  const SurrogateResult init = surrogate_init(counts, opts);
  // Segments cannot be longer than the field.
  const int k = std::min(opts.k, counts.size());
  if (k < 2) {
    MasterResult res;
    res.ranking = res.init_ranking = init.ranking;
    res.objective = res.init_objective = score(init.ranking, counts);
    res.objective_trace.push_back(res.objective);
    return res;
  }
  return ktuple_search(counts, init.ranking, k);
}

Certificate certify(const Ranking& candidate, const Ranking& truth,
                    const ComparisonCounts& counts) {
  require_same_size(candidate.size(), truth.size(), "certify");
  const std::int64_t margin = score(candidate, counts) - score(truth, counts);
  return {margin >= 0, margin};
}

}  // namespace wstrank

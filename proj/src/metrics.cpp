#include "wstrank/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace wstrank {

namespace {

std::int64_t count_inversions(std::vector<int>& v, std::vector<int>& buf,
                              std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t inv = count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
  std::size_t a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (v[b] < v[a]) {
      inv += static_cast<std::int64_t>(mid - a);
      buf[out++] = v[b++];
    } else {
      buf[out++] = v[a++];
    }
  }
  while (a < mid) buf[out++] = v[a++];
  while (b < hi) buf[out++] = v[b++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
            buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

}  // namespace

std::int64_t kendall_tau(const Ranking& pi, const Ranking& omega) {
  require_same_size(pi.size(), omega.size(), "kendall_tau");
  // Walk players in pi order; discordant pairs are inversions of omega.
  std::vector<int> seq;
  seq.reserve(static_cast<std::size_t>(pi.size()));
  for (int player : pi.order_worst_first()) seq.push_back(omega[player]);
  std::vector<int> buf(seq.size());
  return count_inversions(seq, buf, 0, seq.size());
}

double error_rate(std::int64_t tau, int n, ErrorConvention convention) {
  if (n < 2) throw InvalidArgument("error_rate needs n >= 2");
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (tau < 0 || tau > pairs) throw InvalidArgument("tau out of range");
  const double t = static_cast<double>(tau);
  return convention == ErrorConvention::kPairs
             ? t / static_cast<double>(pairs)
             : t / (2.0 * n * (n - 1.0));
}

double kendall_correlation(const Ranking& pi, const Ranking& omega) {
  const int n = pi.size();
  if (n < 2) throw InvalidArgument("kendall_correlation needs n >= 2");
  return 1.0 - 2.0 * error_rate(kendall_tau(pi, omega), n, ErrorConvention::kPairs);
}

double spearman_rho(const Ranking& pi, const Ranking& omega) {
  require_same_size(pi.size(), omega.size(), "spearman_rho");
  const int n = pi.size();
  if (n < 2) throw InvalidArgument("spearman_rho needs n >= 2");
  const std::int64_t d2 = (pi.ranks() - omega.ranks()).cast<std::int64_t>().squaredNorm();
  const double nn = n;
  return 1.0 - 6.0 * static_cast<double>(d2) / (nn * (nn * nn - 1.0));
}

QSequence::QSequence(std::vector<double> q_sorted) : q_(std::move(q_sorted)) {
  prefix_.resize(q_.size() + 1, 0.0);
  for (std::size_t k = 0; k < q_.size(); ++k) {
    if (!(q_[k] > 0.0 && q_[k] <= 1.0)) {
      throw InvalidArgument("q values must lie in (0, 1]");
    }
    if (k > 0 && q_[k] < q_[k - 1]) throw InvalidArgument("q values must be sorted");
    prefix_[k + 1] = prefix_[k] + q_[k];
  }
}

double QSequence::mean_of_smallest(std::int64_t s) const {
  if (s < 0 || static_cast<std::size_t>(s) > q_.size()) {
    throw InvalidArgument("Q(s): s out of range");
  }
  if (s == 0) return 0.0;
  return prefix_[static_cast<std::size_t>(s)] / static_cast<double>(s);
}

QSequence q_sequence(const ProbabilityMatrix& p_star) {
  const int n = p_star.size();
  std::vector<double> q;
  q.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = std::abs(2.0 * p_star(i, j) - 1.0);
      if (v == 0.0) {
        throw InvalidArgument("p*_" + std::to_string(i) + "," + std::to_string(j) +
                              " = 0.5: the true ranking is not unique");
      }
      q.push_back(v);
    }
  }
  std::sort(q.begin(), q.end());
  return QSequence(std::move(q));
}

double modified_tau(const Ranking& pi, const Ranking& pi_star, const QSequence& q) {
  const std::int64_t tau = kendall_tau(pi, pi_star);
  const double qb = q.mean_of_smallest(tau);
  return static_cast<double>(tau) * qb * qb;
}

}  // namespace wstrank

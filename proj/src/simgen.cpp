#include "wstrank/simgen.hpp"

#include "wstrank/metrics.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace wstrank {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::kUniform: return "uniform";
    case Scenario::kTwoGroup: return "two_group";
    case Scenario::kBtLatent: return "bt_latent";
  }
  return "?";
}

Scenario parse_scenario(const std::string& name) {
  if (name == "uniform" || name == "1") return Scenario::kUniform;
  if (name == "two_group" || name == "2") return Scenario::kTwoGroup;
  if (name == "bt_latent" || name == "3") return Scenario::kBtLatent;
  throw InvalidArgument("unknown scenario '" + name +
                        "' (expected uniform, two_group or bt_latent)");
}

void SimConfig::validate() const {
  if (n < 2) throw InvalidArgument("n must be >= 2");
  if (scenario == Scenario::kTwoGroup && n % 2 != 0) {
    throw InvalidArgument("two_group scenario needs an even n; got " + std::to_string(n));
  }
  if (t_max < 0) throw InvalidArgument("T must be >= 0");
  if (!(0.0 <= xi_low && xi_low <= xi_high && xi_high <= 1.0)) {
    throw InvalidArgument("need 0 <= xi_low <= xi_high <= 1");
  }
  if (replicates < 1) throw InvalidArgument("replicates must be >= 1");
  if (!(latent_scale > 0.0)) throw InvalidArgument("latent_scale must be > 0");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replicate) {
  return splitmix64(splitmix64(seed) ^ replicate);
}

TruthModel gen_probabilities(const SimConfig& config, Rng& rng) {
  config.validate();
  const int n = config.n;
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(n, n, 0.5);

  // Fills the better player's side (j > i) and its complement.
  auto set_better = [&](int i, int j, double p_ji) {
    p(j, i) = p_ji;
    p(i, j) = 1.0 - p_ji;
  };

  switch (config.scenario) {
    case Scenario::kUniform: {
      std::uniform_real_distribution<double> u(0.5, 1.0);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) set_better(i, j, u(rng));
      }
      break;
    }
    case Scenario::kTwoGroup: {
      std::uniform_real_distribution<double> same(0.75, 0.85);
      std::uniform_real_distribution<double> cross(0.65, 0.75);
      const int half = n / 2;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const bool together = (i < half) == (j < half);
          set_better(i, j, together ? same(rng) : cross(rng));
        }
      }
      break;
    }
    case Scenario::kBtLatent: {
      std::normal_distribution<double> normal(0.0, config.latent_scale);
      std::vector<double> x(static_cast<std::size_t>(n));
      for (double& v : x) v = normal(rng);
      std::sort(x.begin(), x.end());
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          set_better(i, j, 1.0 / (1.0 + std::exp(-(x[j] - x[i]))));
        }
      }
      break;
    }
  }
  return {ProbabilityMatrix(std::move(p)), Ranking::identity(n)};
}

ComparisonCounts gen_counts(const ProbabilityMatrix& p_star,
                            const SimConfig& config, Rng& rng) {
  const int n = p_star.size();
  std::uniform_real_distribution<double> xi_dist(config.xi_low, config.xi_high);
  CountMatrix wins = CountMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double xi = config.xi_low == config.xi_high ? config.xi_low : xi_dist(rng);
      std::binomial_distribution<int> games_dist(config.t_max, xi);
      const int games = games_dist(rng);
      if (games == 0) continue;
      std::binomial_distribution<int> win_dist(games, p_star(i, j));
      const int y = win_dist(rng);
      wins(i, j) = y;
      wins(j, i) = games - y;
    }
  }
  return ComparisonCounts::from_wins(wins);
}

std::string to_string(Method m) {
  switch (m) {
    case Method::kCounting: return "counting";
    case Method::kBt: return "bt";
    case Method::kUsvt: return "usvt";
    case Method::kMaster: return "master";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "counting" || name == "borda") return Method::kCounting;
  if (name == "bt") return Method::kBt;
  if (name == "usvt") return Method::kUsvt;
  if (name == "master") return Method::kMaster;
  throw InvalidArgument("unknown method '" + name +
                        "' (expected counting, bt, usvt or master)");
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::kCounting, Method::kBt,
                                           Method::kUsvt, Method::kMaster};
  return methods;
}

std::pair<ComparisonCounts, Ranking> shuffle_players(const ComparisonCounts& counts,
                                                     const Ranking& pi_star, Rng& rng) {
  const int n = counts.size();
  require_same_size(pi_star.size(), n, "shuffle_players");
  std::vector<int> from(static_cast<std::size_t>(n));
  std::iota(from.begin(), from.end(), 0);
  std::shuffle(from.begin(), from.end(), rng);
  CountMatrix wins(n, n);
  Eigen::VectorXi ranks(n);
  for (int a = 0; a < n; ++a) {
    ranks[a] = pi_star[from[a]];
    for (int b = 0; b < n; ++b) wins(a, b) = counts.wins(from[a], from[b]);
  }
  return {ComparisonCounts::from_wins(wins), Ranking(std::move(ranks))};
}

ReplicateOutcome run_replicate(const SimConfig& config, std::uint64_t replicate,
                               const std::vector<Method>& methods,
                               const StudyOptions& opts) {
  ReplicateOutcome out;
  out.seed = derive_seed(config.seed, replicate);
  Rng rng(out.seed);
  const TruthModel generated = gen_probabilities(config, rng);
  const QSequence q = q_sequence(generated.p_star);
  const auto [counts, pi_star] =
      shuffle_players(gen_counts(generated.p_star, config, rng), generated.pi_star, rng);

  for (Method m : methods) {
    MethodOutcome mo;
    const auto start = std::chrono::steady_clock::now();
    try {
      Ranking est;
      switch (m) {
        case Method::kCounting: est = borda_rank(counts, opts.borda).ranking; break;
        case Method::kBt: est = bt_fit(counts, opts.bt).ranking; break;
        case Method::kUsvt: est = usvt_rank(counts, opts.usvt).ranking; break;
        case Method::kMaster: {
          const MasterResult r = master_rank(counts, opts.master);
          est = r.ranking;
          const Certificate c = certify(r.ranking, pi_star, counts);
          mo.certified = c.ok;
          mo.margin = c.margin;
          break;
        }
      }
      mo.tau = kendall_tau(est, pi_star);
      mo.error_pairs = error_rate(mo.tau, config.n, ErrorConvention::kPairs);
      mo.error_paper = error_rate(mo.tau, config.n, ErrorConvention::kPaper);
      mo.modified_tau = modified_tau(est, pi_star, q);
      mo.ok = true;
    } catch (const Error&) {
      mo.ok = false;
    }
    mo.secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.methods.push_back(mo);
  }
  return out;
}

std::pair<double, double> mean_and_se(const std::vector<double>& xs) {
  const std::size_t k = xs.size();
  if (k == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(k);
  if (k < 2) return {mean, std::numeric_limits<double>::quiet_NaN()};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(k - 1));
  return {mean, sd / std::sqrt(static_cast<double>(k))};
}

StudyResult run_study(const SimConfig& config, const std::vector<Method>& methods,
                      const StudyOptions& opts) {
  config.validate();
  opts.master.validate();
  opts.bt.validate();
  opts.usvt.validate();
  if (methods.empty()) throw InvalidArgument("no methods selected");

  StudyResult result;
  result.config = config;
  result.methods = methods;
  result.replicates.resize(static_cast<std::size_t>(config.replicates));

  const int workers = std::clamp(opts.threads, 1, config.replicates);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int r = next++; r < config.replicates; r = next++) {
      result.replicates[r] = run_replicate(config, static_cast<std::uint64_t>(r), methods, opts);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    MethodSummary s;
    s.method = methods[mi];
    std::vector<double> pairs, paper, mod;
    int certified = 0;
    for (const auto& rep : result.replicates) {
      const MethodOutcome& mo = rep.methods[mi];
      s.secs += mo.secs;
      if (!mo.ok) {
        ++s.failures;
        continue;
      }
      pairs.push_back(mo.error_pairs);
      paper.push_back(mo.error_paper);
      mod.push_back(mo.modified_tau);
      certified += mo.certified;
    }
    s.completed = static_cast<int>(pairs.size());
    std::tie(s.mean_error_pairs, s.se_pairs) = mean_and_se(pairs);
    std::tie(s.mean_error_paper, s.se_paper) = mean_and_se(paper);
    s.mean_modified_tau = mean_and_se(mod).first;
    s.cert_rate = s.method == Method::kMaster && s.completed > 0
                      ? static_cast<double>(certified) / s.completed
                      : std::numeric_limits<double>::quiet_NaN();
    result.summaries.push_back(s);
  }
  return result;
}

namespace {

std::string fmt_num(double v, const char* spec = "%.6f") {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string study_csv(const std::vector<StudyResult>& results, bool include_timing) {
  std::ostringstream out;
  out << "scenario,n,method,mean_error_pairs,se_pairs,mean_error_paper,se_paper,"
         "cert_rate,secs\n";
  for (const auto& r : results) {
    for (const auto& s : r.summaries) {
      out << to_string(r.config.scenario) << ',' << r.config.n << ','
          << to_string(s.method) << ',' << fmt_num(s.mean_error_pairs) << ','
          << fmt_num(s.se_pairs) << ',' << fmt_num(s.mean_error_paper) << ','
          << fmt_num(s.se_paper) << ',' << fmt_num(s.cert_rate, "%.4f") << ','
          << fmt_num(include_timing ? s.secs : 0.0, "%.3f") << '\n';
    }
  }
  return out.str();
}

std::string study_json(const std::vector<StudyResult>& results, bool include_timing) {
  using nlohmann::json;
  auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
  json arr = json::array();
  for (const auto& r : results) {
    json setting;
    setting["scenario"] = to_string(r.config.scenario);
    setting["n"] = r.config.n;
    setting["t"] = r.config.t_max;
    setting["xi_low"] = r.config.xi_low;
    setting["xi_high"] = r.config.xi_high;
    setting["replicates"] = r.config.replicates;
    setting["seed"] = r.config.seed;
    json methods = json::array();
    for (const auto& s : r.summaries) {
      methods.push_back({{"method", to_string(s.method)},
                         {"completed", s.completed},
                         {"failures", s.failures},
                         {"mean_error_pairs", num(s.mean_error_pairs)},
                         {"se_pairs", num(s.se_pairs)},
                         {"mean_error_paper", num(s.mean_error_paper)},
                         {"se_paper", num(s.se_paper)},
                         {"mean_modified_tau", num(s.mean_modified_tau)},
                         {"cert_rate", num(s.cert_rate)},
                         {"secs", include_timing ? s.secs : 0.0}});
    }
    setting["methods"] = std::move(methods);
    arr.push_back(std::move(setting));
  }
  return arr.dump(2) + "\n";
}

}  // namespace wstrank

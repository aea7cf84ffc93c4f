#pragma once

// Seeded generators for synthetic tournaments and the replicated study
// harness.
//
// True rankings are pi*_i = i (1-based): higher index is the better
// player. Pairs are sampled as
//   xi_ij ~ Uniform(xi_low, xi_high),  n_ij ~ Binomial(T, xi_ij),
//   y_ij | n_ij ~ Binomial(n_ij, p*_ij).
//
// Replicate r of a study draws everything from an mt19937_64 seeded with
// derive_seed(seed, r) = splitmix64(splitmix64(seed) ^ r), so results do
// not depend on execution order or thread count.

#include "wstrank/baselines.hpp"
#include "wstrank/core.hpp"
#include "wstrank/master.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace wstrank {

enum class Scenario {
  kUniform,   // p*_ji ~ Uniform(0.5, 1) for i < j
  kTwoGroup,  // Uniform(0.75, 0.85) within a half, Uniform(0.65, 0.75) across
  kBtLatent,  // sorted normal scores through the logistic link
};

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& name);

struct SimConfig {
  Scenario scenario = Scenario::kUniform;
  int n = 100;
  int t_max = 5;
  double xi_low = 0.3;
  double xi_high = 0.5;
  int replicates = 100;
  std::uint64_t seed = 1;
  // Scenario kBtLatent draws scores from N(0, latent_scale^2). The default
  // reads N(0, 2) as variance 2; set to 2 for standard deviation 2.
  double latent_scale = 1.4142135623730951;

  void validate() const;
};

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replicate);

struct TruthModel {
  ProbabilityMatrix p_star;
  Ranking pi_star;
};

TruthModel gen_probabilities(const SimConfig& config, Rng& rng);

ComparisonCounts gen_counts(const ProbabilityMatrix& p_star,
                            const SimConfig& config, Rng& rng);

/// Relabels players by a uniformly random permutation so that index-based
/// tie-breaks carry no information about pi*. The study harness applies
/// this before running any method.
std::pair<ComparisonCounts, Ranking> shuffle_players(const ComparisonCounts& counts,
                                                     const Ranking& pi_star, Rng& rng);

enum class Method { kCounting, kBt, kUsvt, kMaster };

std::string to_string(Method m);
Method parse_method(const std::string& name);
const std::vector<Method>& all_methods();

struct StudyOptions {
  MasterOptions master;
  BtOptions bt;
  UsvtOptions usvt;
  BordaScore borda = BordaScore::kWinFractions;
  int threads = 1;
};

/// One method on one replicate.
struct MethodOutcome {
  bool ok = false;  // false when the method threw (e.g. BT not connected)
  std::int64_t tau = 0;
  double error_pairs = 0.0;
  double error_paper = 0.0;
  double modified_tau = 0.0;
  double secs = 0.0;
  bool certified = false;  // master only: L(pi_hat) >= L(pi*)
  std::int64_t margin = 0;
};

struct ReplicateOutcome {
  std::uint64_t seed = 0;
  std::vector<MethodOutcome> methods;  // parallel to StudyResult::methods
};

struct MethodSummary {
  Method method = Method::kCounting;
  int completed = 0;
  int failures = 0;
  double mean_error_pairs = 0.0;
  double se_pairs = 0.0;
  double mean_error_paper = 0.0;
  double se_paper = 0.0;
  double mean_modified_tau = 0.0;
  double cert_rate = 0.0;  // master only
  double secs = 0.0;       // total wall time over replicates
};

struct StudyResult {
  SimConfig config;
  std::vector<Method> methods;
  std::vector<MethodSummary> summaries;
  std::vector<ReplicateOutcome> replicates;
};

/// Runs one replicate: generates truth and counts, applies every method.
ReplicateOutcome run_replicate(const SimConfig& config, std::uint64_t replicate,
                               const std::vector<Method>& methods,
                               const StudyOptions& opts);

StudyResult run_study(const SimConfig& config, const std::vector<Method>& methods,
                      const StudyOptions& opts = {});

/// Mean and standard error (sample sd / sqrt(count)).
std::pair<double, double> mean_and_se(const std::vector<double>& xs);

/// Columns: scenario,n,method,mean_error_pairs,se_pairs,mean_error_paper,
/// se_paper,cert_rate,secs. With include_timing = false, secs is 0.
std::string study_csv(const std::vector<StudyResult>& results, bool include_timing = true);
std::string study_json(const std::vector<StudyResult>& results, bool include_timing = true);

}  // namespace wstrank

#include "wstrank/cli.hpp"

#include "wstrank/baselines.hpp"
#include "wstrank/comparison_data.hpp"
#include "wstrank/io.hpp"
#include "wstrank/master.hpp"
#include "wstrank/metrics.hpp"
#include "wstrank/simgen.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace wstrank::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string out_path;
  std::string format = "table";
  int threads = 1;
  std::uint64_t seed = 1;
};

struct SimulateFlags {
  std::vector<std::string> scenarios{"uniform"};
  std::vector<int> ns{100};
  int t = 5;
  double xi_low = 0.3;
  double xi_high = 0.5;
  int reps = 100;
  std::vector<std::string> methods{"counting", "bt", "usvt", "master"};
  int k = 3;
  double latent_scale = 1.4142135623730951;
  bool no_timing = false;
};

struct RankFlags {
  std::string input;
  std::string method = "master";
  int k = 3;
  std::string filter = "none";
};

struct CompareFlags {
  std::string input;
  std::vector<std::string> rankings;
  std::vector<std::string> methods;
  int k = 3;
  std::string filter = "none";
  std::vector<std::string> h2h;
};

std::string num(double v, int precision = 6) {
  std::ostringstream ss;
  ss << std::setprecision(precision) << v;
  return ss.str();
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

// Writes `text` to --out when given, otherwise to `out`.
void emit(const Common& common, const std::string& text, std::ostream& out) {
  if (common.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(common.out_path, std::ios::binary);
  if (!f) throw DataError("cannot write '" + common.out_path + "'");
  f << text;
}

std::optional<FilterPolicy> parse_filter(const std::string& name) {
  if (name == "none") return std::nullopt;
  if (name == "no-wins") return FilterPolicy::kNoWins;
  if (name == "bt-connected") return FilterPolicy::kBtConnected;
  throw InvalidArgument("unknown filter '" + name + "'");
}

ComparisonCounts load_filtered(const std::string& path, const std::string& filter) {
  ComparisonCounts counts = io::load_counts_file(path);
  if (auto policy = parse_filter(filter)) {
    counts = filter_players(counts, *policy).counts;
  }
  return counts;
}

// ---- simulate --------------------------------------------------------------

std::string study_table(const std::vector<StudyResult>& results, bool timing) {
  std::ostringstream out;
  out << "Kendall tau ranking error x100 (proportion of discordant pairs), "
         "standard error in parentheses\n";
  out << std::left << std::setw(10) << "scenario" << std::right << std::setw(6) << "n"
      << std::setw(10) << "method" << std::setw(18) << "error (se)" << std::setw(10)
      << "cert" << std::setw(10) << "secs" << "\n";
  for (const auto& r : results) {
    for (const auto& s : r.summaries) {
      const std::string cell = fixed(100 * s.mean_error_pairs, 2) + " (" +
                               fixed(100 * s.se_pairs, 2) + ")";
      out << std::left << std::setw(10) << to_string(r.config.scenario) << std::right
          << std::setw(6) << r.config.n << std::setw(10) << to_string(s.method)
          << std::setw(18) << cell << std::setw(10)
          << (s.method == Method::kMaster ? fixed(s.cert_rate, 2) : std::string("-"))
          << std::setw(10) << fixed(timing ? s.secs : 0.0, 2) << "\n";
    }
  }
  return out.str();
}

int cmd_simulate(const Common& common, const SimulateFlags& f, std::ostream& out) {
  std::vector<Method> methods;
  for (const auto& m : f.methods) methods.push_back(parse_method(m));
  StudyOptions opts;
  opts.master.k = f.k;
  opts.threads = common.threads;

  std::vector<StudyResult> results;
  for (const auto& scen : f.scenarios) {
    for (int n : f.ns) {
      SimConfig cfg;
      cfg.scenario = parse_scenario(scen);
      cfg.n = n;
      cfg.t_max = f.t;
      cfg.xi_low = f.xi_low;
      cfg.xi_high = f.xi_high;
      cfg.replicates = f.reps;
      cfg.seed = common.seed;
      cfg.latent_scale = f.latent_scale;
      cfg.validate();
      results.push_back(run_study(cfg, methods, opts));
    }
  }
  const bool timing = !f.no_timing;
  if (common.format == "csv") {
    emit(common, study_csv(results, timing), out);
  } else if (common.format == "json") {
    emit(common, study_json(results, timing), out);
  } else {
    emit(common, study_table(results, timing), out);
  }
  return kOk;
}

// ---- rank ------------------------------------------------------------------

struct MethodRun {
  Method method;
  Eigen::VectorXd scores;
  Ranking ranking;
  std::optional<MasterResult> master;
};

MethodRun run_method(Method m, const ComparisonCounts& counts, int k) {
  MethodRun run{m, {}, {}, std::nullopt};
  switch (m) {
    case Method::kCounting: {
      auto r = borda_rank(counts);
      run.scores = std::move(r.scores);
      run.ranking = std::move(r.ranking);
      break;
    }
    case Method::kBt: {
      auto r = bt_fit(counts);
      run.scores = std::move(r.beta);
      run.ranking = std::move(r.ranking);
      break;
    }
    case Method::kUsvt: {
      auto r = usvt_rank(counts);
      run.scores = r.estimate.probs().rowwise().sum();
      run.ranking = std::move(r.ranking);
      break;
    }
    case Method::kMaster: {
      MasterOptions opts;
      opts.k = k;
      auto r = master_rank(counts, opts);
      run.scores = r.ranking.ranks().cast<double>();
      run.ranking = r.ranking;
      run.master = std::move(r);
      break;
    }
  }
  return run;
}

int cmd_rank(const Common& common, const RankFlags& f, std::ostream& out,
             std::ostream& err) {
  const Method method = parse_method(f.method);
  const ComparisonCounts counts = load_filtered(f.input, f.filter);
  const MethodRun run = run_method(method, counts, f.k);
  const auto& labels = counts.labels();
  const auto best_first = run.ranking.order_best_first();

  std::ostringstream text;
  if (common.format == "json") {
    json j;
    j["method"] = to_string(method);
    j["n"] = counts.size();
    json players = json::array();
    for (std::size_t pos = 0; pos < best_first.size(); ++pos) {
      const int p = best_first[pos];
      players.push_back({{"position", pos + 1}, {"label", labels[p]}, {"score", run.scores[p]}});
    }
    j["players"] = std::move(players);
    if (run.master) {
      std::vector<int> ranks(run.master->ranking.ranks().data(),
                             run.master->ranking.ranks().data() + counts.size());
      j["labels"] = labels;
      j["ranking"] = ranks;
      j["objective"] = run.master->objective;
      j["init_objective"] = run.master->init_objective;
      j["sweeps"] = run.master->sweeps;
    }
    text << j.dump(2) << "\n";
  } else if (common.format == "csv") {
    text << "position,label,score\n";
    for (std::size_t pos = 0; pos < best_first.size(); ++pos) {
      const int p = best_first[pos];
      text << pos + 1 << ',' << io::csv_field(labels[p]) << ',' << num(run.scores[p], 10)
           << '\n';
    }
    if (run.master) {
      err << "objective=" << run.master->objective
          << " init_objective=" << run.master->init_objective
          << " sweeps=" << run.master->sweeps << "\n";
    }
  } else {
    text << "method: " << to_string(method) << "  players: " << counts.size() << "\n";
    if (run.master) {
      text << "objective: " << run.master->objective
           << "  init_objective: " << run.master->init_objective
           << "  sweeps: " << run.master->sweeps << "\n";
    }
    std::size_t width = 5;
    for (const auto& l : labels) width = std::max(width, l.size());
    for (std::size_t pos = 0; pos < best_first.size(); ++pos) {
      const int p = best_first[pos];
      text << std::setw(5) << pos + 1 << "  " << std::left << std::setw(static_cast<int>(width))
           << labels[p] << std::right << "  " << num(run.scores[p]) << "\n";
    }
  }
  emit(common, text.str(), out);
  return kOk;
}

// ---- compare ---------------------------------------------------------------

// Rebuilds two label lists as rankings over a common index.
std::pair<Ranking, Ranking> align(const std::vector<std::string>& a_best_first,
                                  const std::vector<std::string>& b_best_first) {
  std::set<std::string> a(a_best_first.begin(), a_best_first.end());
  std::set<std::string> b(b_best_first.begin(), b_best_first.end());
  if (a.size() != a_best_first.size() || b.size() != b_best_first.size()) {
    throw DataError("ranking lists contain duplicate labels");
  }
  if (a != b) {
    std::vector<std::string> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(diff));
    std::string msg = "rankings cover different players; symmetric difference:";
    for (const auto& d : diff) msg += " '" + d + "'";
    throw DataError(msg);
  }
  std::map<std::string, int> index;
  for (const auto& l : a_best_first) index.emplace(l, static_cast<int>(index.size()));
  auto to_ranking = [&](const std::vector<std::string>& best_first) {
    std::vector<int> worst_first;
    for (auto it = best_first.rbegin(); it != best_first.rend(); ++it) {
      worst_first.push_back(index.at(*it));
    }
    return Ranking::from_order_worst_first(worst_first);
  };
  return {to_ranking(a_best_first), to_ranking(b_best_first)};
}

std::vector<std::string> labels_best_first(const MethodRun& run,
                                           const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (int p : run.ranking.order_best_first()) out.push_back(labels[p]);
  return out;
}

int cmd_compare(const Common& common, const CompareFlags& f, std::ostream& out) {
  std::optional<ComparisonCounts> counts;
  if (!f.input.empty()) counts = load_filtered(f.input, f.filter);

  std::vector<std::string> names;
  std::vector<std::string> a, b;
  if (!f.rankings.empty()) {
    if (f.rankings.size() != 2) throw InvalidArgument("--rankings takes exactly two files");
    a = io::read_ranked_list_file(f.rankings[0]).best_first;
    b = io::read_ranked_list_file(f.rankings[1]).best_first;
    names = f.rankings;
  } else if (counts && f.methods.size() == 2) {
    const Method ma = parse_method(f.methods[0]);
    const Method mb = parse_method(f.methods[1]);
    a = labels_best_first(run_method(ma, *counts, f.k), counts->labels());
    b = labels_best_first(run_method(mb, *counts, f.k), counts->labels());
    names = {to_string(ma), to_string(mb)};
  } else if (f.h2h.empty()) {
    throw InvalidArgument("compare needs --rankings a,b or --input with --methods a,b");
  }

  struct H2h {
    std::string a, b;
    int a_wins, b_wins;
  };
  std::vector<H2h> records;
  if (!f.h2h.empty()) {
    if (!counts) throw InvalidArgument("--h2h needs --input");
    std::map<std::string, int> index;
    for (int i = 0; i < counts->size(); ++i) index[counts->labels()[i]] = i;
    for (const auto& spec : f.h2h) {
      const auto comma = spec.find(',');
      if (comma == std::string::npos) throw InvalidArgument("--h2h expects 'A,B'");
      const std::string pa = spec.substr(0, comma), pb = spec.substr(comma + 1);
      for (const auto& p : {pa, pb}) {
        if (!index.count(p)) throw DataError("unknown player '" + p + "' in --h2h");
      }
      const int ia = index[pa], ib = index[pb];
      records.push_back({pa, pb, counts->wins(ia, ib), counts->wins(ib, ia)});
    }
  }

  const bool have_pair = !a.empty() || !b.empty();
  std::int64_t tau = 0;
  double tau_corr = 0.0, rho = 0.0;
  std::size_t n = 0;
  if (have_pair) {
    auto [ra, rb] = align(a, b);
    n = a.size();
    tau = kendall_tau(ra, rb);
    tau_corr = kendall_correlation(ra, rb);
    rho = spearman_rho(ra, rb);
  }

  std::ostringstream text;
  if (common.format == "json") {
    json j;
    if (have_pair) {
      j["a"] = names[0];
      j["b"] = names[1];
      j["n"] = n;
      j["kendall_distance"] = tau;
      j["kendall_tau"] = tau_corr;
      j["spearman_rho"] = rho;
    }
    json h = json::array();
    for (const auto& r : records) {
      h.push_back({{"a", r.a}, {"b", r.b}, {"a_wins", r.a_wins}, {"b_wins", r.b_wins}});
    }
    j["h2h"] = std::move(h);
    text << j.dump(2) << "\n";
  } else if (common.format == "csv") {
    text << "metric,value\n";
    if (have_pair) {
      text << "n," << n << "\nkendall_distance," << tau << "\nkendall_tau," << num(tau_corr, 12)
           << "\nspearman_rho," << num(rho, 12) << "\n";
    }
    for (const auto& r : records) {
      text << "h2h " << io::csv_field(r.a + " vs " + r.b) << ',' << r.a_wins << ':' << r.b_wins
           << "\n";
    }
  } else {
    if (have_pair) {
      text << names[0] << " vs " << names[1] << " (" << n << " players)\n"
           << "  Kendall distance: " << tau << "\n"
           << "  Kendall tau:      " << fixed(tau_corr, 4) << "\n"
           << "  Spearman rho:     " << fixed(rho, 4) << "\n";
    }
    for (const auto& r : records) {
      text << "  " << r.a << " vs " << r.b << ": " << r.a_wins << ":" << r.b_wins << "\n";
    }
  }
  emit(common, text.str(), out);
  return kOk;
}

void add_common(CLI::App& app, Common& c) {
  app.add_option("--out", c.out_path, "Write output to this file");
  app.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "Random seed");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank aggregation from pairwise comparisons under weak stochastic transitivity",
               "wstrank"};
  app.require_subcommand(1);
  Common common;
  add_common(app, common);
  app.fallthrough();

  SimulateFlags sf;
  auto* sim = app.add_subcommand("simulate", "Replicated simulation study");
  sim->add_option("--scenario", sf.scenarios, "uniform, two_group, bt_latent (comma list)")
      ->delimiter(',');
  sim->add_option("--n", sf.ns, "Player counts (comma list)")->delimiter(',');
  sim->add_option("--t", sf.t, "Maximum games per pair T");
  sim->add_option("--xi-low", sf.xi_low, "Lower bound of pair sampling probability");
  sim->add_option("--xi-high", sf.xi_high, "Upper bound of pair sampling probability");
  sim->add_option("--reps", sf.reps, "Replicates per setting");
  sim->add_option("--methods", sf.methods, "counting, bt, usvt, master (comma list)")
      ->delimiter(',');
  sim->add_option("--k", sf.k, "K-tuple length for master");
  sim->add_option("--latent-scale", sf.latent_scale,
                  "Standard deviation of bt_latent scores (default sqrt(2))");
  sim->add_flag("--no-timing", sf.no_timing, "Report secs as 0 for byte-stable output");

  RankFlags rf;
  auto* rank = app.add_subcommand("rank", "Rank players from a match file");
  rank->add_option("--input", rf.input, "Match CSV or counts JSON")->required();
  rank->add_option("--method", rf.method, "counting, bt, usvt or master");
  rank->add_option("--k", rf.k, "K-tuple length for master");
  rank->add_option("--filter", rf.filter, "none, no-wins or bt-connected")
      ->check(CLI::IsMember({"none", "no-wins", "bt-connected"}));

  CompareFlags cf;
  auto* cmp = app.add_subcommand("compare", "Correlate two rankings");
  cmp->add_option("--input", cf.input, "Match CSV or counts JSON");
  cmp->add_option("--rankings", cf.rankings, "Two ranking files a,b")->delimiter(',');
  cmp->add_option("--methods", cf.methods, "Two methods a,b run on --input")->delimiter(',');
  cmp->add_option("--k", cf.k, "K-tuple length for master");
  cmp->add_option("--filter", cf.filter, "none, no-wins or bt-connected")
      ->check(CLI::IsMember({"none", "no-wins", "bt-connected"}));
  cmp->add_option("--h2h", cf.h2h, "Head-to-head record for 'A,B' (repeatable)");

  for (auto* sub : {sim, rank, cmp}) add_common(*sub, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (*sim) return cmd_simulate(common, sf, out);
    if (*rank) return cmd_rank(common, rf, out, err);
    return cmd_compare(common, cf, out);
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << "\n";
    return kDataError;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericError;
  }
}

}  // namespace wstrank::cli

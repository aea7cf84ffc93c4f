#include "wstrank/comparison_data.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace wstrank {

ComparisonCounts load_matches(std::span<const MatchRecord> records) {
  if (records.empty()) throw DataError("no match records");

  std::unordered_map<std::string, int> index;
  std::vector<std::string> labels;
  auto lookup = [&](const std::string& id) {
    auto [it, inserted] = index.emplace(id, static_cast<int>(labels.size()));
    if (inserted) labels.push_back(id);
    return it->second;
  };

  std::vector<std::pair<int, int>> games;
  games.reserve(records.size());
  for (std::size_t row = 0; row < records.size(); ++row) {
    const MatchRecord& r = records[row];
    if (r.winner.empty() || r.loser.empty()) {
      throw DataError("malformed record " + std::to_string(row + 1) +
                      ": empty player identifier");
    }
    if (r.winner == r.loser) {
      throw DataError("malformed record " + std::to_string(row + 1) +
                      ": winner and loser are both '" + r.winner + "'");
    }
    const int w = lookup(r.winner);
    const int l = lookup(r.loser);
    games.emplace_back(w, l);
  }

  const int n = static_cast<int>(labels.size());
  CountMatrix wins = CountMatrix::Zero(n, n);
  for (auto [w, l] : games) wins(w, l) += 1;
  return ComparisonCounts::from_wins(wins, std::move(labels));
}

std::vector<MatchRecord> to_matches(const ComparisonCounts& counts) {
  std::vector<MatchRecord> out;
  out.reserve(static_cast<std::size_t>(counts.total_games()));
  const auto& labels = counts.labels();
  for (int i = 0; i < counts.size(); ++i) {
    for (int j = 0; j < counts.size(); ++j) {
      for (int g = 0; g < counts.wins(i, j); ++g) {
        out.push_back({labels[i], labels[j]});
      }
    }
  }
  return out;
}

namespace {

ComparisonCounts restrict_to(const ComparisonCounts& counts,
                             const std::vector<int>& keep) {
  const int m = static_cast<int>(keep.size());
  CountMatrix wins(m, m);
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (int a = 0; a < m; ++a) {
    labels.push_back(counts.labels()[keep[a]]);
    for (int b = 0; b < m; ++b) wins(a, b) = counts.wins(keep[a], keep[b]);
  }
  return ComparisonCounts::from_wins(wins, std::move(labels));
}

}  // namespace

std::vector<std::vector<int>> win_graph_components(const CountMatrix& wins) {
  // Iterative Tarjan.
  const int n = static_cast<int>(wins.rows());
  std::vector<int> idx(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<int>> comps;
  int counter = 0;

  struct Frame {
    int v;
    int next;
  };
  std::vector<Frame> call;
  for (int root = 0; root < n; ++root) {
    if (idx[root] != -1) continue;
    call.push_back({root, 0});
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const int v = f.v;
      if (f.next < n) {
        const int w = f.next++;
        if (wins(v, w) <= 0) continue;
        if (idx[w] == -1) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
        continue;
      }
      if (low[v] == idx[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

bool win_graph_strongly_connected(const CountMatrix& wins) {
  return win_graph_components(wins).size() <= 1;
}

FilteredCounts filter_players(const ComparisonCounts& counts,
                              FilterPolicy policy) {
  std::vector<int> keep;
  for (int i = 0; i < counts.size(); ++i) {
    if (counts.win_counts().row(i).sum() > 0) keep.push_back(i);
  }
  if (keep.empty()) throw DataError("filtering removed every player");

  ComparisonCounts reduced = restrict_to(counts, keep);
  if (policy == FilterPolicy::kBtConnected) {
    const auto comps = win_graph_components(reduced.win_counts());
    // Largest component; ties go to the one holding the smallest index.
    const std::vector<int>* best = &comps.front();
    for (const auto& c : comps) {
      if (c.size() > best->size()) best = &c;
    }
    std::vector<int> kept_original;
    kept_original.reserve(best->size());
    for (int v : *best) kept_original.push_back(keep[v]);
    reduced = restrict_to(reduced, *best);
    keep = std::move(kept_original);
  }
  return {std::move(reduced), std::move(keep)};
}

WstReport check_wst(const ProbabilityMatrix& probs, double tol) {
  if (!(tol >= 0.0)) throw InvalidArgument("WST tolerance must be >= 0");
  const int n = probs.size();
  const auto& p = probs.probs();
  WstReport report;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i || p(i, j) < 0.5) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (p(j, k) >= 0.5 && p(i, k) < 0.5 - tol) {
          report.violations.push_back({i, j, k});
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(p(i, j) - 0.5) <= tol) report.near_ties.emplace_back(i, j);
    }
  }
  return report;
}

}  // namespace wstrank

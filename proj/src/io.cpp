#include "wstrank/io.hpp"

#include "wstrank/comparison_data.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace wstrank::io {

namespace {

using nlohmann::json;

// Splits one logical CSV record. Returns false at end of input. Quoted
// fields may span lines.
bool next_record(std::istream& in, std::vector<std::string>& fields,
                 int& line) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  bool was_quoted = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty()) {
        throw DataError("line " + std::to_string(line) +
                        ": stray quote inside unquoted field");
      }
      in_quotes = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '\r') {
      // tolerate CRLF
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else {
      if (was_quoted) {
        throw DataError("line " + std::to_string(line) +
                        ": characters after closing quote");
      }
      field.push_back(c);
    }
  }
  if (in_quotes) {
    throw DataError("line " + std::to_string(line) + ": unterminated quote");
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

std::vector<std::vector<int>> matrix_rows(const CountMatrix& m) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    rows[i].resize(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  }
  return rows;
}

CountMatrix matrix_from_json(const json& j, std::size_t n, const char* name) {
  if (!j.is_array() || j.size() != n) {
    throw DataError(std::string("counts JSON: '") + name + "' must have " +
                    std::to_string(n) + " rows");
  }
  CountMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) {
      throw DataError(std::string("counts JSON: row ") + std::to_string(i) +
                      " of '" + name + "' has the wrong length");
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (!j[i][k].is_number_integer()) {
        throw DataError(std::string("counts JSON: '") + name +
                        "' entries must be integers");
      }
      m(i, k) = j[i][k].get<int>();
    }
  }
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::vector<MatchRecord> read_match_csv(std::istream& in) {
  std::vector<std::string> fields;
  int line = 1;
  if (!next_record(in, fields, line)) throw DataError("match CSV is empty");
  if (!fields.empty() && fields[0].rfind("\xEF\xBB\xBF", 0) == 0) {
    fields[0].erase(0, 3);
  }
  if (fields.size() != 2 || fields[0] != "winner" || fields[1] != "loser") {
    throw DataError("match CSV header must be 'winner,loser'");
  }
  std::vector<MatchRecord> rows;
  while (true) {
    ++line;
    const int start = line;
    if (!next_record(in, fields, line)) break;
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != 2) {
      throw DataError("line " + std::to_string(start) + ": expected 2 fields, got " +
                      std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw DataError("line " + std::to_string(start) +
                      ": empty player identifier");
    }
    if (fields[0] == fields[1]) {
      throw DataError("line " + std::to_string(start) + ": winner and loser are both '" +
                      fields[0] + "'");
    }
    rows.push_back({std::move(fields[0]), std::move(fields[1])});
  }
  return rows;
}

std::vector<MatchRecord> read_match_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_match_csv(in);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_match_csv(std::ostream& out, const std::vector<MatchRecord>& rows) {
  out << "winner,loser\n";
  for (const auto& r : rows) {
    out << csv_field(r.winner) << ',' << csv_field(r.loser) << '\n';
  }
}

std::string counts_to_json(const ComparisonCounts& counts) {
  json j;
  j["labels"] = counts.labels();
  j["pair_counts"] = matrix_rows(counts.pair_counts());
  j["win_counts"] = matrix_rows(counts.win_counts());
  return j.dump();
}

ComparisonCounts counts_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("counts JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("pair_counts") || !j.contains("win_counts")) {
    throw DataError("counts JSON must contain 'pair_counts' and 'win_counts'");
  }
  const std::size_t n = j["pair_counts"].size();
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw DataError("counts JSON: labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  try {
    return ComparisonCounts(matrix_from_json(j["pair_counts"], n, "pair_counts"),
                            matrix_from_json(j["win_counts"], n, "win_counts"),
                            std::move(labels));
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("counts JSON: ") + e.what());
  }
}

ComparisonCounts load_counts_file(const std::string& path) {
  if (ends_with(path, ".json")) return counts_from_json(read_file(path));
  const auto rows = read_match_csv_file(path);
  return load_matches(rows);
}

RankedList read_ranked_list_file(const std::string& path) {
  const std::string text = read_file(path);
  RankedList out;
  if (ends_with(path, ".json")) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw DataError("ranking JSON '" + path + "': " + e.what());
    }
    if (!j.contains("players") || !j["players"].is_array()) {
      throw DataError("ranking JSON '" + path + "' has no 'players' array");
    }
    for (const auto& p : j["players"]) {
      out.best_first.push_back(p.at("label").get<std::string>());
    }
    return out;
  }
  std::istringstream in(text);
  std::vector<std::string> fields;
  int line = 1;
  if (!next_record(in, fields, line)) throw DataError("ranking CSV '" + path + "' is empty");
  int label_col = -1;
  for (std::size_t c = 0; c < fields.size(); ++c) {
    if (fields[c] == "label") label_col = static_cast<int>(c);
  }
  if (label_col < 0) throw DataError("ranking CSV '" + path + "' has no 'label' column");
  while (true) {
    ++line;
    if (!next_record(in, fields, line)) break;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (static_cast<int>(fields.size()) <= label_col) {
      throw DataError("ranking CSV '" + path + "' line " + std::to_string(line) +
                      ": missing label");
    }
    out.best_first.push_back(fields[label_col]);
  }
  return out;
}

}  // namespace wstrank::io

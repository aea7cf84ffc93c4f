#pragma once

// File formats: match CSV (`winner,loser`), counts JSON and ranking
// artifacts written by `wstrank rank`.

#include "wstrank/core.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace wstrank::io {

/// Parses RFC 4180 style CSV with a `winner,loser` header. Quoted fields
/// may contain commas and doubled quotes. Throws DataError naming the line
/// of any malformed row.
std::vector<MatchRecord> read_match_csv(std::istream& in);
std::vector<MatchRecord> read_match_csv_file(const std::string& path);
void write_match_csv(std::ostream& out, const std::vector<MatchRecord>& rows);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

/// {"labels": [...], "pair_counts": [[...]], "win_counts": [[...]]}
std::string counts_to_json(const ComparisonCounts& counts);
ComparisonCounts counts_from_json(const std::string& text);

/// Loads either a match CSV or a counts JSON file (by `.json` extension).
ComparisonCounts load_counts_file(const std::string& path);

/// A ranking read back from a ranking artifact: labels best first.
struct RankedList {
  std::vector<std::string> best_first;
};

/// Reads the CSV (`position,label,...`) or JSON (`{"players": [...]}`)
/// output of the rank command.
RankedList read_ranked_list_file(const std::string& path);

}  // namespace wstrank::io

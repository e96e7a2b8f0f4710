#pragma once

#include <string>
#include <vector>

#include "uqpt/types.hpp"

namespace uqpt {

/// One measured state under one measurement type: d outcome counts
/// summing to n_c.
struct CountsRecord {
  std::string state;
  std::string measurement;
  CountVector counts;
};

struct CountsFile {
  int n_qb = 0;
  std::int64_t n_c = 0;
  std::vector<std::string> measurements;
  std::vector<std::string> states;
  std::vector<CountsRecord> records;
};

struct LoadedCounts {
  CountsFile data;
  std::vector<std::string> warnings;  // e.g. record sums that disagree with n_c
};

/// JSON schema:
/// { "n_qb": int, "n_c": int, "measurements": [string], "states": [string],
///   "records": [ { "state": s, "measurement": m, "counts": [int x d] } ] }
LoadedCounts read_counts_file(const std::string& path);
void write_counts_file(const CountsFile& file, const std::string& path);

/// CSV layout: header row "MEAS OUTCOME" followed by the state labels; each
/// row is "<measurement> <outcome>" followed by one integer per state.
LoadedCounts read_counts_csv(const std::string& path);
void write_counts_csv(const CountsFile& file, const std::string& path);

/// Dispatch on extension: ".csv" uses the CSV reader, anything else JSON.
LoadedCounts read_counts_auto(const std::string& path);

/// Label of the state measured after k applications of the process starting
/// from initial state j (1-based): "M v1", "M^2 v3", ...
std::string state_label(int j, int k);

/// Parse a state label back into (j, k); returns false on foreign labels.
bool parse_state_label(const std::string& label, int& j, int& k);

}  // namespace uqpt

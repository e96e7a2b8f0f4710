#include "uqpt/counts.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "uqpt/measurement.hpp"

namespace uqpt {

using nlohmann::json;

namespace {

void check_schema(const CountsFile& f, std::vector<std::string>& warnings) {
  const Eigen::Index d = Eigen::Index(1) << f.n_qb;
  for (const auto& r : f.records) {
    if (r.counts.size() != d) {
      throw ValidationError("record (" + r.state + ", " + r.measurement + ") has " +
                            std::to_string(r.counts.size()) + " counts, expected " +
                            std::to_string(d));
    }
    if ((r.counts.array() < 0).any()) {
      throw ValidationError("record (" + r.state + ", " + r.measurement +
                            ") has negative counts");
    }
    const std::int64_t sum = r.counts.sum();
    if (sum != f.n_c) {
      warnings.push_back("record (" + r.state + ", " + r.measurement + ") sums to " +
                         std::to_string(sum) + ", declared n_c = " + std::to_string(f.n_c));
    }
  }
}

}  // namespace

LoadedCounts read_counts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open counts file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("cannot parse counts file " + path + ": " + e.what());
  }
  LoadedCounts out;
  try {
    out.data.n_qb = j.at("n_qb").get<int>();
    out.data.n_c = j.at("n_c").get<std::int64_t>();
    out.data.measurements = j.at("measurements").get<std::vector<std::string>>();
    out.data.states = j.at("states").get<std::vector<std::string>>();
    for (const auto& rec : j.at("records")) {
      CountsRecord r;
      r.state = rec.at("state").get<std::string>();
      r.measurement = rec.at("measurement").get<std::string>();
      const auto counts = rec.at("counts").get<std::vector<std::int64_t>>();
      r.counts = Eigen::Map<const CountVector>(counts.data(), counts.size());
      out.data.records.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ValidationError("counts file " + path + " does not match the schema: " + e.what());
  }
  check_schema(out.data, out.warnings);
  return out;
}

void write_counts_file(const CountsFile& file, const std::string& path) {
  json j;
  j["n_qb"] = file.n_qb;
  j["n_c"] = file.n_c;
  j["measurements"] = file.measurements;
  j["states"] = file.states;
  j["records"] = json::array();
  for (const auto& r : file.records) {
    json rec;
    rec["state"] = r.state;
    rec["measurement"] = r.measurement;
    rec["counts"] = std::vector<std::int64_t>(r.counts.data(), r.counts.data() + r.counts.size());
    j["records"].push_back(std::move(rec));
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write counts file: " + path);
  out << j.dump(1) << '\n';
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.erase(0, 1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\r' || cell.back() == '\t'))
      cell.pop_back();
    cells.push_back(cell);
  }
  return cells;
}

}  // namespace

LoadedCounts read_counts_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open counts file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty counts CSV: " + path);
  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "MEAS OUTCOME") {
    throw ValidationError("counts CSV must start with a 'MEAS OUTCOME' column: " + path);
  }
  std::vector<std::string> states(header.begin() + 1, header.end());
  if (states.empty()) throw ValidationError("counts CSV has no state columns: " + path);

  struct Row {
    std::string measurement;
    Eigen::Index outcome;
    std::vector<std::int64_t> cells;
  };
  std::vector<Row> rows;
  std::vector<std::string> measurements;
  int n_qb = -1;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != states.size() + 1) {
      throw ValidationError("counts CSV line " + std::to_string(line_no) + ": expected " +
                            std::to_string(states.size() + 1) + " cells, got " +
                            std::to_string(cells.size()));
    }
    const auto space = cells[0].find(' ');
    if (space == std::string::npos) {
      throw ValidationError("counts CSV line " + std::to_string(line_no) +
                            ": first cell must be '<measurement> <outcome>'");
    }
    Row row;
    row.measurement = cells[0].substr(0, space);
    const std::string outcome = cells[0].substr(space + 1);
    if (n_qb < 0) n_qb = static_cast<int>(outcome.size());
    if (static_cast<int>(outcome.size()) != n_qb) {
      throw ValidationError("counts CSV line " + std::to_string(line_no) +
                            ": inconsistent outcome label length");
    }
    row.outcome = 0;
    for (char c : outcome) {
      if (c != '0' && c != '1') {
        throw ValidationError("counts CSV line " + std::to_string(line_no) +
                              ": outcome label must be binary, got '" + outcome + "'");
      }
      row.outcome = (row.outcome << 1) | (c == '1' ? 1 : 0);
    }
    for (size_t i = 1; i < cells.size(); ++i) {
      std::int64_t v = 0;
      const auto res = std::from_chars(cells[i].data(), cells[i].data() + cells[i].size(), v);
      if (res.ec != std::errc() || res.ptr != cells[i].data() + cells[i].size()) {
        throw ValidationError("counts CSV line " + std::to_string(line_no) + ": cell '" +
                              cells[i] + "' is not an integer");
      }
      row.cells.push_back(v);
    }
    if (measurements.empty() || measurements.back() != row.measurement) {
      if (std::find(measurements.begin(), measurements.end(), row.measurement) !=
          measurements.end()) {
        throw ValidationError("counts CSV line " + std::to_string(line_no) +
                              ": measurement blocks must be contiguous");
      }
      measurements.push_back(row.measurement);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("counts CSV has no data rows: " + path);

  const Eigen::Index d = Eigen::Index(1) << n_qb;
  LoadedCounts out;
  out.data.n_qb = n_qb;
  out.data.measurements = measurements;
  out.data.states = states;
  // assemble one record per (state, measurement) from the pivoted rows
  for (size_t s = 0; s < states.size(); ++s) {
    for (const auto& meas : measurements) {
      CountsRecord r;
      r.state = states[s];
      r.measurement = meas;
      r.counts = CountVector::Zero(d);
      for (const auto& row : rows) {
        if (row.measurement == meas) r.counts(row.outcome) = row.cells[s];
      }
      out.data.records.push_back(std::move(r));
    }
  }
  // declared n_c is the modal record sum
  std::vector<std::int64_t> sums;
  for (const auto& r : out.data.records) sums.push_back(r.counts.sum());
  std::vector<std::int64_t> sorted = sums;
  std::sort(sorted.begin(), sorted.end());
  std::int64_t best = sorted.front();
  size_t best_run = 0, run = 1;
  for (size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      if (run > best_run) {
        best_run = run;
        best = sorted[i - 1];
      }
      run = 1;
    }
  }
  out.data.n_c = best;
  check_schema(out.data, out.warnings);
  return out;
}

void write_counts_csv(const CountsFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write counts file: " + path);
  const Eigen::Index d = Eigen::Index(1) << file.n_qb;
  out << "MEAS OUTCOME";
  for (const auto& s : file.states) out << ',' << s;
  out << '\n';
  for (const auto& meas : file.measurements) {
    for (Eigen::Index o = 0; o < d; ++o) {
      out << meas << ' ' << outcome_label(o, file.n_qb);
      for (const auto& s : file.states) {
        const CountsRecord* found = nullptr;
        for (const auto& r : file.records) {
          if (r.state == s && r.measurement == meas) {
            found = &r;
            break;
          }
        }
        if (!found) throw ValidationError("missing record (" + s + ", " + meas + ")");
        out << ',' << found->counts(o);
      }
      out << '\n';
    }
  }
}

LoadedCounts read_counts_auto(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    return read_counts_csv(path);
  }
  return read_counts_file(path);
}

std::string state_label(int j, int k) {
  if (k == 1) return "M v" + std::to_string(j);
  return "M^" + std::to_string(k) + " v" + std::to_string(j);
}

bool parse_state_label(const std::string& label, int& j, int& k) {
  if (label.size() < 4 || label[0] != 'M') return false;
  size_t pos = 1;
  k = 1;
  if (label[pos] == '^') {
    ++pos;
    size_t end = label.find(' ', pos);
    if (end == std::string::npos) return false;
    const auto res = std::from_chars(label.data() + pos, label.data() + end, k);
    if (res.ec != std::errc() || res.ptr != label.data() + end) return false;
    pos = end;
  }
  if (pos >= label.size() || label[pos] != ' ') return false;
  ++pos;
  if (pos >= label.size() || label[pos] != 'v') return false;
  ++pos;
  const auto res = std::from_chars(label.data() + pos, label.data() + label.size(), j);
  return res.ec == std::errc() && res.ptr == label.data() + label.size() && j >= 1 && k >= 1;
}

}  // namespace uqpt

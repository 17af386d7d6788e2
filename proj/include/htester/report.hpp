#pragma once

// Report rows and their serialization. CSV has a fixed header order; floats
// are printed with 17 significant digits so parse(emit(rows)) == rows.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "htester/spec_format.hpp"

namespace htester {

struct ReportRow {
  std::string scenario;
  int n = 0;
  double eps = 0.0;
  double delta = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string verdict;  // accept | reject | pass | fail
  std::uint64_t samples_used = 0;
  double wall_ms = 0.0;
  std::string diag_digest;  // 16 hex digits

  bool operator==(const ReportRow&) const = default;
};

enum class ReportFormat { Csv, JsonLines };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json-lines" || s == "jsonl") return ReportFormat::JsonLines;
  throw ConfigError("unknown report format '" + s + "'");
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr const char* kCsvHeader =
    "scenario,n,eps,delta,trial,seed,verdict,samples_used,wall_ms,diag_digest";

inline std::string emit_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.n << ',' << format_double(r.eps) << ','
        << format_double(r.delta) << ',' << r.trial << ',' << r.seed << ','
        << r.verdict << ',' << r.samples_used << ','
        << format_double(r.wall_ms) << ',' << r.diag_digest << "\n";
  }
  return out.str();
}

inline nlohmann::json row_to_json(const ReportRow& r) {
  return nlohmann::json{
      {"scenario", r.scenario},   {"n", r.n},
      {"eps", r.eps},             {"delta", r.delta},
      {"trial", r.trial},         {"seed", r.seed},
      {"verdict", r.verdict},     {"samples_used", r.samples_used},
      {"wall_ms", r.wall_ms},     {"diag_digest", r.diag_digest}};
}

inline std::string emit_json_lines(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  for (const auto& r : rows) out << row_to_json(r).dump() << "\n";
  return out.str();
}

inline std::string emit_report(const std::vector<ReportRow>& rows,
                               ReportFormat fmt) {
  return fmt == ReportFormat::Csv ? emit_csv(rows) : emit_json_lines(rows);
}

inline void write_report(const std::vector<ReportRow>& rows, ReportFormat fmt,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output path: " + path);
  out << emit_report(rows, fmt);
  if (!out) throw ConfigError("write failed: " + path);
}

inline std::vector<ReportRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw ConfigError("csv: bad header");
  }
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        f.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    f.push_back(cur);
    if (f.size() != 10) throw ConfigError("csv: bad row: " + line);
    ReportRow r;
    r.scenario = f[0];
    r.n = std::stoi(f[1]);
    r.eps = std::stod(f[2]);
    r.delta = std::stod(f[3]);
    r.trial = std::stoi(f[4]);
    r.seed = std::stoull(f[5]);
    r.verdict = f[6];
    r.samples_used = std::stoull(f[7]);
    r.wall_ms = std::stod(f[8]);
    r.diag_digest = f[9];
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<ReportRow> parse_json_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line);
    ReportRow r;
    r.scenario = j.at("scenario").get<std::string>();
    r.n = j.at("n").get<int>();
    r.eps = j.at("eps").get<double>();
    r.delta = j.at("delta").get<double>();
    r.trial = j.at("trial").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.verdict = j.at("verdict").get<std::string>();
    r.samples_used = j.at("samples_used").get<std::uint64_t>();
    r.wall_ms = j.at("wall_ms").get<double>();
    r.diag_digest = j.at("diag_digest").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string digest_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace htester

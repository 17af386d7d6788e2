#pragma once

// Parsing for the structured key-value text formats: experiment configs,
// distribution specs and oracle specs. Syntax: one `key = value` per line,
// '#' starts a comment, keys are dotted paths. See docs/formats.md.

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "htester/oracle.hpp"
#include "htester/ri_distribution.hpp"

namespace htester {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class KeyValues {
 public:
  static KeyValues parse_text(const std::string& text,
                              const std::string& origin = "<string>") {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string trimmed = trim(line);
      if (trimmed.empty()) continue;
      const auto eq = trimmed.find('=');
      if (eq == std::string::npos) {
        throw ConfigError(origin + ":" + std::to_string(lineno) +
                          ": expected 'key = value'");
      }
      const std::string key = trim(trimmed.substr(0, eq));
      const std::string value = trim(trimmed.substr(eq + 1));
      if (key.empty()) {
        throw ConfigError(origin + ":" + std::to_string(lineno) +
                          ": empty key");
      }
      kv.values_[key] = value;
      kv.lines_[key] = lineno;
    }
    kv.origin_ = origin;
    return kv;
  }

  static KeyValues parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
  }

  void set(const std::string& key, const std::string& value) {
    values_[key] = value;
    lines_[key] = 0;
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  std::string require(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      throw ConfigError(origin_ + ": missing required key '" + key + "'");
    }
    return it->second;
  }

  double get_double(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return parse_double(key, values_.at(key));
  }

  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    try {
      return std::stoull(values_.at(key));
    } catch (...) {
      throw field_error(key, "expected an unsigned integer");
    }
  }

  bool get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = values_.at(key);
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw field_error(key, "expected a boolean");
  }

  std::vector<double> get_doubles(const std::string& key) const {
    std::vector<double> out;
    if (!has(key)) return out;
    for (const std::string& tok : split_list(values_.at(key))) {
      out.push_back(parse_double(key, tok));
    }
    return out;
  }

  std::vector<int> get_ints(const std::string& key) const {
    std::vector<int> out;
    for (double d : get_doubles(key)) out.push_back(int(d));
    return out;
  }

  const std::map<std::string, std::string>& all() const { return values_; }
  const std::string& origin() const { return origin_; }

  static std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
  }

  static std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == ',' || c == ' ' || c == '\t') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  }

 private:
  double parse_double(const std::string& key, const std::string& v) const {
    try {
      std::size_t pos = 0;
      const double d = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return d;
    } catch (...) {
      throw field_error(key, "expected a number, got '" + v + "'");
    }
  }

  ConfigError field_error(const std::string& key, const std::string& msg) const {
    const auto it = lines_.find(key);
    const std::string where =
        it != lines_.end() && it->second > 0
            ? origin_ + ":" + std::to_string(it->second)
            : origin_;
    return ConfigError(where + ": field '" + key + "': " + msg);
  }

  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
  std::string origin_ = "<empty>";
};

// ---- distribution specs -------------------------------------------------
//
//   dist.kind      = atoms | interval | grid-file
//   dist.atoms     = r:w, r:w, ...           (kind = atoms)
//   dist.interval  = lo, hi                  (kind = interval)
//   dist.cells     = 16384                   (interval resolution)
//   dist.grid_file = path                    (two columns: radius weight)
//   dist.scale     = 1.0
//   dist.isotropic = true | false            (rescale to E||x||^2 = n)

inline RadialDistribution parse_radial(const KeyValues& kv,
                                       const std::string& prefix) {
  const std::string kind = kv.get(prefix + ".kind", "atoms");
  if (kind == "atoms") {
    std::vector<double> radii, weights;
    for (const std::string& tok :
         KeyValues::split_list(kv.require(prefix + ".atoms"))) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) {
        throw ConfigError(prefix + ".atoms: expected radius:weight, got '" +
                          tok + "'");
      }
      radii.push_back(std::stod(tok.substr(0, colon)));
      weights.push_back(std::stod(tok.substr(colon + 1)));
    }
    return RadialDistribution::atoms(radii, weights);
  }
  if (kind == "interval") {
    const auto ends = kv.get_doubles(prefix + ".interval");
    if (ends.size() != 2) {
      throw ConfigError(prefix + ".interval: expected 'lo, hi'");
    }
    const int cells = int(kv.get_u64(prefix + ".cells", kDefaultRadialCells));
    return RadialDistribution::uniform_interval(ends[0], ends[1], cells);
  }
  if (kind == "grid-file") {
    const std::string path = kv.require(prefix + ".grid_file");
    std::ifstream in(path);
    if (!in) throw ConfigError(prefix + ".grid_file: cannot open " + path);
    std::vector<double> radii, weights;
    double r = 0.0, w = 0.0;
    while (in >> r >> w) {
      radii.push_back(r);
      weights.push_back(w);
    }
    if (radii.empty()) {
      throw ConfigError(prefix + ".grid_file: no rows in " + path);
    }
    return RadialDistribution::grid(radii, weights);
  }
  throw ConfigError(prefix + ".kind: unknown kind '" + kind + "'");
}

inline RIDistribution parse_distribution(const KeyValues& kv, int dim,
                                         const std::string& prefix = "dist") {
  RIDistribution dist(dim, parse_radial(kv, prefix),
                      kv.get_double(prefix + ".scale", 1.0));
  if (kv.get_bool(prefix + ".isotropic", true)) {
    dist = isotropic_rescale(dist);
  }
  return dist;
}

// ---- oracle specs --------------------------------------------------------
//
//   oracle.kind             = halfspace | shell-flip | noisy | constant
//   oracle.normal           = random | axis:<i> | file:<path>
//   oracle.normal_seed      = 7                  (random normals)
//   oracle.threshold        = 0.0                (absolute)
//   oracle.threshold_sqrt_n = 0.3                (times sqrt(n); overrides)
//   oracle.flip_atoms       = 0, 2               (radial atom indices)
//   oracle.noise_rate       = 0.05               (kind = noisy)
//   oracle.noise_seed       = 11
//   oracle.sign             = -1                 (kind = constant)

inline Vec parse_normal(const KeyValues& kv, const std::string& prefix, int dim,
                        std::uint64_t trial_seed) {
  const std::string spec = kv.get(prefix + ".normal", "random");
  if (spec == "random") {
    RngStream rng =
        RngStream::derive(kv.get_u64(prefix + ".normal_seed", 1), trial_seed);
    Vec w(std::size_t(dim), 0.0);
    for (auto& c : w) c = rng.normal();
    return normalized(std::move(w));
  }
  if (spec.rfind("axis:", 0) == 0) {
    return axis_vector(dim, std::stoi(spec.substr(5)));
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw ConfigError(prefix + ".normal: cannot open " + path);
    Vec w;
    double c = 0.0;
    while (in >> c) w.push_back(c);
    if (int(w.size()) != dim) {
      throw ConfigError(prefix + ".normal: file has " +
                        std::to_string(w.size()) + " entries, need " +
                        std::to_string(dim));
    }
    return normalized(std::move(w));
  }
  throw ConfigError(prefix + ".normal: unknown spec '" + spec + "'");
}

inline FunctionOracle parse_oracle(const KeyValues& kv, const RIDistribution& dist,
                                   std::uint64_t trial_seed,
                                   const std::string& prefix = "oracle") {
  const std::string kind = kv.get(prefix + ".kind", "halfspace");
  const int dim = dist.dim;
  if (kind == "constant") {
    return FunctionOracle::constant(dim, int(kv.get_double(prefix + ".sign", 1)));
  }
  double threshold = kv.get_double(prefix + ".threshold", 0.0);
  if (kv.has(prefix + ".threshold_sqrt_n")) {
    threshold =
        kv.get_double(prefix + ".threshold_sqrt_n", 0.0) * std::sqrt(double(dim));
  }
  HalfspaceSpec h(parse_normal(kv, prefix, dim, trial_seed), threshold);
  if (kind == "halfspace") return FunctionOracle::halfspace(std::move(h));
  if (kind == "shell-flip") {
    std::vector<double> radii;
    for (int idx : kv.get_ints(prefix + ".flip_atoms")) {
      if (idx < 0 || std::size_t(idx) >= dist.radial.size()) {
        throw ConfigError(prefix + ".flip_atoms: index out of range");
      }
      radii.push_back(dist.scale * dist.radial.radii()[std::size_t(idx)]);
    }
    if (radii.empty()) {
      throw ConfigError(prefix + ".flip_atoms: required for shell-flip");
    }
    return FunctionOracle::shell_flip(std::move(h), std::move(radii));
  }
  if (kind == "noisy") {
    return FunctionOracle::noisy(
        FunctionOracle::halfspace(std::move(h)),
        kv.get_double(prefix + ".noise_rate", 0.05),
        hash_u64(kv.get_u64(prefix + ".noise_seed", 1), trial_seed));
  }
  throw ConfigError(prefix + ".kind: unknown kind '" + kind + "'");
}

}  // namespace htester

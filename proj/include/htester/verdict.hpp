#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "htester/special.hpp"

namespace htester {

// Verdicts carry the failing check's identity in `reason` plus the full
// diagnostics tree (every intermediate estimate, the ring decomposition and
// each sub-verdict). Serialized as a single versioned JSON document.
struct TesterVerdict {
  bool accept = false;
  std::string reason;  // "accept" or the failing check's identity
  std::uint64_t samples_used = 0;
  nlohmann::json diagnostics = nlohmann::json::object();

  static constexpr int kSchemaVersion = 1;

  nlohmann::json to_json() const {
    return nlohmann::json{{"schema_version", kSchemaVersion},
                          {"decision", accept ? "accept" : "reject"},
                          {"reason", reason},
                          {"samples_used", samples_used},
                          {"diagnostics", diagnostics}};
  }

  std::string to_json_string() const { return to_json().dump(); }

  std::uint64_t digest() const { return fnv1a64(to_json_string()); }
};

inline TesterVerdict make_accept(std::uint64_t samples,
                                 nlohmann::json diag = nlohmann::json::object()) {
  return {true, "accept", samples, std::move(diag)};
}

inline TesterVerdict make_reject(std::string reason, std::uint64_t samples,
                                 nlohmann::json diag = nlohmann::json::object()) {
  return {false, std::move(reason), samples, std::move(diag)};
}

}  // namespace htester

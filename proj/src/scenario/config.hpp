#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "profile.hpp"

namespace psu::scenario {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
  exit_ok = 0,
  exit_verification_failure = 1,
  exit_refused = 2,
  exit_config = 64,
  exit_buchdahl = 65,
  exit_io = 74,
};

// Parses the config document and applies the flag overrides on top
// (JSON merge patch). Either text may be empty.
Json merge_config(const std::string& config_text, const std::string& overrides_text);

// Typed access to a config object that records every value it hands out,
// defaults included, so reports can echo the effective configuration.
class ConfigReader {
 public:
  explicit ConfigReader(Json doc) : doc_(std::move(doc)) {}

  double number(const char* key, double fallback);
  int integer(const char* key, int fallback);
  bool boolean(const char* key, bool fallback);
  std::string text(const char* key, const std::string& fallback);
  std::vector<double> numbers(const char* key, const std::vector<double>& fallback);
  bool has(const char* key) const { return doc_.contains(key) && !doc_[key].is_null(); }
  const Json& raw() const { return doc_; }
  const Json& resolved() const { return resolved_; }
  void record(const char* key, Json value) { resolved_[key] = std::move(value); }
  void drop(const char* key) { resolved_.erase(key); }

  // Rejects keys nobody asked for (typos in config files).
  void reject_unknown(const std::vector<std::string>& extra_allowed = {}) const;

 private:
  const Json* lookup(const char* key) const;

  Json doc_;
  Json resolved_ = Json::object();
  mutable std::set<std::string> seen_;
};

struct MetricDefaults {
  double r_lo_factor = 2.1;  // r_lo = factor * m when m > 0
  double r_hi_factor = 100.0;
};

// Builds a profile from a metric description; `resolved` receives the effective one.
RadialProfile profile_from_json(const Json& metric, const MetricDefaults& defaults, Json& resolved);

// Reads a profile file (same format as the metric key, e.g. tabulated data).
Json read_json_file(const std::string& path);

// The inverse for the profile file format.
Json profile_to_json(const RadialProfile& profile);

// Deterministic double formatting used in CSV tables.
std::string fmt(double v);

}  // namespace psu::scenario

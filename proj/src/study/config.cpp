#include "ambilex/study/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace ambilex::study {

void StudyConfig::validate() const {
  if (durations_ms.empty()) throw ConfigError("durations_ms must not be empty");
  for (auto d : durations_ms) {
    if (d <= 0) throw ConfigError("durations_ms entries must be positive");
  }
  if (std::set<std::int64_t>(durations_ms.begin(), durations_ms.end()).size() != durations_ms.size()) {
    throw ConfigError("durations_ms entries must be distinct");
  }
  if (categories.empty()) throw ConfigError("categories must not be empty");
  if (std::set<corpus::Category>(categories.begin(), categories.end()).size() != categories.size()) {
    throw ConfigError("categories must be distinct");
  }
  if (images_per_session < 1) throw ConfigError("images_per_session must be at least 1");
  if (vigilance_probe_count < 0) throw ConfigError("vigilance_probe_count must be non-negative");
  if (vigilance_pass_min < 0 || vigilance_pass_min > vigilance_probe_count) {
    throw ConfigError("vigilance_pass_min must lie in [0, vigilance_probe_count]");
  }
  if (target_participants_per_condition < 1) throw ConfigError("target_participants_per_condition must be positive");
  if (grid_rows < 1 || grid_cols < 1) throw ConfigError("grid dimensions must be positive");
  if (!(exposure_tolerance >= 0.0)) throw ConfigError("exposure_tolerance must be non-negative");
}

StudyConfig parse_study_config(std::string_view json_text) {
  using nlohmann::json;
  const json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("study config must be a JSON object");

  static const std::set<std::string> kKnown = {
      "durations_ms",    "images_per_session", "categories", "vigilance_probe_count", "vigilance_pass_min",
      "target_participants_per_condition", "rng_seed", "grid_rows", "grid_cols", "exposure_tolerance"};
  for (const auto& [key, _] : j.items()) {
    if (!kKnown.contains(key)) throw ConfigError(fmt::format("unknown config key '{}'", key));
  }

  StudyConfig config;
  try {
    if (j.contains("durations_ms")) config.durations_ms = j["durations_ms"].get<std::vector<std::int64_t>>();
    if (j.contains("images_per_session")) config.images_per_session = j["images_per_session"].get<int>();
    if (j.contains("categories")) {
      config.categories.clear();
      for (const auto& name : j["categories"].get<std::vector<std::string>>()) {
        auto c = corpus::parse_category(name);
        if (!c) throw ConfigError(fmt::format("unknown category '{}'", name));
        config.categories.push_back(*c);
      }
    }
    if (j.contains("vigilance_probe_count")) config.vigilance_probe_count = j["vigilance_probe_count"].get<int>();
    if (j.contains("vigilance_pass_min")) config.vigilance_pass_min = j["vigilance_pass_min"].get<int>();
    if (j.contains("target_participants_per_condition")) {
      config.target_participants_per_condition = j["target_participants_per_condition"].get<int>();
    }
    if (j.contains("rng_seed") && !j["rng_seed"].is_null()) config.rng_seed = j["rng_seed"].get<std::uint64_t>();
    if (j.contains("grid_rows")) config.grid_rows = j["grid_rows"].get<int>();
    if (j.contains("grid_cols")) config.grid_cols = j["grid_cols"].get<int>();
    if (j.contains("exposure_tolerance")) config.exposure_tolerance = j["exposure_tolerance"].get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad study config value: ") + e.what());
  }
  config.validate();
  return config;
}

StudyConfig load_study_config(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw FileNotFound(path);
  std::ifstream in(path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_study_config(text.str());
}

}  // namespace ambilex::study

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ambilex/corpus/types.h"

namespace ambilex::study {

class StudyError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public StudyError {
 public:
  using StudyError::StudyError;
};

/// Protocol parameters. Defaults reproduce the two-duration, five-category,
/// 30-image design.
struct StudyConfig {
  std::vector<std::int64_t> durations_ms{500, 3000};
  int images_per_session = 30;
  std::vector<corpus::Category> categories{corpus::kAllCategories.begin(), corpus::kAllCategories.end()};
  int vigilance_probe_count = 3;
  int vigilance_pass_min = 2;
  int target_participants_per_condition = 70;
  std::optional<std::uint64_t> rng_seed;
  int grid_rows = 3;
  int grid_cols = 3;
  double exposure_tolerance = 0.10;  // fraction of nominal duration

  int grid_cells() const { return grid_rows * grid_cols; }
  int trials_per_session() const { return images_per_session + vigilance_probe_count; }

  // Throws ConfigError.
  void validate() const;
};

// JSON object with any subset of the fields above (same names; categories as
// their label strings). Unknown keys are rejected.
StudyConfig parse_study_config(std::string_view json_text);
StudyConfig load_study_config(const std::filesystem::path& path);

}  // namespace ambilex::study

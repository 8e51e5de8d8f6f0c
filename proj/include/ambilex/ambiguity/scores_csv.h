#pragma once

// Scores table:
//   image_id,category,h_<short>,h_<long>,delta_h,n_<short>,n_<long>,region,low_confidence
// Entropies are written with six decimals; missing values are empty fields.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ambilex/ambiguity/score.h"
#include "ambilex/corpus/types.h"

namespace ambilex::ambiguity {

struct ScoreRow {
  AmbiguityScore score;
  std::optional<corpus::Category> category;
  std::optional<Region> region;
};

void write_scores_csv(std::ostream& out, std::span<const AmbiguityScore> scores, const corpus::StimulusSet& stimuli,
                      const ScoringConfig& config);
void save_scores_csv(const std::filesystem::path& path, std::span<const AmbiguityScore> scores,
                     const corpus::StimulusSet& stimuli, const ScoringConfig& config);

// Throws FileNotFound or corpus::MalformedRecord (line numbers are 1-based,
// header included).
std::vector<ScoreRow> load_scores_csv(const std::filesystem::path& path);
std::vector<ScoreRow> read_scores_csv(std::istream& in);

}  // namespace ambilex::ambiguity

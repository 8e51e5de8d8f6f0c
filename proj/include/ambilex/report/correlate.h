#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ambilex/ambiguity/score.h"
#include "ambilex/report/rank.h"

namespace ambilex::report {

enum class RatingDimension { Interestingness, Powerfulness, Engagement };

std::string_view to_string(RatingDimension dimension);
std::optional<RatingDimension> parse_dimension(std::string_view text);

struct RatingScale {
  int min = 1;
  int max = 7;
};

struct RatingRecord {
  std::string participant_id;
  std::string image_id;
  RatingDimension dimension = RatingDimension::Interestingness;
  int score = 0;

  bool operator==(const RatingRecord&) const = default;
};

// Line-record file: {"participant_id", "image_id", "dimension", "score"}.
// Throws FileNotFound or corpus::MalformedRecord (also for out-of-scale scores).
std::vector<RatingRecord> load_ratings(const std::filesystem::path& path, RatingScale scale = {});

class InsufficientData : public ReportError {
 public:
  explicit InsufficientData(std::size_t images);
};

class ZeroVariance : public ReportError {
 public:
  ZeroVariance() : ReportError("correlation undefined: a variable has zero variance") {}
};

// Pearson r over paired samples. Throws InsufficientData (fewer than 3 pairs),
// ZeroVariance, or std::invalid_argument on length mismatch.
double pearson(std::span<const double> x, std::span<const double> y);

struct CorrelationInput {
  std::vector<std::string> image_ids;
  std::vector<double> entropy;      // H3 per image
  std::vector<double> mean_rating;  // mean score per image in the dimension
};

// Pairs each image's H3 with its mean rating in `dimension`; images without
// either are left out. Ordered by image_id.
CorrelationInput correlation_input(std::span<const ambiguity::AmbiguityScore> scores,
                                   std::span<const RatingRecord> ratings, RatingDimension dimension);

double correlate(std::span<const ambiguity::AmbiguityScore> scores, std::span<const RatingRecord> ratings,
                 RatingDimension dimension);

}  // namespace ambilex::report

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ambilex/ambiguity/histogram.h"

namespace ambilex::ambiguity {

/// Boundaries of the ambiguity plane, in bits. One boundary per axis keeps the
/// four regions disjoint and exhaustive.
struct RegionThresholds {
  double h_short = 4.0;
  double h_long = 4.0;
};

struct ScoringConfig {
  std::int64_t short_ms = 500;
  std::int64_t long_ms = 3000;
  std::int64_t min_responses = 5;
  RegionThresholds thresholds;
};

struct AmbiguityScore {
  std::string image_id;
  std::map<std::int64_t, double> h_by_duration;
  std::map<std::int64_t, std::int64_t> n_by_duration;
  std::optional<double> delta_h;  // H(long) - H(short)
  bool low_confidence = false;
  std::int64_t short_ms = 500;
  std::int64_t long_ms = 3000;

  std::optional<double> h_short() const;
  std::optional<double> h_long() const;
  std::int64_t n_short() const;
  std::int64_t n_long() const;
};

// Entropy per available duration. Empty cells are recorded in n_by_duration
// but have no entropy entry. Throws AmbiguityError if `cells` is empty.
AmbiguityScore score_image(std::string image_id, const std::map<std::int64_t, TokenHistogram>& cells,
                           const ScoringConfig& config = {});

enum class Region { Recognizable, DichotomousRegion, IndeterminateRegion, Unclassified };

inline constexpr std::array<Region, 4> kAllRegions = {Region::Recognizable, Region::DichotomousRegion,
                                                      Region::IndeterminateRegion, Region::Unclassified};

std::string_view to_string(Region region);
std::optional<Region> parse_region(std::string_view text);

class MissingEntropy : public AmbiguityError {
 public:
  explicit MissingEntropy(const std::string& image_id, std::int64_t duration_ms);
};

// Region predicate, evaluated independently of the others.
bool in_region(Region region, double h_short, double h_long, const RegionThresholds& thresholds);

Region classify(double h_short, double h_long, const RegionThresholds& thresholds = {});
Region classify(const AmbiguityScore& score, const RegionThresholds& thresholds = {});

}  // namespace ambilex::ambiguity

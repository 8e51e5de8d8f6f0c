#include "ambilex/ambiguity/score.h"

#include <fmt/format.h>

namespace ambilex::ambiguity {

namespace {

template <typename Map>
auto lookup(const Map& m, std::int64_t key) -> std::optional<typename Map::mapped_type> {
  auto it = m.find(key);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::optional<double> AmbiguityScore::h_short() const { return lookup(h_by_duration, short_ms); }
std::optional<double> AmbiguityScore::h_long() const { return lookup(h_by_duration, long_ms); }
std::int64_t AmbiguityScore::n_short() const { return lookup(n_by_duration, short_ms).value_or(0); }
std::int64_t AmbiguityScore::n_long() const { return lookup(n_by_duration, long_ms).value_or(0); }

AmbiguityScore score_image(std::string image_id, const std::map<std::int64_t, TokenHistogram>& cells,
                           const ScoringConfig& config) {
  if (cells.empty()) throw AmbiguityError(fmt::format("image '{}' has no cells to score", image_id));

  AmbiguityScore score;
  score.image_id = std::move(image_id);
  score.short_ms = config.short_ms;
  score.long_ms = config.long_ms;
  for (const auto& [duration, hist] : cells) {
    score.n_by_duration[duration] = hist.n_descriptions;
    if (hist.total > 0) score.h_by_duration[duration] = entropy(hist);
  }
  const auto hs = score.h_short();
  const auto hl = score.h_long();
  if (hs && hl) score.delta_h = *hl - *hs;
  // A missing reference cell counts as zero descriptions.
  score.low_confidence = score.n_short() < config.min_responses || score.n_long() < config.min_responses;
  return score;
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::Recognizable: return "Recognizable";
    case Region::DichotomousRegion: return "DichotomousRegion";
    case Region::IndeterminateRegion: return "IndeterminateRegion";
    case Region::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

std::optional<Region> parse_region(std::string_view text) {
  for (Region r : kAllRegions) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

MissingEntropy::MissingEntropy(const std::string& image_id, std::int64_t duration_ms)
    : AmbiguityError(fmt::format("image '{}' has no entropy at {} ms", image_id, duration_ms)) {}

bool in_region(Region region, double h_short, double h_long, const RegionThresholds& t) {
  const bool low_short = h_short < t.h_short;
  const bool low_long = h_long < t.h_long;
  switch (region) {
    case Region::Recognizable: return low_short && low_long;
    case Region::DichotomousRegion: return low_short && !low_long;
    case Region::IndeterminateRegion: return !low_short && !low_long;
    case Region::Unclassified: return !low_short && low_long;
  }
  return false;
}

Region classify(double h_short, double h_long, const RegionThresholds& thresholds) {
  for (Region r : kAllRegions) {
    if (in_region(r, h_short, h_long, thresholds)) return r;
  }
  return Region::Unclassified;  // NaN input
}

Region classify(const AmbiguityScore& score, const RegionThresholds& thresholds) {
  const auto hs = score.h_short();
  if (!hs) throw MissingEntropy(score.image_id, score.short_ms);
  const auto hl = score.h_long();
  if (!hl) throw MissingEntropy(score.image_id, score.long_ms);
  return classify(*hs, *hl, thresholds);
}

}  // namespace ambilex::ambiguity

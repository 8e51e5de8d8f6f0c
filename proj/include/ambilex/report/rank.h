#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ambilex/ambiguity/score.h"

namespace ambilex::report {

enum class Metric { H3, H05, DeltaH };
enum class Direction { Lowest, Highest };
enum class Side { Above, Below };

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view text);  // "h3", "h05", "delta"

class ReportError : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public ReportError {
 public:
  explicit EmptyInput(const std::string& what) : ReportError("empty input: " + what) {}
};

struct RankedEntry {
  std::string image_id;
  double value = 0.0;

  bool operator==(const RankedEntry&) const = default;
};

struct RankedList {
  Metric metric = Metric::H3;
  Direction direction = Direction::Lowest;
  std::vector<RankedEntry> entries;
  std::optional<std::string> partition_note;
  std::vector<std::string> skipped;  // images lacking the metric, ascending
};

// Metric value for one score. H05/H3 are the short/long reference entropies.
std::optional<double> metric_value(const ambiguity::AmbiguityScore& score, Metric metric);

// Top or bottom k by metric; ties broken by ascending image_id. Throws
// EmptyInput when no score carries the metric, std::invalid_argument for k = 0.
RankedList rank(std::span<const ambiguity::AmbiguityScore> scores, Metric metric, Direction direction, std::size_t k);

// Keeps scores with H3 strictly above the threshold (Side::Above) or at/below
// it (Side::Below), then ranks them by delta_h.
RankedList rank_by_delta_partition(std::span<const ambiguity::AmbiguityScore> scores, double h3_threshold, Side side,
                                   Direction direction, std::size_t k);

}  // namespace ambilex::report

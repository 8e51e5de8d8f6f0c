#include "ambilex/report/rank.h"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace ambilex::report {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::H3: return "h3";
    case Metric::H05: return "h05";
    case Metric::DeltaH: return "delta";
  }
  return "h3";
}

std::optional<Metric> parse_metric(std::string_view text) {
  if (text == "h3") return Metric::H3;
  if (text == "h05") return Metric::H05;
  if (text == "delta") return Metric::DeltaH;
  return std::nullopt;
}

std::optional<double> metric_value(const ambiguity::AmbiguityScore& score, Metric metric) {
  switch (metric) {
    case Metric::H3: return score.h_long();
    case Metric::H05: return score.h_short();
    case Metric::DeltaH: return score.delta_h;
  }
  return std::nullopt;
}

namespace {

RankedList rank_pointers(std::vector<const ambiguity::AmbiguityScore*> candidates, Metric metric,
                         Direction direction, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  RankedList list;
  list.metric = metric;
  list.direction = direction;
  for (const auto* s : candidates) {
    if (auto v = metric_value(*s, metric)) {
      list.entries.push_back({s->image_id, *v});
    } else {
      list.skipped.push_back(s->image_id);
    }
  }
  std::sort(list.skipped.begin(), list.skipped.end());
  if (list.entries.empty()) throw EmptyInput(fmt::format("no scores carry metric {}", to_string(metric)));

  std::sort(list.entries.begin(), list.entries.end(), [direction](const RankedEntry& a, const RankedEntry& b) {
    if (a.value != b.value) return direction == Direction::Lowest ? a.value < b.value : a.value > b.value;
    return a.image_id < b.image_id;
  });
  if (list.entries.size() > k) list.entries.resize(k);
  return list;
}

}  // namespace

RankedList rank(std::span<const ambiguity::AmbiguityScore> scores, Metric metric, Direction direction, std::size_t k) {
  if (scores.empty()) throw EmptyInput("no scores");
  std::vector<const ambiguity::AmbiguityScore*> all;
  all.reserve(scores.size());
  for (const auto& s : scores) all.push_back(&s);
  return rank_pointers(std::move(all), metric, direction, k);
}

RankedList rank_by_delta_partition(std::span<const ambiguity::AmbiguityScore> scores, double h3_threshold, Side side,
                                   Direction direction, std::size_t k) {
  std::vector<const ambiguity::AmbiguityScore*> partition;
  for (const auto& s : scores) {
    const auto h3 = s.h_long();
    if (!h3) continue;
    const bool above = *h3 > h3_threshold;
    if ((side == Side::Above) == above) partition.push_back(&s);
  }
  if (partition.empty()) {
    throw EmptyInput(fmt::format("no scores with H3 {} {}", side == Side::Above ? ">" : "<=", h3_threshold));
  }
  RankedList list = rank_pointers(std::move(partition), Metric::DeltaH, direction, k);
  list.partition_note = fmt::format("H3 {} {}", side == Side::Above ? ">" : "<=", h3_threshold);
  return list;
}

}  // namespace ambilex::report

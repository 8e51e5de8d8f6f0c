#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#include "ambilex/corpus/types.h"
#include "ambilex/report/correlate.h"

namespace ambilex::report {

std::string_view to_string(RatingDimension dimension) {
  switch (dimension) {
    case RatingDimension::Interestingness: return "interestingness";
    case RatingDimension::Powerfulness: return "powerfulness";
    case RatingDimension::Engagement: return "engagement";
  }
  return "interestingness";
}

std::optional<RatingDimension> parse_dimension(std::string_view text) {
  for (auto d : {RatingDimension::Interestingness, RatingDimension::Powerfulness, RatingDimension::Engagement}) {
    if (to_string(d) == text) return d;
  }
  return std::nullopt;
}

std::vector<RatingRecord> load_ratings(const std::filesystem::path& path, RatingScale scale) {
  using corpus::MalformedRecord;
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw FileNotFound(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");

  std::vector<RatingRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw MalformedRecord(line_no, "not a JSON object");

    RatingRecord r;
    for (const char* key : {"participant_id", "image_id", "dimension"}) {
      auto it = j.find(key);
      if (it == j.end() || !it->is_string()) {
        throw MalformedRecord(line_no, fmt::format("field '{}' must be a string", key));
      }
    }
    r.participant_id = j["participant_id"].get<std::string>();
    r.image_id = j["image_id"].get<std::string>();
    const auto dim = parse_dimension(j["dimension"].get<std::string>());
    if (!dim) throw MalformedRecord(line_no, "unknown dimension");
    r.dimension = *dim;
    auto score = j.find("score");
    if (score == j.end() || !score->is_number_integer()) throw MalformedRecord(line_no, "field 'score' must be an integer");
    r.score = score->get<int>();
    if (r.score < scale.min || r.score > scale.max) {
      throw MalformedRecord(line_no, fmt::format("score {} outside scale [{}, {}]", r.score, scale.min, scale.max));
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ambilex::report

#include "ambilex/corpus/io.h"

#include <fstream>
#include <ostream>

#include <json.hpp>

namespace ambilex::corpus {

using nlohmann::json;

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw FileNotFound(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  return in;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

json parse_object(std::string_view line, std::size_t line_no) {
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw MalformedRecord(line_no, "not valid JSON");
  if (!j.is_object()) throw MalformedRecord(line_no, "record is not an object");
  return j;
}

const json& require(const json& j, const char* key, std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end()) throw MalformedRecord(line_no, std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& j, const char* key, std::size_t line_no) {
  const json& v = require(j, key, line_no);
  if (!v.is_string()) throw MalformedRecord(line_no, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    fn(line, line_no);
  }
  if (in.bad()) throw IoError(path, "read failed");
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << body;
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace

StimulusImage parse_stimulus_line(std::string_view line, std::size_t line_no) {
  const json j = parse_object(line, line_no);
  StimulusImage image;
  image.id = require_string(j, "id", line_no);
  if (image.id.empty()) throw MalformedRecord(line_no, "empty id");
  image.path = require_string(j, "path", line_no);
  const std::string category = require_string(j, "category", line_no);
  auto parsed = parse_category(category);
  if (!parsed) throw MalformedRecord(line_no, "unknown category '" + category + "'");
  image.category = *parsed;
  if (auto it = j.find("source_note"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw MalformedRecord(line_no, "field 'source_note' must be a string or null");
    image.source_note = it->get<std::string>();
  }
  return image;
}

ResponseRecord parse_response_line(std::string_view line, std::size_t line_no) {
  const json j = parse_object(line, line_no);
  ResponseRecord r;
  r.participant_id = require_string(j, "participant_id", line_no);
  r.session_id = require_string(j, "session_id", line_no);
  r.image_id = require_string(j, "image_id", line_no);

  const json& duration = require(j, "duration_ms", line_no);
  if (!duration.is_number_integer()) throw MalformedRecord(line_no, "field 'duration_ms' must be an integer");
  r.duration_ms = duration.get<std::int64_t>();
  if (r.duration_ms <= 0) throw MalformedRecord(line_no, "field 'duration_ms' must be positive");

  r.raw_text = require_string(j, "raw_text", line_no);

  const json& vigilance = require(j, "vigilance_passed", line_no);
  if (!vigilance.is_boolean()) throw MalformedRecord(line_no, "field 'vigilance_passed' must be a boolean");
  r.vigilance_passed = vigilance.get<bool>();

  const std::string ts = require_string(j, "timestamp", line_no);
  auto parsed = parse_timestamp(ts);
  if (!parsed) throw MalformedRecord(line_no, "field 'timestamp' is not an ISO-8601 UTC instant");
  r.timestamp = *parsed;

  if (auto it = j.find("measured_exposure_ms"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw MalformedRecord(line_no, "field 'measured_exposure_ms' must be an integer");
    r.measured_exposure_ms = it->get<std::int64_t>();
  }
  if (auto it = j.find("exposure_flagged"); it != j.end()) {
    if (!it->is_boolean()) throw MalformedRecord(line_no, "field 'exposure_flagged' must be a boolean");
    r.exposure_flagged = it->get<bool>();
  }
  return r;
}

std::string to_line(const StimulusImage& image) {
  // ordered_json keeps the documented field order in the output.
  nlohmann::ordered_json j;
  j["id"] = image.id;
  j["path"] = image.path;
  j["category"] = std::string(to_string(image.category));
  j["source_note"] = image.source_note ? nlohmann::ordered_json(*image.source_note) : nlohmann::ordered_json(nullptr);
  return j.dump();
}

std::string to_line(const ResponseRecord& r) {
  nlohmann::ordered_json j;
  j["participant_id"] = r.participant_id;
  j["session_id"] = r.session_id;
  j["image_id"] = r.image_id;
  j["duration_ms"] = r.duration_ms;
  j["raw_text"] = r.raw_text;
  j["vigilance_passed"] = r.vigilance_passed;
  j["timestamp"] = format_timestamp(r.timestamp);
  if (r.measured_exposure_ms) j["measured_exposure_ms"] = *r.measured_exposure_ms;
  if (r.measured_exposure_ms || r.exposure_flagged) j["exposure_flagged"] = r.exposure_flagged;
  return j.dump();
}

StimulusSet load_stimuli(const std::filesystem::path& path) {
  std::vector<StimulusImage> images;
  for_each_line(path, [&](std::string_view line, std::size_t line_no) {
    images.push_back(parse_stimulus_line(line, line_no));
  });
  return StimulusSet(std::move(images));
}

ResponseSet load_responses(const std::filesystem::path& path) {
  ResponseSet set;
  for_each_line(path, [&](std::string_view line, std::size_t line_no) {
    set.records.push_back(parse_response_line(line, line_no));
  });
  set.provenance.push_back(path);
  return set;
}

void write_stimuli(std::ostream& out, std::span<const StimulusImage> images) {
  for (const auto& image : images) out << to_line(image) << '\n';
}

void write_responses(std::ostream& out, std::span<const ResponseRecord> records) {
  for (const auto& r : records) out << to_line(r) << '\n';
}

void save_stimuli(const std::filesystem::path& path, const StimulusSet& stimuli) {
  std::string body;
  for (const auto& image : stimuli.images()) body += to_line(image) + '\n';
  write_file(path, body);
}

void save_responses(const std::filesystem::path& path, std::span<const ResponseRecord> records) {
  std::string body;
  for (const auto& r : records) body += to_line(r) + '\n';
  write_file(path, body);
}

}  // namespace ambilex::corpus

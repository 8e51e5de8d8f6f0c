#include "ambilex/ambiguity/scores_csv.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace ambilex::ambiguity {

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string fmt_entropy(std::optional<double> v) { return v ? fmt::format("{:.6f}", *v) : std::string(); }

std::optional<std::int64_t> parse_duration_column(std::string_view name, std::string_view prefix) {
  if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
  std::int64_t v = 0;
  const auto digits = name.substr(prefix.size());
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || v <= 0) return std::nullopt;
  return v;
}

template <typename T>
std::optional<T> parse_number(const std::string& s, std::size_t line_no, const char* column) {
  if (s.empty()) return std::nullopt;
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw corpus::MalformedRecord(line_no, fmt::format("column '{}' is not a number: '{}'", column, s));
  }
  return v;
}

}  // namespace

void write_scores_csv(std::ostream& out, std::span<const AmbiguityScore> scores, const corpus::StimulusSet& stimuli,
                      const ScoringConfig& config) {
  out << fmt::format("image_id,category,h_{0},h_{1},delta_h,n_{0},n_{1},region,low_confidence\n", config.short_ms,
                     config.long_ms);
  for (const auto& s : scores) {
    const corpus::StimulusImage* image = stimuli.find(s.image_id);
    std::string region;
    if (s.h_short() && s.h_long()) region = std::string(to_string(classify(s, config.thresholds)));
    out << csv_field(s.image_id) << ',' << (image ? to_string(image->category) : std::string_view{}) << ','
        << fmt_entropy(s.h_short()) << ',' << fmt_entropy(s.h_long()) << ',' << fmt_entropy(s.delta_h) << ','
        << s.n_short() << ',' << s.n_long() << ',' << region << ',' << (s.low_confidence ? "true" : "false") << '\n';
  }
}

void save_scores_csv(const std::filesystem::path& path, std::span<const AmbiguityScore> scores,
                     const corpus::StimulusSet& stimuli, const ScoringConfig& config) {
  std::ostringstream body;
  write_scores_csv(body, scores, stimuli, config);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << body.str();
  if (!out.flush()) throw IoError(path, "write failed");
}

std::vector<ScoreRow> read_scores_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  if (header.size() != 9 || header[0] != "image_id" || header[1] != "category" || header[4] != "delta_h" ||
      header[7] != "region" || header[8] != "low_confidence") {
    throw corpus::MalformedRecord(1, "unexpected scores header");
  }
  const auto short_ms = parse_duration_column(header[2], "h_");
  const auto long_ms = parse_duration_column(header[3], "h_");
  if (!short_ms || !long_ms || parse_duration_column(header[5], "n_") != short_ms ||
      parse_duration_column(header[6], "n_") != long_ms) {
    throw corpus::MalformedRecord(1, "unexpected duration columns in scores header");
  }

  std::vector<ScoreRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 9) throw corpus::MalformedRecord(line_no, fmt::format("expected 9 columns, got {}", f.size()));

    ScoreRow row;
    row.score.image_id = f[0];
    row.score.short_ms = *short_ms;
    row.score.long_ms = *long_ms;
    if (!f[1].empty()) {
      row.category = corpus::parse_category(f[1]);
      if (!row.category) throw corpus::MalformedRecord(line_no, "unknown category '" + f[1] + "'");
    }
    if (auto v = parse_number<double>(f[2], line_no, "h_short")) row.score.h_by_duration[*short_ms] = *v;
    if (auto v = parse_number<double>(f[3], line_no, "h_long")) row.score.h_by_duration[*long_ms] = *v;
    row.score.delta_h = parse_number<double>(f[4], line_no, "delta_h");
    if (auto v = parse_number<std::int64_t>(f[5], line_no, "n_short")) row.score.n_by_duration[*short_ms] = *v;
    if (auto v = parse_number<std::int64_t>(f[6], line_no, "n_long")) row.score.n_by_duration[*long_ms] = *v;
    if (!f[7].empty()) {
      row.region = parse_region(f[7]);
      if (!row.region) throw corpus::MalformedRecord(line_no, "unknown region '" + f[7] + "'");
    }
    if (f[8] != "true" && f[8] != "false") throw corpus::MalformedRecord(line_no, "low_confidence must be true/false");
    row.score.low_confidence = f[8] == "true";
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ScoreRow> load_scores_csv(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw FileNotFound(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  return read_scores_csv(in);
}

}  // namespace ambilex::ambiguity

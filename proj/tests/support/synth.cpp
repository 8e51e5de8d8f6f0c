#include "synth.h"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

namespace ambilex::testing {

std::filesystem::path lexicon_dir() { return AMBILEX_TEST_LEXICON_DIR; }
std::filesystem::path golden_dir() { return AMBILEX_TEST_GOLDEN_DIR; }

std::filesystem::path scratch_dir(std::string_view name) {
  const auto dir = std::filesystem::path(AMBILEX_TEST_SCRATCH_DIR) / std::string(name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

const textpipe::LexiconBundle& default_lexicon() {
  static const textpipe::LexiconBundle bundle = textpipe::load_lexicons(lexicon_dir());
  return bundle;
}

const std::vector<std::string>& plain_nouns() {
  static const std::vector<std::string> nouns = {
      "tree",  "bird",   "fish",  "horse",  "boat",    "bridge", "castle", "mountain", "river",  "cloud",
      "moon",  "star",   "sun",   "road",   "window",  "door",   "chair",  "table",    "lamp",   "book",
      "clock", "bottle", "cup",   "hat",    "shoe",    "ball",   "bicycle", "train",   "tower",  "church",
      "forest", "desert", "island", "lake", "bear",    "lion",   "tiger",  "snake",    "frog",   "owl"};
  return nouns;
}

std::string describe(const std::string& noun, std::mt19937_64& rng) {
  static const std::vector<std::string> frames = {
      "a {}", "{}", "it looks like a {}", "maybe a {}", "i think it is a {}", "i'm not sure but a {}", "A {}!",
      "some kind of {}"};
  const auto& frame = frames[rng() % frames.size()];
  std::string text = fmt::format(fmt::runtime(frame), noun);
  if (frame == "A {}!") {
    std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::toupper(c); });
  }
  return text;
}

corpus::Timestamp fixed_time(std::int64_t offset_ms) {
  using namespace std::chrono;
  return corpus::Timestamp(milliseconds(1'700'000'000'000LL + offset_ms));
}

corpus::ResponseSet synth_responses(std::span<const CellSpec> cells, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  corpus::ResponseSet out;
  int participant = 0;
  for (const auto& cell : cells) {
    std::vector<std::string> draws;
    for (const auto& [token, n] : cell.token_counts) draws.insert(draws.end(), static_cast<std::size_t>(n), token);
    std::shuffle(draws.begin(), draws.end(), rng);
    for (const auto& token : draws) {
      ++participant;
      corpus::ResponseRecord r;
      r.participant_id = fmt::format("p{:05d}", participant);
      r.session_id = fmt::format("s{:05d}", participant);
      r.image_id = cell.image_id;
      r.duration_ms = cell.duration_ms;
      r.raw_text = describe(token, rng);
      r.vigilance_passed = true;
      r.timestamp = fixed_time(participant * 1000);
      out.records.push_back(std::move(r));
    }
  }
  return out;
}

corpus::StimulusSet synth_stimuli(int per_category) {
  static const std::map<corpus::Category, std::string> prefix = {
      {corpus::Category::Recognizable, "rec"}, {corpus::Category::Dichotomous, "dic"},
      {corpus::Category::Indeterminate, "ind"}, {corpus::Category::Abstract, "abs"},
      {corpus::Category::AbstractFlat, "flat"}};
  std::vector<corpus::StimulusImage> images;
  for (auto c : corpus::kAllCategories) {
    for (int i = 1; i <= per_category; ++i) {
      corpus::StimulusImage img;
      img.id = fmt::format("{}-{:03d}", prefix.at(c), i);
      img.path = fmt::format("{}/{}.png", prefix.at(c), img.id);
      img.category = c;
      images.push_back(std::move(img));
    }
  }
  return corpus::StimulusSet(std::move(images));
}

}  // namespace ambilex::testing

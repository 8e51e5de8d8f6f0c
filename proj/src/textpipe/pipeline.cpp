#include "ambilex/textpipe/pipeline.h"

#include <algorithm>
#include <unordered_set>

namespace ambilex::textpipe {

namespace {

bool is_numeral(std::string_view token) {
  bool digit = false;
  for (char c : token) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != '.' && c != ',' && c != '-' && c != '\'') {
      return false;
    }
  }
  return digit;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool prefix_matches(std::span<const std::string> tokens, std::size_t at, const std::vector<std::string>& pattern) {
  if (tokens.size() - at < pattern.size()) return false;
  return std::equal(pattern.begin(), pattern.end(), tokens.begin() + static_cast<std::ptrdiff_t>(at));
}

}  // namespace

HedgeStrip strip_hedges(std::vector<std::string> tokens, const LexiconBundle& lexicon) {
  std::size_t start = 0;
  int count = 0;
  bool matched = true;
  while (matched && start < tokens.size()) {
    matched = false;
    for (const auto& pattern : lexicon.hedge_patterns()) {
      if (prefix_matches(tokens, start, pattern)) {
        start += pattern.size();
        ++count;
        matched = true;
        break;
      }
    }
  }
  tokens.erase(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(start));
  return {std::move(tokens), count};
}

std::string lemmatize(std::string_view word, const LexiconBundle& lexicon) {
  if (const std::string* lemma = lexicon.lemma(word)) return *lemma;
  if (lexicon.lookup(word)) return std::string(word);

  auto known = [&](const std::string& stem) { return !stem.empty() && lexicon.lookup(stem).has_value(); };
  if (ends_with(word, "ies")) {
    std::string stem = std::string(word.substr(0, word.size() - 3)) + "y";
    if (known(stem)) return stem;
  }
  if (ends_with(word, "es")) {
    std::string stem(word.substr(0, word.size() - 2));
    if (known(stem)) return stem;
  }
  if (ends_with(word, "s") && !ends_with(word, "ss")) {
    std::string stem(word.substr(0, word.size() - 1));
    if (known(stem)) return stem;
  }
  return std::string(word);
}

std::vector<TaggedToken> tag(std::span<const std::string> tokens, const LexiconBundle& lexicon,
                             const PipelineConfig& config) {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (is_numeral(token)) {
      out.push_back({token, PosTag::Other});
      continue;
    }
    std::string surface = lemmatize(token, lexicon);
    const PosTag t = lexicon.lookup(surface).value_or(config.unknown_word_tag);
    out.push_back({std::move(surface), t});
  }
  return out;
}

std::vector<std::string> extract_nouns(std::span<const TaggedToken> tagged, const LexiconBundle& lexicon) {
  auto mergeable = [](PosTag t) { return t == PosTag::Noun || t == PosTag::Adjective; };

  std::vector<std::string> nouns;
  std::size_t i = 0;
  while (i < tagged.size()) {
    bool merged = false;
    const std::size_t longest = std::min(lexicon.max_compound_words(), tagged.size() - i);
    for (std::size_t len = longest; len >= 2; --len) {
      const auto span = tagged.subspan(i, len);
      if (!std::all_of(span.begin(), span.end(), [&](const TaggedToken& t) { return mergeable(t.tag); })) continue;
      std::string phrase = span[0].surface;
      for (std::size_t k = 1; k < len; ++k) phrase += ' ' + span[k].surface;
      if (lexicon.is_compound(phrase)) {
        nouns.push_back(std::move(phrase));
        i += len;
        merged = true;
        break;
      }
    }
    if (merged) continue;
    if (tagged[i].tag == PosTag::Noun) nouns.push_back(tagged[i].surface);
    ++i;
  }
  return nouns;
}

std::string canonicalize(std::string_view noun, const LexiconBundle& lexicon) {
  if (const std::string* head = lexicon.synonym_head(noun)) return *head;
  return std::string(noun);
}

DescriptionTokens process_description(std::string_view raw_text, const LexiconBundle& lexicon,
                                      const PipelineConfig& config) {
  auto tokens = tokenize(raw_text);
  int hedges = 0;
  if (config.strip_hedges) {
    auto stripped = strip_hedges(std::move(tokens), lexicon);
    tokens = std::move(stripped.tokens);
    hedges = stripped.hedge_count;
  }
  if (!config.count_hedges) hedges = 0;

  const auto tagged = tag(tokens, lexicon, config);
  DescriptionTokens result;
  result.hedge_count = hedges;
  std::unordered_set<std::string> seen;
  for (auto& noun : extract_nouns(tagged, lexicon)) {
    if (lexicon.is_disallowed(noun)) continue;
    std::string token = canonicalize(noun, lexicon);
    if (config.dedupe_within_description && !seen.insert(token).second) continue;
    result.tokens.push_back(std::move(token));
  }
  return result;
}

}  // namespace ambilex::textpipe

#include "ambilex/textpipe/lexicon.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "ambilex/textpipe/pipeline.h"

namespace ambilex::textpipe {

namespace {

bool has_upper(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isupper(c) != 0; });
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

void require_lowercase(std::string_view entry, std::string_view what) {
  if (has_upper(entry)) throw LexiconError(fmt::format("{} entry '{}' is not lowercase", what, entry));
}

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> read_lines(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw FileNotFound(path);
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string::npos || text[first] == '#') continue;
    const auto last = text.find_last_not_of(" \t");
    lines.push_back({number, text.substr(first, last - first + 1)});
  }
  return lines;
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line, std::string_view why) {
  throw LexiconError(fmt::format("{}:{}: {}", path.filename().string(), line, why));
}

std::pair<std::string, std::string> split_tab(const std::filesystem::path& path, const Line& line) {
  const auto tab = line.text.find('\t');
  if (tab == std::string::npos) fail(path, line.number, "expected word<TAB>value");
  std::string key = line.text.substr(0, tab);
  std::string value = line.text.substr(tab + 1);
  auto trim = [](std::string& s) {
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
  };
  trim(key);
  trim(value);
  if (key.empty() || value.empty()) fail(path, line.number, "empty field");
  return {key, value};
}

}  // namespace

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::Noun: return "NOUN";
    case PosTag::Verb: return "VERB";
    case PosTag::Adjective: return "ADJ";
    case PosTag::Determiner: return "DET";
    case PosTag::Preposition: return "PREP";
    case PosTag::Pronoun: return "PRON";
    case PosTag::Conjunction: return "CONJ";
    case PosTag::Other: return "OTHER";
  }
  return "OTHER";
}

std::optional<PosTag> parse_pos_tag(std::string_view text) {
  static const std::pair<std::string_view, PosTag> kNames[] = {
      {"NOUN", PosTag::Noun},        {"VERB", PosTag::Verb},        {"ADJ", PosTag::Adjective},
      {"DET", PosTag::Determiner},   {"PREP", PosTag::Preposition}, {"ADP", PosTag::Preposition},
      {"PRON", PosTag::Pronoun},     {"CONJ", PosTag::Conjunction}, {"OTHER", PosTag::Other},
  };
  for (const auto& [name, tag] : kNames) {
    if (name == text) return tag;
  }
  return std::nullopt;
}

LexiconBundle::LexiconBundle(LexiconData data, LexiconOptions options) : data_(std::move(data)) {
  for (const auto& [word, tag] : data_.pos_lexicon) {
    require_lowercase(word, "pos lexicon");
    tags_.emplace(word, tag);
  }
  for (const auto& [form, lemma] : data_.lemma_map) {
    require_lowercase(form, "lemma");
    require_lowercase(lemma, "lemma");
    lemmas_.emplace(form, lemma);
  }
  for (const auto& compound : data_.compounds) {
    require_lowercase(compound, "compound");
    const auto words = split_ws(compound);
    if (words.size() < 2) throw LexiconError(fmt::format("compound '{}' has fewer than two words", compound));
    max_compound_words_ = std::max(max_compound_words_, words.size());
    compounds_.insert(join(words));
  }
  for (const auto& group : data_.synonym_groups) {
    require_lowercase(group.head, "synonym");
    auto claim = [&](const std::string& word) {
      require_lowercase(word, "synonym");
      auto [it, inserted] = heads_.emplace(word, group.head);
      if (!inserted) {
        throw LexiconError(fmt::format("word '{}' appears in more than one synonym group", word));
      }
    };
    claim(group.head);
    for (const auto& member : group.members) claim(member);
  }
  for (const auto& word : data_.disallowed) {
    require_lowercase(word, "disallowed");
    disallowed_.insert(word);
  }
  if (disallowed_.size() != options.disallowed_size) {
    throw LexiconError(fmt::format("disallowed list has {} distinct entries, expected {}", disallowed_.size(),
                                   options.disallowed_size));
  }
  // A head must itself survive the noun filter, or canonicalization would
  // reintroduce words the filter removed.
  for (const auto& group : data_.synonym_groups) {
    if (disallowed_.contains(group.head)) {
      throw LexiconError(fmt::format("synonym head '{}' is a disallowed word", group.head));
    }
    if (auto t = tags_.find(group.head); t != tags_.end() && t->second != PosTag::Noun) {
      throw LexiconError(fmt::format("synonym head '{}' is not tagged NOUN", group.head));
    }
  }
  for (const auto& phrase : data_.hedge_phrases) {
    require_lowercase(phrase, "hedge");
    auto pattern = tokenize(phrase);
    if (pattern.empty()) throw LexiconError(fmt::format("hedge phrase '{}' has no words", phrase));
    hedge_patterns_.push_back(std::move(pattern));
  }
  // Longest pattern first so that "i'm not sure but" wins over "i'm not sure".
  std::stable_sort(hedge_patterns_.begin(), hedge_patterns_.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
}

std::optional<PosTag> LexiconBundle::lookup(std::string_view word) const {
  auto it = tags_.find(std::string(word));
  if (it == tags_.end()) return std::nullopt;
  return it->second;
}

const std::string* LexiconBundle::lemma(std::string_view word) const {
  auto it = lemmas_.find(std::string(word));
  return it == lemmas_.end() ? nullptr : &it->second;
}

bool LexiconBundle::is_compound(std::string_view phrase) const { return compounds_.contains(phrase); }

bool LexiconBundle::is_disallowed(std::string_view word) const { return disallowed_.contains(word); }

const std::string* LexiconBundle::synonym_head(std::string_view word) const {
  auto it = heads_.find(std::string(word));
  return it == heads_.end() ? nullptr : &it->second;
}

LexiconBundle load_lexicons(const std::filesystem::path& dir, LexiconOptions options) {
  LexiconData data;

  const auto pos_path = dir / kPosLexiconFile;
  for (const auto& line : read_lines(pos_path)) {
    auto [word, tag_name] = split_tab(pos_path, line);
    auto tag = parse_pos_tag(tag_name);
    if (!tag) fail(pos_path, line.number, "unknown tag '" + tag_name + "'");
    if (has_upper(word)) fail(pos_path, line.number, "entry is not lowercase");
    if (!data.pos_lexicon.emplace(word, *tag).second) fail(pos_path, line.number, "duplicate word '" + word + "'");
  }

  const auto lemma_path = dir / kLemmaFile;
  for (const auto& line : read_lines(lemma_path)) {
    auto [form, lemma] = split_tab(lemma_path, line);
    if (has_upper(form) || has_upper(lemma)) fail(lemma_path, line.number, "entry is not lowercase");
    data.lemma_map[form] = lemma;
  }

  const auto compound_path = dir / kCompoundsFile;
  for (const auto& line : read_lines(compound_path)) {
    if (split_ws(line.text).size() < 2) fail(compound_path, line.number, "compound needs at least two words");
    data.compounds.push_back(line.text);
  }

  const auto synonym_path = dir / kSynonymsFile;
  for (const auto& line : read_lines(synonym_path)) {
    auto words = split_ws(line.text);
    SynonymGroup group;
    group.head = words.front();
    group.members.assign(words.begin() + 1, words.end());
    data.synonym_groups.push_back(std::move(group));
  }

  for (const auto& line : read_lines(dir / kDisallowedFile)) data.disallowed.push_back(line.text);
  for (const auto& line : read_lines(dir / kHedgesFile)) data.hedge_phrases.push_back(line.text);

  return LexiconBundle(std::move(data), options);
}

}  // namespace ambilex::textpipe

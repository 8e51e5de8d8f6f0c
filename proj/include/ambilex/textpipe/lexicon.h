#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ambilex/errors.h"

namespace ambilex::textpipe {

enum class PosTag { Noun, Verb, Adjective, Determiner, Preposition, Pronoun, Conjunction, Other };

// Canonical spellings: NOUN VERB ADJ DET PREP PRON CONJ OTHER.
std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view text);

class LexiconError : public Error {
 public:
  using Error::Error;
};

struct SynonymGroup {
  std::string head;
  std::vector<std::string> members;  // excludes the head
};

/// Raw lexicon contents before validation. Everything the tagger and the
/// token filters know lives here; nothing linguistic is hard-coded.
struct LexiconData {
  std::map<std::string, PosTag> pos_lexicon;
  std::vector<std::string> compounds;
  std::vector<SynonymGroup> synonym_groups;
  std::vector<std::string> disallowed;
  std::vector<std::string> hedge_phrases;
  std::map<std::string, std::string> lemma_map;
};

struct LexiconOptions {
  std::size_t disallowed_size = 12;
};

/// Validated, indexed lexicons. Immutable after construction and safe to share
/// across threads.
class LexiconBundle {
 public:
  // Throws LexiconError when an invariant is violated: uppercase entries,
  // single-word compounds, a word in two synonym groups, or a disallowed list
  // of the wrong size.
  explicit LexiconBundle(LexiconData data, LexiconOptions options = {});

  std::optional<PosTag> lookup(std::string_view word) const;
  const std::string* lemma(std::string_view word) const;

  bool is_compound(std::string_view phrase) const;
  std::size_t max_compound_words() const { return max_compound_words_; }

  bool is_disallowed(std::string_view word) const;

  // Canonical head for a synonym member, or nullptr if the word is in no group.
  const std::string* synonym_head(std::string_view word) const;

  // Hedge phrases split with the description tokenizer.
  const std::vector<std::vector<std::string>>& hedge_patterns() const { return hedge_patterns_; }

  const LexiconData& data() const { return data_; }

 private:
  LexiconData data_;
  std::unordered_map<std::string, PosTag> tags_;
  std::unordered_map<std::string, std::string> lemmas_;
  std::set<std::string, std::less<>> compounds_;
  std::set<std::string, std::less<>> disallowed_;
  std::unordered_map<std::string, std::string> heads_;
  std::vector<std::vector<std::string>> hedge_patterns_;
  std::size_t max_compound_words_ = 0;
};

// File names inside a lexicon directory.
inline constexpr const char* kPosLexiconFile = "pos_lexicon.tsv";
inline constexpr const char* kLemmaFile = "lemmas.tsv";
inline constexpr const char* kCompoundsFile = "compounds.txt";
inline constexpr const char* kSynonymsFile = "synonyms.txt";
inline constexpr const char* kDisallowedFile = "disallowed.txt";
inline constexpr const char* kHedgesFile = "hedges.txt";

// Loads all six files from `dir`. Lines starting with '#' and blank lines are
// ignored. Throws FileNotFound or LexiconError (with file and line).
LexiconBundle load_lexicons(const std::filesystem::path& dir, LexiconOptions options = {});

}  // namespace ambilex::textpipe

#pragma once

// Description -> canonical noun tokens.
//
//   tokenize -> strip_hedges -> tag -> extract_nouns
//            -> drop disallowed -> canonicalize -> dedupe
//
// Every stage is a pure function of its inputs and the lexicon bundle.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ambilex/textpipe/lexicon.h"

namespace ambilex::textpipe {

struct TaggedToken {
  std::string surface;
  PosTag tag = PosTag::Other;

  bool operator==(const TaggedToken&) const = default;
};

struct PipelineConfig {
  bool dedupe_within_description = true;
  bool strip_hedges = true;
  bool count_hedges = true;
  PosTag unknown_word_tag = PosTag::Noun;
};

struct HedgeStrip {
  std::vector<std::string> tokens;
  int hedge_count = 0;
};

struct DescriptionTokens {
  std::vector<std::string> tokens;
  int hedge_count = 0;

  bool operator==(const DescriptionTokens&) const = default;
};

/// Lowercases ASCII, keeps hyphens and apostrophes only between word
/// characters, and splits on everything else. Bytes >= 0x80 count as word
/// characters, except typographic quotes and dashes which are mapped to their
/// ASCII role.
std::vector<std::string> tokenize(std::string_view raw_text);

// Removes hedge phrases from the front of the token list, repeatedly, longest
// pattern first. Content after the leading run is untouched.
HedgeStrip strip_hedges(std::vector<std::string> tokens, const LexiconBundle& lexicon);

// Lemma-normalizes each token, then looks up its tag. Purely numeric tokens
// are tagged OTHER. Unknown words get config.unknown_word_tag.
std::vector<TaggedToken> tag(std::span<const std::string> tokens, const LexiconBundle& lexicon,
                             const PipelineConfig& config = {});

// Lemma for one token: explicit lemma map first, then a regular plural rule
// ("-ies" -> "-y", "-es", "-s") applied only when the word itself is unknown
// and the stem is a lexicon entry.
std::string lemmatize(std::string_view word, const LexiconBundle& lexicon);

// Greedy longest-match compound merging over noun/adjective runs, then the
// remaining NOUN surfaces in order.
std::vector<std::string> extract_nouns(std::span<const TaggedToken> tagged, const LexiconBundle& lexicon);

std::string canonicalize(std::string_view noun, const LexiconBundle& lexicon);

DescriptionTokens process_description(std::string_view raw_text, const LexiconBundle& lexicon,
                                      const PipelineConfig& config = {});

}  // namespace ambilex::textpipe

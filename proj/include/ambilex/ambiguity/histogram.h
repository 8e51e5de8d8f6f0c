#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ambilex/corpus/types.h"

namespace ambilex::ambiguity {

class AmbiguityError : public Error {
 public:
  using Error::Error;
};

class EmptyHistogram : public AmbiguityError {
 public:
  EmptyHistogram() : AmbiguityError("entropy of an empty histogram is undefined") {}
};

/// Token counts for one (image, duration) cell. p_t = counts[t] / total.
struct TokenHistogram {
  corpus::CellKey cell;
  std::map<std::string, std::int64_t> counts;  // every count >= 1
  std::int64_t total = 0;
  std::int64_t n_descriptions = 0;  // includes descriptions with no tokens

  double probability(const std::string& token) const;
  std::size_t distinct() const { return counts.size(); }
};

TokenHistogram build_histogram(corpus::CellKey cell, std::span<const std::vector<std::string>> token_lists);

// Shannon entropy in bits over the full histogram. Throws EmptyHistogram.
double entropy(const TokenHistogram& hist);

// Same quantity over raw positive counts; zero counts contribute nothing.
double entropy_bits(std::span<const std::int64_t> counts);

/// Display form: tokens seen at least twice, plus an "[other]" count of
/// singletons. Entropy never uses this view.
struct DisplayHistogram {
  std::vector<std::pair<std::string, std::int64_t>> bins;  // count desc, token asc
  std::int64_t other_count = 0;

  bool operator==(const DisplayHistogram&) const = default;
};

DisplayHistogram display_histogram(const TokenHistogram& hist);

}  // namespace ambilex::ambiguity

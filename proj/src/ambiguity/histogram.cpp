#include "ambilex/ambiguity/histogram.h"

#include <algorithm>
#include <cmath>

namespace ambilex::ambiguity {

double TokenHistogram::probability(const std::string& token) const {
  if (total == 0) return 0.0;
  auto it = counts.find(token);
  return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
}

TokenHistogram build_histogram(corpus::CellKey cell, std::span<const std::vector<std::string>> token_lists) {
  TokenHistogram hist;
  hist.cell = std::move(cell);
  hist.n_descriptions = static_cast<std::int64_t>(token_lists.size());
  for (const auto& tokens : token_lists) {
    for (const auto& token : tokens) {
      ++hist.counts[token];
      ++hist.total;
    }
  }
  return hist;
}

double entropy_bits(std::span<const std::int64_t> raw_counts) {
  // Summing in sorted order makes the result independent of token labels.
  std::vector<std::int64_t> counts(raw_counts.begin(), raw_counts.end());
  std::sort(counts.begin(), counts.end());
  std::int64_t total = 0;
  for (auto c : counts) {
    if (c > 0) total += c;
  }
  if (total == 0) throw EmptyHistogram();
  const double n = static_cast<double>(total);
  double h = 0.0;
  std::size_t outcomes = 0;
  for (auto c : counts) {
    if (c <= 0) continue;  // 0 log 0 = 0
    ++outcomes;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  // Rounding must not push the result outside [0, log2(outcomes)].
  return std::clamp(h, 0.0, std::log2(static_cast<double>(outcomes)));
}

double entropy(const TokenHistogram& hist) {
  if (hist.total == 0) throw EmptyHistogram();
  std::vector<std::int64_t> counts;
  counts.reserve(hist.counts.size());
  for (const auto& [_, c] : hist.counts) counts.push_back(c);
  return entropy_bits(counts);
}

DisplayHistogram display_histogram(const TokenHistogram& hist) {
  DisplayHistogram out;
  for (const auto& [token, count] : hist.counts) {
    if (count == 1) {
      ++out.other_count;
    } else {
      out.bins.emplace_back(token, count);
    }
  }
  std::stable_sort(out.bins.begin(), out.bins.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

}  // namespace ambilex::ambiguity

#include "ambilex/ambiguity/analysis.h"

#include "ambilex/corpus/cells.h"

namespace ambilex::ambiguity {

CorpusAnalysis analyze_corpus(const corpus::StimulusSet& stimuli, const corpus::ResponseSet& responses,
                              const textpipe::LexiconBundle& lexicon, const textpipe::PipelineConfig& pipeline,
                              const ScoringConfig& scoring) {
  CorpusAnalysis result;
  std::map<std::string, std::map<std::int64_t, TokenHistogram>> by_image;

  for (const auto& [key, texts] : corpus::group_by_cell(responses, stimuli)) {
    std::vector<std::vector<std::string>> token_lists;
    token_lists.reserve(texts.size());
    std::int64_t hedges = 0;
    for (const auto& text : texts) {
      auto processed = textpipe::process_description(text, lexicon, pipeline);
      hedges += processed.hedge_count;
      token_lists.push_back(std::move(processed.tokens));
    }
    TokenHistogram hist = build_histogram(key, token_lists);
    result.hedge_counts[key] = hedges;
    by_image[key.image_id][key.duration_ms] = hist;
    result.histograms.emplace(key, std::move(hist));
  }

  result.scores.reserve(by_image.size());
  for (const auto& [image_id, cells] : by_image) result.scores.push_back(score_image(image_id, cells, scoring));
  return result;
}

}  // namespace ambilex::ambiguity

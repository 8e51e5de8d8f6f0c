#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ambilex/ambiguity/score.h"
#include "ambilex/corpus/types.h"
#include "ambilex/textpipe/pipeline.h"

namespace ambilex::ambiguity {

struct CorpusAnalysis {
  std::map<corpus::CellKey, TokenHistogram> histograms;
  std::map<corpus::CellKey, std::int64_t> hedge_counts;
  std::vector<AmbiguityScore> scores;  // ascending image_id
};

// Runs the text pipeline over every description, builds one histogram per
// cell and scores each image that has at least one cell. Vigilance filtering
// is the caller's choice and happens before this call.
CorpusAnalysis analyze_corpus(const corpus::StimulusSet& stimuli, const corpus::ResponseSet& responses,
                              const textpipe::LexiconBundle& lexicon, const textpipe::PipelineConfig& pipeline = {},
                              const ScoringConfig& scoring = {});

}  // namespace ambilex::ambiguity

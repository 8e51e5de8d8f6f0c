#pragma once

#include <cstdint>
#include <map>

#include "ambilex/corpus/types.h"

namespace ambilex::corpus {

// Keeps records whose participant passed the vigilance check. Order is kept.
ResponseSet filter_by_vigilance(const ResponseSet& responses);

// Partitions descriptions into (image, duration) cells. Each description lands
// in exactly one cell; empty cells never appear. Throws UnknownImageId.
CellMap group_by_cell(const ResponseSet& responses, const StimulusSet& stimuli);

struct CorpusSummary {
  std::size_t records = 0;
  std::size_t participants = 0;
  std::map<CellKey, std::size_t> cell_sizes;

  double mean_cell_size() const;
};

CorpusSummary summarize(const ResponseSet& responses, const StimulusSet& stimuli);

}  // namespace ambilex::corpus

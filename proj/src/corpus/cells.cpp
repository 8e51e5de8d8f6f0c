#include "ambilex/corpus/cells.h"

#include <set>

namespace ambilex::corpus {

ResponseSet filter_by_vigilance(const ResponseSet& responses) {
  ResponseSet out;
  out.provenance = responses.provenance;
  out.records.reserve(responses.records.size());
  for (const auto& r : responses.records) {
    if (r.vigilance_passed) out.records.push_back(r);
  }
  return out;
}

CellMap group_by_cell(const ResponseSet& responses, const StimulusSet& stimuli) {
  CellMap cells;
  for (const auto& r : responses.records) {
    if (!stimuli.contains(r.image_id)) throw UnknownImageId(r.image_id);
    cells[CellKey{r.image_id, r.duration_ms}].push_back(r.raw_text);
  }
  return cells;
}

double CorpusSummary::mean_cell_size() const {
  if (cell_sizes.empty()) return 0.0;
  std::size_t total = 0;
  for (const auto& [_, n] : cell_sizes) total += n;
  return static_cast<double>(total) / static_cast<double>(cell_sizes.size());
}

CorpusSummary summarize(const ResponseSet& responses, const StimulusSet& stimuli) {
  CorpusSummary summary;
  summary.records = responses.records.size();
  std::set<std::string> participants;
  for (const auto& r : responses.records) participants.insert(r.participant_id);
  summary.participants = participants.size();
  for (const auto& [key, texts] : group_by_cell(responses, stimuli)) summary.cell_sizes[key] = texts.size();
  return summary;
}

}  // namespace ambilex::corpus

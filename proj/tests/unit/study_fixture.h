#pragma once

#include <atomic>

#include "ambilex/study/service.h"
#include "synth.h"

namespace ambilex::testing {

inline study::StudyConfig seeded_config(std::uint64_t seed = 42) {
  study::StudyConfig c;
  c.rng_seed = seed;
  return c;
}

// Deterministic clock advancing one second per call.
inline study::StudyService::Clock ticking_clock() {
  auto n = std::make_shared<std::atomic<std::int64_t>>(0);
  return [n] { return fixed_time(1000 * (*n)++); };
}

inline study::StudyService::Options memory_options() {
  study::StudyService::Options o;
  o.clock = ticking_clock();
  return o;
}

inline study::StudyService::Options log_options(const std::filesystem::path& log) {
  study::StudyService::Options o;
  o.log_path = log;
  o.sync = false;
  o.clock = ticking_clock();
  return o;
}

// Submits every remaining trial. The first `probes_correct` probes get the
// right cell, later ones a wrong cell.
inline study::SubmitAck run_session(study::StudyService& service, const std::string& session_id,
                                    int probes_correct = 3, std::int64_t exposure_jitter_ms = 0) {
  const int cells = service.config().grid_cells();
  int probes_seen = 0;
  study::SubmitAck ack;
  for (;;) {
    const auto next = service.next_trial(session_id);
    if (next.complete()) return ack;
    const auto& t = *next.trial;
    study::TrialPayload p;
    p.measured_exposure_ms = t.duration_ms + exposure_jitter_ms;
    if (t.kind == study::TrialKind::VigilanceProbe) {
      const bool correct = probes_seen++ < probes_correct;
      p.cell_clicked = correct ? *t.probe_cell : (*t.probe_cell + 1) % cells;
    } else {
      p.description = "a " + t.image_id + " shape";
      p.cell_clicked = next.trial_index % cells;
    }
    ack = service.submit_trial(session_id, next.trial_index, p);
  }
}

}  // namespace ambilex::testing

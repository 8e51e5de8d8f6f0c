#include "ambilex/study/service.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "ambilex/corpus/io.h"

namespace ambilex::study {

UnknownSession::UnknownSession(const std::string& session_id)
    : StudyError(fmt::format("unknown session '{}'", session_id)) {}

SessionNotActive::SessionNotActive(const std::string& session_id, SessionStatus status)
    : StudyError(fmt::format("session '{}' is {}", session_id, to_string(status))) {}

OutOfOrderSubmission::OutOfOrderSubmission(const std::string& session_id, int expected, int got)
    : StudyError(fmt::format("session '{}' expects trial {}, got {}", session_id, expected, got)),
      expected_(expected) {}

DuplicateSubmission::DuplicateSubmission(const std::string& session_id, int trial_index)
    : StudyError(fmt::format("trial {} of session '{}' was already submitted", trial_index, session_id)) {}

CategoryExhausted::CategoryExhausted(corpus::Category category, std::size_t available, int needed)
    : StudyError(fmt::format("category {} has {} images, sessions need {}", corpus::to_string(category), available,
                             needed)) {}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

namespace {

corpus::Timestamp system_now() {
  return std::chrono::floor<std::chrono::milliseconds>(std::chrono::system_clock::now());
}

// First k of a seeded Fisher-Yates shuffle of [0, n).
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + uniform_below(rng, n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace

StudyService::StudyService(StudyConfig config, corpus::StimulusSet stimuli, Options options)
    : config_(std::move(config)), stimuli_(std::move(stimuli)), clock_(std::move(options.clock)) {
  config_.validate();
  if (!clock_) clock_ = system_now;
  base_seed_ = config_.rng_seed ? *config_.rng_seed : (std::uint64_t{std::random_device{}()} << 32 | std::random_device{}());

  if (!options.log_path) return;
  const auto& path = *options.log_path;
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    RecoveredState rec = recover(path, config_.vigilance_pass_min);
    recovery_warnings_ = rec.warnings;
    writer_ = std::make_unique<EventLogWriter>(path, rec.log.valid_bytes, rec.log.events.size() + 1,
                                               EventLogWriter::Options{options.sync});
    // recover() applied owed completions in memory; make them durable.
    for (const auto& c : rec.pending_completions) writer_->append(c);
    state_ = std::move(rec.state);
  } else {
    writer_ = std::make_unique<EventLogWriter>(path, 0, 1, EventLogWriter::Options{options.sync});
  }
}

void StudyService::log_and_apply(const Event& event) {
  // Callers validate first, so apply() never rejects an event already on disk.
  if (writer_) writer_->append(event);
  state_.apply(event);
}

std::map<Condition, int> StudyService::condition_load_locked() const {
  std::map<Condition, int> load;
  for (auto c : config_.categories) {
    for (auto d : config_.durations_ms) load[Condition{c, d}] = 0;
  }
  for (const auto& s : state_.sessions()) {
    if (s.status == SessionStatus::Abandoned) continue;
    auto it = load.find(Condition{s.category, s.duration_ms});
    if (it != load.end()) ++it->second;
  }
  return load;
}

std::map<Condition, int> StudyService::condition_load() const {
  std::lock_guard lock(mutex_);
  return condition_load_locked();
}

std::vector<TrialSpec> StudyService::build_plan(const Condition& condition, std::mt19937_64& rng) const {
  auto pool = stimuli_.in_category(condition.category);
  std::sort(pool.begin(), pool.end(), [](const auto* a, const auto* b) { return a->id < b->id; });

  const auto n_images = static_cast<std::size_t>(config_.images_per_session);
  const auto n_probes = static_cast<std::size_t>(config_.vigilance_probe_count);
  const auto picks = sample_indices(pool.size(), n_images, rng);

  const std::size_t length = n_images + n_probes;
  std::vector<bool> is_probe(length, false);
  for (auto pos : sample_indices(length, n_probes, rng)) is_probe[pos] = true;

  std::vector<TrialSpec> plan;
  plan.reserve(length);
  std::size_t next_image = 0;
  for (std::size_t i = 0; i < length; ++i) {
    TrialSpec t;
    t.duration_ms = condition.duration_ms;
    if (is_probe[i]) {
      t.kind = TrialKind::VigilanceProbe;
      t.probe_cell = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(config_.grid_cells())));
    } else {
      const auto* img = pool[picks[next_image++]];
      t.kind = TrialKind::Image;
      t.image_id = img->id;
      t.asset = img->path;
    }
    plan.push_back(std::move(t));
  }
  return plan;
}

Session StudyService::create_session(const std::string& participant_id) {
  if (participant_id.empty()) throw InvalidPayload("participant_id must not be empty");
  std::lock_guard lock(mutex_);

  for (auto c : config_.categories) {
    const auto available = stimuli_.in_category(c).size();
    if (available < static_cast<std::size_t>(config_.images_per_session)) {
      throw CategoryExhausted(c, available, config_.images_per_session);
    }
  }

  const auto ordinal = static_cast<std::uint64_t>(state_.sessions().size());
  std::mt19937_64 rng(splitmix64(base_seed_ + ordinal));

  const auto load = condition_load_locked();
  int least = std::numeric_limits<int>::max();
  for (const auto& [cond, n] : load) least = std::min(least, n);
  // Candidates in config order so the draw does not depend on enum ordering.
  std::vector<Condition> candidates;
  for (auto c : config_.categories) {
    for (auto d : config_.durations_ms) {
      if (load.at(Condition{c, d}) == least) candidates.push_back(Condition{c, d});
    }
  }
  const Condition chosen = candidates[uniform_below(rng, candidates.size())];

  SessionCreated e;
  e.session_id = fmt::format("s{:06d}", ordinal + 1);
  e.participant_id = participant_id;
  e.category = chosen.category;
  e.duration_ms = chosen.duration_ms;
  e.trial_plan = build_plan(chosen, rng);
  e.at = clock_();
  log_and_apply(e);
  return *state_.find(e.session_id);
}

NextTrial StudyService::next_trial(const std::string& session_id) const {
  std::lock_guard lock(mutex_);
  const Session* s = state_.find(session_id);
  if (!s) throw UnknownSession(session_id);
  if (s->status == SessionStatus::Abandoned) throw SessionNotActive(session_id, s->status);
  NextTrial out;
  out.trial_index = s->cursor;
  out.trial_count = static_cast<int>(s->trial_plan.size());
  if (!s->plan_finished()) out.trial = s->trial_plan[static_cast<std::size_t>(s->cursor)];
  return out;
}

SubmitAck StudyService::submit_trial(const std::string& session_id, int trial_index, const TrialPayload& payload) {
  std::lock_guard lock(mutex_);
  const Session* s = state_.find(session_id);
  if (!s) throw UnknownSession(session_id);
  if (s->status == SessionStatus::Abandoned) throw SessionNotActive(session_id, s->status);
  if (trial_index < s->cursor) throw DuplicateSubmission(session_id, trial_index);
  if (trial_index > s->cursor) throw OutOfOrderSubmission(session_id, s->cursor, trial_index);
  if (s->status != SessionStatus::Active || s->plan_finished()) throw SessionNotActive(session_id, s->status);

  const TrialSpec& trial = s->trial_plan[static_cast<std::size_t>(trial_index)];
  const int cells = config_.grid_cells();
  if (!payload.cell_clicked) throw InvalidPayload("cell_clicked is required");
  if (*payload.cell_clicked < 0 || *payload.cell_clicked >= cells) {
    throw InvalidPayload(fmt::format("cell_clicked must lie in [0, {})", cells));
  }
  if (trial.kind == TrialKind::Image && !payload.description) {
    throw InvalidPayload("image trials require a description");
  }
  if (trial.kind == TrialKind::VigilanceProbe && payload.description) {
    throw InvalidPayload("probe trials take no description");
  }
  if (payload.measured_exposure_ms && *payload.measured_exposure_ms < 0) {
    throw InvalidPayload("measured_exposure_ms must be non-negative");
  }

  TrialSubmitted e;
  e.session_id = session_id;
  e.trial_index = trial_index;
  e.description = payload.description;
  e.cell_clicked = payload.cell_clicked;
  e.measured_exposure_ms = payload.measured_exposure_ms;
  e.at = clock_();
  log_and_apply(e);

  s = state_.find(session_id);
  if (s->plan_finished()) {
    log_and_apply(completion_for(*s, config_.vigilance_pass_min));
    s = state_.find(session_id);
  }
  SubmitAck ack;
  ack.session_id = session_id;
  ack.trial_index = trial_index;
  ack.cursor = s->cursor;
  ack.status = s->status;
  ack.vigilance_passed = s->vigilance_passed;
  return ack;
}

void StudyService::abandon_session(const std::string& session_id) {
  std::lock_guard lock(mutex_);
  const Session* s = state_.find(session_id);
  if (!s) throw UnknownSession(session_id);
  if (s->status != SessionStatus::Active) throw SessionNotActive(session_id, s->status);
  log_and_apply(SessionAbandoned{session_id, clock_()});
}

std::optional<Session> StudyService::session(const std::string& session_id) const {
  std::lock_guard lock(mutex_);
  const Session* s = state_.find(session_id);
  if (!s) return std::nullopt;
  return *s;
}

std::vector<Session> StudyService::sessions() const {
  std::lock_guard lock(mutex_);
  return state_.sessions();
}

std::vector<corpus::ResponseRecord> StudyService::export_records() const {
  std::lock_guard lock(mutex_);
  return state_.export_records(config_.exposure_tolerance);
}

std::size_t StudyService::export_responses(const std::filesystem::path& out) const {
  const auto records = export_records();
  corpus::save_responses(out, records);
  return records.size();
}

}  // namespace ambilex::study

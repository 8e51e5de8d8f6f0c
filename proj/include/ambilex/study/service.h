#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ambilex/corpus/types.h"
#include "ambilex/study/config.h"
#include "ambilex/study/event_log.h"
#include "ambilex/study/state.h"

namespace ambilex::study {

class UnknownSession : public StudyError {
 public:
  explicit UnknownSession(const std::string& session_id);
};

class SessionNotActive : public StudyError {
 public:
  SessionNotActive(const std::string& session_id, SessionStatus status);
};

class OutOfOrderSubmission : public StudyError {
 public:
  OutOfOrderSubmission(const std::string& session_id, int expected, int got);
  int expected() const { return expected_; }

 private:
  int expected_;
};

// The trial was already acknowledged (trial_index below the cursor). Clients
// retrying after a lost acknowledgment can treat this as success.
class DuplicateSubmission : public StudyError {
 public:
  DuplicateSubmission(const std::string& session_id, int trial_index);
};

class InvalidPayload : public StudyError {
 public:
  using StudyError::StudyError;
};

class CategoryExhausted : public StudyError {
 public:
  CategoryExhausted(corpus::Category category, std::size_t available, int needed);
};

std::uint64_t splitmix64(std::uint64_t x);
// Unbiased draw from [0, n); n > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

struct Condition {
  corpus::Category category = corpus::Category::Recognizable;
  std::int64_t duration_ms = 0;

  auto operator<=>(const Condition&) const = default;
};

struct TrialPayload {
  std::optional<std::string> description;  // required for image trials, absent for probes
  std::optional<int> cell_clicked;         // required for both kinds
  std::optional<std::int64_t> measured_exposure_ms;
};

struct NextTrial {
  int trial_index = 0;
  int trial_count = 0;
  std::optional<TrialSpec> trial;  // empty: session complete

  bool complete() const { return !trial.has_value(); }
};

struct SubmitAck {
  std::string session_id;
  int trial_index = 0;
  int cursor = 0;
  SessionStatus status = SessionStatus::Active;
  std::optional<bool> vigilance_passed;
};

/// Session service over an append-only event log. All mutations are
/// serialized; each is durable before the call returns.
class StudyService {
 public:
  using Clock = std::function<corpus::Timestamp()>;

  struct Options {
    std::optional<std::filesystem::path> log_path;  // none: in-memory only
    bool sync = true;
    Clock clock;  // defaults to the system clock
  };

  // Replays an existing log at `options.log_path` (see recover()), discarding a
  // torn tail and logging any owed completion events. Throws ConfigError,
  // CorruptLog, IoError.
  StudyService(StudyConfig config, corpus::StimulusSet stimuli, Options options);
  StudyService(StudyConfig config, corpus::StimulusSet stimuli) : StudyService(std::move(config), std::move(stimuli), Options{}) {}

  // Throws CategoryExhausted, InvalidPayload (empty participant id), IoError.
  Session create_session(const std::string& participant_id);

  // Throws UnknownSession, SessionNotActive (abandoned).
  NextTrial next_trial(const std::string& session_id) const;

  // Throws UnknownSession, SessionNotActive, DuplicateSubmission,
  // OutOfOrderSubmission, InvalidPayload, IoError.
  SubmitAck submit_trial(const std::string& session_id, int trial_index, const TrialPayload& payload);

  // Throws UnknownSession, SessionNotActive.
  void abandon_session(const std::string& session_id);

  std::optional<Session> session(const std::string& session_id) const;
  std::vector<Session> sessions() const;
  // Active plus completed sessions per condition; every configured condition present.
  std::map<Condition, int> condition_load() const;

  std::vector<corpus::ResponseRecord> export_records() const;
  // Throws IoError.
  std::size_t export_responses(const std::filesystem::path& out) const;

  const StudyConfig& config() const { return config_; }
  const corpus::StimulusSet& stimuli() const { return stimuli_; }
  const std::vector<std::string>& recovery_warnings() const { return recovery_warnings_; }

 private:
  void log_and_apply(const Event& event);
  std::map<Condition, int> condition_load_locked() const;
  std::vector<TrialSpec> build_plan(const Condition& condition, std::mt19937_64& rng) const;

  StudyConfig config_;
  corpus::StimulusSet stimuli_;
  Clock clock_;
  std::uint64_t base_seed_ = 0;
  std::vector<std::string> recovery_warnings_;

  mutable std::mutex mutex_;
  StudyState state_;
  std::unique_ptr<EventLogWriter> writer_;
};

}  // namespace ambilex::study

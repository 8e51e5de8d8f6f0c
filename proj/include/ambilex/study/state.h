#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ambilex/corpus/types.h"
#include "ambilex/study/event_log.h"
#include "ambilex/study/events.h"

namespace ambilex::study {

enum class SessionStatus { Active, Complete, Abandoned };

std::string_view to_string(SessionStatus status);

struct Session {
  std::string session_id;
  std::string participant_id;
  corpus::Category category = corpus::Category::Recognizable;
  std::int64_t duration_ms = 0;
  std::vector<TrialSpec> trial_plan;
  int cursor = 0;
  SessionStatus status = SessionStatus::Active;
  int vigilance_correct = 0;
  std::optional<bool> vigilance_passed;  // set on completion
  std::vector<TrialSubmitted> submissions;
  corpus::Timestamp created_at;

  bool plan_finished() const { return cursor == static_cast<int>(trial_plan.size()); }

  bool operator==(const Session&) const = default;
};

// An event that contradicts the state it is applied to.
class StateError : public StudyError {
 public:
  using StudyError::StudyError;
};

/// Session table rebuilt by folding events in log order.
class StudyState {
 public:
  // Throws StateError if the event is inconsistent with the current state.
  void apply(const Event& event);

  const Session* find(std::string_view session_id) const;
  const std::vector<Session>& sessions() const { return sessions_; }  // creation order

  // Image-trial records of completed sessions, in session creation order then
  // trial order. Records whose measured exposure deviates from nominal by more
  // than `exposure_tolerance` (a fraction) are flagged.
  std::vector<corpus::ResponseRecord> export_records(double exposure_tolerance) const;

  bool operator==(const StudyState& other) const { return sessions_ == other.sessions_; }

 private:
  Session& get(const std::string& session_id);

  std::vector<Session> sessions_;
  std::unordered_map<std::string, std::size_t> index_;
};

// The completion event owed to a session whose every trial was submitted but
// whose completion was never logged (crash between the two appends).
SessionCompleted completion_for(const Session& session, int vigilance_pass_min);

struct RecoveredState {
  StudyState state;
  LogContents log;
  std::vector<SessionCompleted> pending_completions;  // already applied to `state`
  std::vector<std::string> warnings;
};

// Replays `log`; an empty log gives an empty state. Throws FileNotFound, or CorruptLog
// for malformed lines or events the state rejects.
RecoveredState recover(const std::filesystem::path& log, int vigilance_pass_min);

}  // namespace ambilex::study

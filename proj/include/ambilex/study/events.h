#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ambilex/corpus/timestamp.h"
#include "ambilex/corpus/types.h"
#include "ambilex/study/config.h"

namespace ambilex::study {

enum class TrialKind { Image, VigilanceProbe };

std::string_view to_string(TrialKind kind);
std::optional<TrialKind> parse_trial_kind(std::string_view text);

struct TrialSpec {
  TrialKind kind = TrialKind::Image;
  std::string image_id;  // image trials only
  std::string asset;     // stimulus path relative to the asset root; image trials only
  std::int64_t duration_ms = 0;
  std::optional<int> probe_cell;  // probes only: row-major grid cell index

  bool operator==(const TrialSpec&) const = default;
};

struct SessionCreated {
  std::string session_id;
  std::string participant_id;
  corpus::Category category = corpus::Category::Recognizable;
  std::int64_t duration_ms = 0;
  std::vector<TrialSpec> trial_plan;
  corpus::Timestamp at;

  bool operator==(const SessionCreated&) const = default;
};

struct TrialSubmitted {
  std::string session_id;
  int trial_index = 0;
  std::optional<std::string> description;  // image trials
  std::optional<int> cell_clicked;
  std::optional<std::int64_t> measured_exposure_ms;
  corpus::Timestamp at;

  bool operator==(const TrialSubmitted&) const = default;
};

struct SessionCompleted {
  std::string session_id;
  int vigilance_correct = 0;
  bool vigilance_passed = false;
  corpus::Timestamp at;

  bool operator==(const SessionCompleted&) const = default;
};

struct SessionAbandoned {
  std::string session_id;
  corpus::Timestamp at;

  bool operator==(const SessionAbandoned&) const = default;
};

using Event = std::variant<SessionCreated, TrialSubmitted, SessionCompleted, SessionAbandoned>;

struct LoggedEvent {
  std::uint64_t seq = 0;
  Event event;

  bool operator==(const LoggedEvent&) const = default;
};

class EventDecodeError : public StudyError {
 public:
  using StudyError::StudyError;
};

// One log line without the trailing newline.
std::string encode_event(const LoggedEvent& logged);
// Throws EventDecodeError.
LoggedEvent decode_event(std::string_view line);

}  // namespace ambilex::study

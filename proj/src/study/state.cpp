#include "ambilex/study/state.h"

#include <cmath>

#include <fmt/format.h>

namespace ambilex::study {

std::string_view to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::Active: return "active";
    case SessionStatus::Complete: return "complete";
    case SessionStatus::Abandoned: return "abandoned";
  }
  return "active";
}

const Session* StudyState::find(std::string_view session_id) const {
  auto it = index_.find(std::string(session_id));
  return it == index_.end() ? nullptr : &sessions_[it->second];
}

Session& StudyState::get(const std::string& session_id) {
  auto it = index_.find(session_id);
  if (it == index_.end()) throw StateError(fmt::format("event for unknown session '{}'", session_id));
  return sessions_[it->second];
}

void StudyState::apply(const Event& event) {
  if (const auto* e = std::get_if<SessionCreated>(&event)) {
    if (index_.contains(e->session_id)) throw StateError(fmt::format("session '{}' created twice", e->session_id));
    if (e->trial_plan.empty()) throw StateError(fmt::format("session '{}' has an empty plan", e->session_id));
    Session s;
    s.session_id = e->session_id;
    s.participant_id = e->participant_id;
    s.category = e->category;
    s.duration_ms = e->duration_ms;
    s.trial_plan = e->trial_plan;
    s.created_at = e->at;
    index_.emplace(s.session_id, sessions_.size());
    sessions_.push_back(std::move(s));
  } else if (const auto* e = std::get_if<TrialSubmitted>(&event)) {
    Session& s = get(e->session_id);
    if (s.status != SessionStatus::Active) throw StateError(fmt::format("submission to inactive session '{}'", s.session_id));
    if (s.plan_finished()) throw StateError(fmt::format("submission past the plan of '{}'", s.session_id));
    if (e->trial_index != s.cursor) {
      throw StateError(fmt::format("session '{}' expects trial {}, got {}", s.session_id, s.cursor, e->trial_index));
    }
    const TrialSpec& trial = s.trial_plan[static_cast<std::size_t>(s.cursor)];
    if (trial.kind == TrialKind::Image && !e->description) {
      throw StateError(fmt::format("image trial {} of '{}' lacks a description", e->trial_index, s.session_id));
    }
    if (trial.kind == TrialKind::VigilanceProbe) {
      if (!e->cell_clicked) {
        throw StateError(fmt::format("probe trial {} of '{}' lacks cell_clicked", e->trial_index, s.session_id));
      }
      if (*e->cell_clicked == trial.probe_cell) ++s.vigilance_correct;
    }
    s.submissions.push_back(*e);
    ++s.cursor;
  } else if (const auto* e = std::get_if<SessionCompleted>(&event)) {
    Session& s = get(e->session_id);
    if (s.status != SessionStatus::Active || !s.plan_finished()) {
      throw StateError(fmt::format("session '{}' completed before its last trial", s.session_id));
    }
    if (e->vigilance_correct != s.vigilance_correct) {
      throw StateError(fmt::format("session '{}' completion reports {} correct probes, replay counts {}", s.session_id,
                                   e->vigilance_correct, s.vigilance_correct));
    }
    s.status = SessionStatus::Complete;
    s.vigilance_passed = e->vigilance_passed;
  } else if (const auto* e = std::get_if<SessionAbandoned>(&event)) {
    Session& s = get(e->session_id);
    if (s.status != SessionStatus::Active) throw StateError(fmt::format("abandoning inactive session '{}'", s.session_id));
    s.status = SessionStatus::Abandoned;
  }
}

std::vector<corpus::ResponseRecord> StudyState::export_records(double exposure_tolerance) const {
  std::vector<corpus::ResponseRecord> out;
  for (const auto& s : sessions_) {
    if (s.status != SessionStatus::Complete) continue;
    for (const auto& sub : s.submissions) {
      const TrialSpec& trial = s.trial_plan[static_cast<std::size_t>(sub.trial_index)];
      if (trial.kind != TrialKind::Image) continue;
      corpus::ResponseRecord r;
      r.participant_id = s.participant_id;
      r.session_id = s.session_id;
      r.image_id = trial.image_id;
      r.duration_ms = trial.duration_ms;
      r.raw_text = sub.description.value_or("");
      r.vigilance_passed = s.vigilance_passed.value_or(false);
      r.timestamp = sub.at;
      r.measured_exposure_ms = sub.measured_exposure_ms;
      if (sub.measured_exposure_ms) {
        const auto deviation = std::abs(static_cast<double>(*sub.measured_exposure_ms - trial.duration_ms));
        r.exposure_flagged = deviation > exposure_tolerance * static_cast<double>(trial.duration_ms);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

SessionCompleted completion_for(const Session& session, int vigilance_pass_min) {
  SessionCompleted c;
  c.session_id = session.session_id;
  c.vigilance_correct = session.vigilance_correct;
  c.vigilance_passed = session.vigilance_correct >= vigilance_pass_min;
  c.at = session.submissions.empty() ? session.created_at : session.submissions.back().at;
  return c;
}

RecoveredState recover(const std::filesystem::path& log, int vigilance_pass_min) {
  RecoveredState out;
  out.log = read_event_log(log);
  out.warnings = out.log.warnings;
  for (std::size_t i = 0; i < out.log.events.size(); ++i) {
    try {
      out.state.apply(out.log.events[i].event);
    } catch (const StateError& e) {
      throw CorruptLog(out.log.offsets[i], e.what());
    }
  }
  for (const auto& s : out.state.sessions()) {
    if (s.status == SessionStatus::Active && s.plan_finished()) {
      out.pending_completions.push_back(completion_for(s, vigilance_pass_min));
    }
  }
  for (const auto& c : out.pending_completions) {
    out.state.apply(c);
    out.warnings.push_back(fmt::format("session '{}' had all trials submitted but no completion event", c.session_id));
  }
  return out;
}

}  // namespace ambilex::study

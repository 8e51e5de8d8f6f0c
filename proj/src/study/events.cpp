#include "ambilex/study/events.h"

#include <fmt/format.h>
#include <json.hpp>

namespace ambilex::study {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(TrialKind kind) {
  return kind == TrialKind::Image ? "image" : "vigilance_probe";
}

std::optional<TrialKind> parse_trial_kind(std::string_view text) {
  if (text == "image") return TrialKind::Image;
  if (text == "vigilance_probe") return TrialKind::VigilanceProbe;
  return std::nullopt;
}

namespace {

ordered_json encode_trial(const TrialSpec& t) {
  ordered_json j;
  j["kind"] = to_string(t.kind);
  if (t.kind == TrialKind::Image) {
    j["image_id"] = t.image_id;
    j["asset"] = t.asset;
  }
  j["duration_ms"] = t.duration_ms;
  if (t.probe_cell) j["probe_cell"] = *t.probe_cell;
  return j;
}

[[noreturn]] void fail(const std::string& what) { throw EventDecodeError("bad event: " + what); }

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(fmt::format("missing '{}'", key));
  return *it;
}

std::string str_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) fail(fmt::format("'{}' must be a string", key));
  return v.get<std::string>();
}

template <class Int>
Int int_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) fail(fmt::format("'{}' must be an integer", key));
  return v.get<Int>();
}

template <class Int>
std::optional<Int> opt_int(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) fail(fmt::format("'{}' must be an integer", key));
  return it->get<Int>();
}

corpus::Timestamp time_field(const json& j) {
  auto t = corpus::parse_timestamp(str_field(j, "at"));
  if (!t) fail("'at' is not an ISO-8601 UTC timestamp");
  return *t;
}

TrialSpec decode_trial(const json& j) {
  if (!j.is_object()) fail("trial_plan entries must be objects");
  TrialSpec t;
  auto kind = parse_trial_kind(str_field(j, "kind"));
  if (!kind) fail("unknown trial kind");
  t.kind = *kind;
  if (t.kind == TrialKind::Image) {
    t.image_id = str_field(j, "image_id");
    t.asset = str_field(j, "asset");
  }
  t.duration_ms = int_field<std::int64_t>(j, "duration_ms");
  t.probe_cell = opt_int<int>(j, "probe_cell");
  if (t.kind == TrialKind::VigilanceProbe && !t.probe_cell) fail("probe trial without probe_cell");
  return t;
}

}  // namespace

std::string encode_event(const LoggedEvent& logged) {
  ordered_json j;
  j["seq"] = logged.seq;
  std::visit(
      [&j](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, SessionCreated>) {
          j["type"] = "session_created";
          j["at"] = corpus::format_timestamp(e.at);
          j["session_id"] = e.session_id;
          j["participant_id"] = e.participant_id;
          j["category"] = corpus::to_string(e.category);
          j["duration_ms"] = e.duration_ms;
          auto plan = ordered_json::array();
          for (const auto& t : e.trial_plan) plan.push_back(encode_trial(t));
          j["trial_plan"] = std::move(plan);
        } else if constexpr (std::is_same_v<T, TrialSubmitted>) {
          j["type"] = "trial_submitted";
          j["at"] = corpus::format_timestamp(e.at);
          j["session_id"] = e.session_id;
          j["trial_index"] = e.trial_index;
          if (e.description) j["description"] = *e.description;
          if (e.cell_clicked) j["cell_clicked"] = *e.cell_clicked;
          if (e.measured_exposure_ms) j["measured_exposure_ms"] = *e.measured_exposure_ms;
        } else if constexpr (std::is_same_v<T, SessionCompleted>) {
          j["type"] = "session_completed";
          j["at"] = corpus::format_timestamp(e.at);
          j["session_id"] = e.session_id;
          j["vigilance_correct"] = e.vigilance_correct;
          j["vigilance_passed"] = e.vigilance_passed;
        } else {
          j["type"] = "session_abandoned";
          j["at"] = corpus::format_timestamp(e.at);
          j["session_id"] = e.session_id;
        }
      },
      logged.event);
  return j.dump(-1, ' ', false, json::error_handler_t::strict);
}

LoggedEvent decode_event(std::string_view line) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) fail("not a JSON object");

  LoggedEvent out;
  out.seq = int_field<std::uint64_t>(j, "seq");
  const std::string type = str_field(j, "type");
  if (type == "session_created") {
    SessionCreated e;
    e.at = time_field(j);
    e.session_id = str_field(j, "session_id");
    e.participant_id = str_field(j, "participant_id");
    auto cat = corpus::parse_category(str_field(j, "category"));
    if (!cat) fail("unknown category");
    e.category = *cat;
    e.duration_ms = int_field<std::int64_t>(j, "duration_ms");
    const auto& plan = field(j, "trial_plan");
    if (!plan.is_array()) fail("'trial_plan' must be an array");
    for (const auto& t : plan) e.trial_plan.push_back(decode_trial(t));
    out.event = std::move(e);
  } else if (type == "trial_submitted") {
    TrialSubmitted e;
    e.at = time_field(j);
    e.session_id = str_field(j, "session_id");
    e.trial_index = int_field<int>(j, "trial_index");
    if (auto it = j.find("description"); it != j.end() && !it->is_null()) {
      if (!it->is_string()) fail("'description' must be a string");
      e.description = it->get<std::string>();
    }
    e.cell_clicked = opt_int<int>(j, "cell_clicked");
    e.measured_exposure_ms = opt_int<std::int64_t>(j, "measured_exposure_ms");
    out.event = std::move(e);
  } else if (type == "session_completed") {
    SessionCompleted e;
    e.at = time_field(j);
    e.session_id = str_field(j, "session_id");
    e.vigilance_correct = int_field<int>(j, "vigilance_correct");
    const auto& passed = field(j, "vigilance_passed");
    if (!passed.is_boolean()) fail("'vigilance_passed' must be a boolean");
    e.vigilance_passed = passed.get<bool>();
    out.event = std::move(e);
  } else if (type == "session_abandoned") {
    SessionAbandoned e;
    e.at = time_field(j);
    e.session_id = str_field(j, "session_id");
    out.event = std::move(e);
  } else {
    fail(fmt::format("unknown type '{}'", type));
  }
  return out;
}

}  // namespace ambilex::study

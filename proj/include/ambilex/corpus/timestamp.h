#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace ambilex::corpus {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

// Formats as "YYYY-MM-DDTHH:MM:SS.mmmZ".
std::string format_timestamp(Timestamp t);

// Accepts "YYYY-MM-DDTHH:MM:SS[.fff]Z" (1 to 3 fraction digits) and the
// "+00:00" offset spelling. Anything else yields nullopt.
std::optional<Timestamp> parse_timestamp(std::string_view text);

}  // namespace ambilex::corpus

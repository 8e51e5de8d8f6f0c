#pragma once

// Line-record (JSON Lines) readers and writers for stimuli and responses.
//
// stimuli:   {"id", "path", "category", "source_note"}
// responses: {"participant_id", "session_id", "image_id", "duration_ms",
//             "raw_text", "vigilance_passed", "timestamp"}
//            plus optional "measured_exposure_ms" and "exposure_flagged".
//
// Blank lines are skipped. Line numbers in errors are 1-based.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "ambilex/corpus/types.h"

namespace ambilex::corpus {

StimulusSet load_stimuli(const std::filesystem::path& path);
ResponseSet load_responses(const std::filesystem::path& path);

StimulusImage parse_stimulus_line(std::string_view line, std::size_t line_no);
ResponseRecord parse_response_line(std::string_view line, std::size_t line_no);

std::string to_line(const StimulusImage& image);
std::string to_line(const ResponseRecord& record);

void write_stimuli(std::ostream& out, std::span<const StimulusImage> images);
void write_responses(std::ostream& out, std::span<const ResponseRecord> records);

// Throws IoError when the file cannot be written.
void save_stimuli(const std::filesystem::path& path, const StimulusSet& stimuli);
void save_responses(const std::filesystem::path& path, std::span<const ResponseRecord> records);

}  // namespace ambilex::corpus

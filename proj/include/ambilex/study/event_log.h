#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ambilex/study/events.h"

namespace ambilex::study {

class CorruptLog : public StudyError {
 public:
  CorruptLog(std::uint64_t offset, const std::string& reason);
  // Byte offset of the start of the offending line.
  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

struct LogContents {
  std::vector<LoggedEvent> events;
  std::vector<std::uint64_t> offsets;  // start byte of each event's line
  std::uint64_t valid_bytes = 0;  // length of the well-formed prefix
  std::vector<std::string> warnings;
};

// Reads a log written by EventLogWriter. An unterminated final line is a torn
// append: it is dropped with a warning. Any other malformed line, or a break
// in the seq numbering, throws CorruptLog. A missing file throws FileNotFound.
LogContents read_event_log(const std::filesystem::path& path);

// Single appender. Each append writes one full line and (by default) fsyncs
// before returning, so an event is durable once append returns.
class EventLogWriter {
 public:
  struct Options {
    bool sync = true;
  };

  // Creates the file if needed and truncates it to `valid_bytes`, discarding a
  // torn tail. The next appended event gets `next_seq`.
  EventLogWriter(const std::filesystem::path& path, std::uint64_t valid_bytes, std::uint64_t next_seq,
                 Options options);
  EventLogWriter(const std::filesystem::path& path, std::uint64_t valid_bytes, std::uint64_t next_seq)
      : EventLogWriter(path, valid_bytes, next_seq, Options{}) {}
  ~EventLogWriter();

  EventLogWriter(const EventLogWriter&) = delete;
  EventLogWriter& operator=(const EventLogWriter&) = delete;

  // Returns the seq assigned. Throws IoError; on failure the file is rolled
  // back to its previous length.
  std::uint64_t append(const Event& event);

  std::uint64_t next_seq() const { return next_seq_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  int fd_ = -1;
  std::uint64_t size_ = 0;
  std::uint64_t next_seq_ = 1;
  Options options_;
};

}  // namespace ambilex::study

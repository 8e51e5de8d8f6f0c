#include "ambilex/study/event_log.h"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

namespace ambilex::study {

CorruptLog::CorruptLog(std::uint64_t offset, const std::string& reason)
    : StudyError(fmt::format("corrupt event log at byte {}: {}", offset, reason)), offset_(offset) {}

LogContents read_event_log(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw FileNotFound(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  LogContents out;
  std::uint64_t expected_seq = 1;
  std::size_t pos = 0;
  while (pos < data.size()) {
    const std::size_t nl = data.find('\n', pos);
    if (nl == std::string::npos) {
      out.warnings.push_back(fmt::format("discarded {} bytes of unterminated final line at byte {}",
                                         data.size() - pos, pos));
      break;
    }
    const std::string_view line(data.data() + pos, nl - pos);
    LoggedEvent ev;
    try {
      ev = decode_event(line);
    } catch (const EventDecodeError& e) {
      throw CorruptLog(pos, e.what());
    }
    if (ev.seq != expected_seq) {
      throw CorruptLog(pos, fmt::format("expected seq {}, found {}", expected_seq, ev.seq));
    }
    ++expected_seq;
    out.events.push_back(std::move(ev));
    out.offsets.push_back(pos);
    pos = nl + 1;
    out.valid_bytes = pos;
  }
  return out;
}

EventLogWriter::EventLogWriter(const std::filesystem::path& path, std::uint64_t valid_bytes,
                               std::uint64_t next_seq, Options options)
    : path_(path), size_(valid_bytes), next_seq_(next_seq), options_(options) {
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw IoError(path, fmt::format("cannot open event log ({})", std::strerror(errno)));
  if (::ftruncate(fd_, static_cast<off_t>(valid_bytes)) != 0 ||
      ::lseek(fd_, static_cast<off_t>(valid_bytes), SEEK_SET) < 0) {
    const int err = errno;
    ::close(fd_);
    throw IoError(path, fmt::format("cannot position event log ({})", std::strerror(err)));
  }
}

EventLogWriter::~EventLogWriter() {
  if (fd_ >= 0) ::close(fd_);
}

std::uint64_t EventLogWriter::append(const Event& event) {
  const std::uint64_t seq = next_seq_;
  std::string line = encode_event(LoggedEvent{seq, event});
  line.push_back('\n');

  const char* p = line.data();
  std::size_t left = line.size();
  while (left > 0) {
    const ssize_t n = ::write(fd_, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      if (::ftruncate(fd_, static_cast<off_t>(size_)) == 0) ::lseek(fd_, static_cast<off_t>(size_), SEEK_SET);
      throw IoError(path_, fmt::format("event log write failed ({})", std::strerror(err)));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  if (options_.sync && ::fsync(fd_) != 0) {
    const int err = errno;
    if (::ftruncate(fd_, static_cast<off_t>(size_)) == 0) ::lseek(fd_, static_cast<off_t>(size_), SEEK_SET);
    throw IoError(path_, fmt::format("event log fsync failed ({})", std::strerror(err)));
  }
  size_ += line.size();
  ++next_seq_;
  return seq;
}

}  // namespace ambilex::study

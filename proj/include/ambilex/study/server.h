#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "ambilex/study/service.h"

namespace ambilex::study {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 0;  // 0: pick a free port
  std::optional<std::filesystem::path> assets_dir;  // served under /assets/
  std::string allowed_origin = "*";
};

/// JSON-over-HTTP front end for a StudyService. Routes are listed in
/// docs/api.md.
class StudyServer {
 public:
  // Binds immediately; throws IoError if the address is unavailable.
  StudyServer(StudyService& service, ServerOptions options);
  ~StudyServer();

  StudyServer(const StudyServer&) = delete;
  StudyServer& operator=(const StudyServer&) = delete;

  int port() const;

  // Blocks until stop() is called from another thread or a signal handler.
  void run();
  // Serves on a background thread.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ambilex::study

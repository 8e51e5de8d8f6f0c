#pragma once

#include <iosfwd>

namespace ambilex::cli {

// Entry point of the `ambilex` command. Returns the process exit code:
// 0 success, 1 runtime failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ambilex::cli

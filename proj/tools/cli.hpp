#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nhssh/io.hpp"

namespace nhssh::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidArguments = 2,
  kNumericalFailure = 3,
  kIoFailure = 4,
};

// Written next to every output as <out>.manifest.json.
struct RunManifest {
  std::string command;
  json params = json::object();
  json settings = json::object();
  std::uint64_t seed = 0;
  std::string tool_version;
  std::vector<std::string> output_paths;

  json to_json() const;
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nhssh::cli

#pragma once

#include <string>
#include <vector>

namespace nhssh::cli {

// One CLI invocation per figure panel. `args` excludes --out and --plot;
// `reduced` is appended for quick CI runs (later flags win).
struct Recipe {
  std::string figure;
  std::string name;
  std::string caption;
  std::vector<std::string> args;
  std::vector<std::string> reduced;
};

const std::vector<Recipe>& cookbook();

// argv for `nhssh <args> --out <out_prefix> --plot [reduced...]`.
std::vector<std::string> recipe_argv(const Recipe& r, const std::string& out_prefix,
                                     bool reduced);

}  // namespace nhssh::cli

#pragma once

#include <string>
#include <vector>

#include "store/script.hpp"

namespace store::cli {

struct Result {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// Runs one `store` invocation; `args` excludes the program name. Exit 0 on
// success, 1 on a domain error, 2 on a usage error. `serve` blocks.
Result dispatch(const std::vector<std::string>& args);

// Runs script commands in order against `project_path`, stopping at the first
// command that fails. Output of all commands is concatenated; on failure the
// error text names the script line.
Result replay(const std::vector<script::Command>& commands, const std::string& project_path);

}  // namespace store::cli

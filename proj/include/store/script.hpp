#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace store::script {

struct Command {
  int line = 0;
  std::vector<std::string> args;  // without the leading "store"
};

// Parses a command script: one `store ...` invocation per line, `#` comments,
// single and double quotes, backslash escapes inside double quotes, and
// `$NAME` / `${NAME}` substitution from `variables`. Throws SyntaxError.
std::vector<Command> parse(std::string_view text, const std::map<std::string, std::string>& variables = {});

}  // namespace store::script

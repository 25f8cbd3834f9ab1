#include "store/script.hpp"

#include <cctype>

#include "store/error.hpp"

namespace store::script {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorCode::SyntaxError, "script line " + std::to_string(line) + ": " + what, {{"line", line}});
}

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Expands one `$NAME` or `${NAME}` starting at s[i] == '$'; advances i past it.
std::string expand(std::string_view s, std::size_t& i, const std::map<std::string, std::string>& vars, int line) {
  std::string name;
  if (i + 1 < s.size() && s[i + 1] == '{') {
    auto close = s.find('}', i + 2);
    if (close == std::string_view::npos) fail(line, "unterminated ${");
    name = std::string(s.substr(i + 2, close - i - 2));
    i = close + 1;
  } else {
    std::size_t j = i + 1;
    while (j < s.size() && name_char(s[j])) ++j;
    name = std::string(s.substr(i + 1, j - i - 1));
    i = j;
  }
  if (name.empty()) return "$";
  auto it = vars.find(name);
  if (it == vars.end()) fail(line, "undefined variable $" + name);
  return it->second;
}

std::vector<std::string> split_line(std::string_view s, const std::map<std::string, std::string>& vars, int line) {
  std::vector<std::string> words;
  std::string current;
  bool in_word = false;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_word) words.push_back(std::move(current));
      current.clear();
      in_word = false;
      ++i;
    } else if (c == '#' && !in_word) {
      break;
    } else if (c == '\'') {
      auto close = s.find('\'', i + 1);
      if (close == std::string_view::npos) fail(line, "unterminated single quote");
      current.append(s.substr(i + 1, close - i - 1));
      in_word = true;
      i = close + 1;
    } else if (c == '"') {
      in_word = true;
      ++i;
      for (;;) {
        if (i >= s.size()) fail(line, "unterminated double quote");
        if (s[i] == '"') {
          ++i;
          break;
        }
        if (s[i] == '\\' && i + 1 < s.size()) {
          current.push_back(s[i + 1]);
          i += 2;
        } else if (s[i] == '$') {
          current += expand(s, i, vars, line);
        } else {
          current.push_back(s[i++]);
        }
      }
    } else if (c == '$') {
      current += expand(s, i, vars, line);
      in_word = true;
    } else if (c == '\\' && i + 1 < s.size()) {
      current.push_back(s[i + 1]);
      in_word = true;
      i += 2;
    } else {
      current.push_back(c);
      in_word = true;
      ++i;
    }
  }
  if (in_word) words.push_back(std::move(current));
  return words;
}

}  // namespace

std::vector<Command> parse(std::string_view text, const std::map<std::string, std::string>& variables) {
  std::vector<Command> out;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto words = split_line(line, variables, line_no);
    if (!words.empty()) {
      if (words.front() != "store") fail(line_no, "expected a `store` command");
      words.erase(words.begin());
      out.push_back({line_no, std::move(words)});
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace store::script

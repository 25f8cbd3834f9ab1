#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace store::text {

std::string to_lower(std::string_view s);

// ASCII-lowercased, ASCII punctuation deleted, split on whitespace, deduplicated.
std::set<std::string> tokenize(std::string_view s);

// Splits on `sep`, trims surrounding blanks, drops empty pieces.
std::vector<std::string> split(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string trim(std::string_view s);

// One RFC-4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view s);

}  // namespace store::text

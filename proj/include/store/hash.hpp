#pragma once

#include <string>
#include <string_view>

namespace store {

inline constexpr std::string_view kHashAlgorithm = "sha256";

// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

}  // namespace store

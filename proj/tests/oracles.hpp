#pragma once

// Reference implementations written without reusing library code, used to
// check the library against brute force.

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "store/catalog.hpp"
#include "store/model.hpp"

namespace oracle {

// Lowercase ASCII, drop ASCII punctuation, split on whitespace.
inline std::set<std::string> words(const std::string& text) {
  std::set<std::string> out;
  std::string word;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 128 && (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f')) {
      if (!word.empty()) out.insert(word);
      word.clear();
    } else if (u < 128 && ((c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
                           (c >= '{' && c <= '~'))) {
      continue;
    } else {
      word.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    }
  }
  if (!word.empty()) out.insert(word);
  return out;
}

inline int score(const store::Threat& t, const store::catalog::CatalogEntry& e, int w_stride, int w_keyword) {
  int tags = 0;
  for (auto s : e.stride_tags) tags += t.stride.count(s) ? 1 : 0;
  const auto ws = words(t.title + " " + t.description);
  int kws = 0;
  std::set<std::string> seen;
  for (const auto& k : e.keywords)
    if (seen.insert(k).second && ws.count(k)) ++kws;
  return w_stride * tags + w_keyword * kws;
}

struct Ranked {
  std::string entry_id;
  int score;
};

// Score every entry, drop zeros, sort by (score desc, id asc), truncate.
inline std::vector<Ranked> rank(const store::Threat& t, const store::catalog::Catalog& c, int limit) {
  std::vector<Ranked> all;
  for (const auto& e : c.entries) {
    const int s = score(t, e, c.weights.stride, c.weights.keyword);
    if (s > 0) all.push_back({e.id, s});
  }
  // Selection sort keeps the oracle obviously correct.
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const bool better = all[j].score > all[i].score || (all[j].score == all[i].score && all[j].entry_id < all[i].entry_id);
      if (better) std::swap(all[i], all[j]);
    }
  if (static_cast<int>(all.size()) > limit) all.resize(static_cast<std::size_t>(limit));
  return all;
}

// Mean of the DREAD components in tenths, via exact rational arithmetic:
// sum/5 rounds nowhere because 10*sum/5 = 2*sum is always an integer.
inline int dread_tenths(const std::array<int, 5>& v) {
  long numerator = 0;
  for (int x : v) numerator += x;
  numerator *= 10;
  return static_cast<int>(numerator / 5);
}

inline store::RiskBand band(int tenths) {
  if (tenths >= 70) return store::RiskBand::High;
  if (tenths >= 40) return store::RiskBand::Medium;
  return store::RiskBand::Low;
}

}  // namespace oracle

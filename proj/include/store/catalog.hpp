#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "store/model.hpp"

namespace store::catalog {

struct MatchWeights {
  int stride = 3;
  int keyword = 1;

  bool operator==(const MatchWeights&) const = default;
};

struct CatalogEntry {
  std::string id;
  std::string title;
  std::vector<std::string> keywords;
  StrideSet stride_tags;
  std::string requirement_text;
  std::vector<std::string> references;

  bool operator==(const CatalogEntry&) const = default;
};

struct Catalog {
  std::string catalog_id;
  int version = 1;
  MatchWeights weights;
  std::vector<CatalogEntry> entries;

  const CatalogEntry* find(std::string_view id) const;
  bool operator==(const Catalog&) const = default;
};

struct Suggestion {
  std::string threat_id;
  std::string entry_id;
  int score = 0;
  int rank = 1;

  bool operator==(const Suggestion&) const = default;
};

// JSON catalog text; `//` line comments are allowed.
Catalog parse_catalog(std::string_view text);
Catalog load_catalog(const std::filesystem::path& path);

int match_score(const Threat& threat, const CatalogEntry& entry, const MatchWeights& weights = {});

// Entries scoring above zero, best first (score desc, entry id asc), at most
// `limit` of them.
std::vector<Suggestion> suggest(const Threat& threat, const Catalog& catalog, int limit);

struct ElicitationResult {
  Project project;
  std::vector<std::string> created;       // new requirement ids, in creation order
  std::vector<std::string> manual_entry;  // threats no entry matched
};

// Walks threats in risk order and attaches the rank-1 suggestion to every
// non-excluded threat that has no requirement yet. Requires step 7 Complete.
ElicitationResult elicit_all(Project project, const Catalog& catalog);

}  // namespace store::catalog

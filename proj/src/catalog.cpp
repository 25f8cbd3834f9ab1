#include "store/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "store/error.hpp"
#include "store/risk.hpp"
#include "store/text.hpp"
#include "store/workflow.hpp"

namespace store::catalog {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SyntaxError, path + ": " + what, {{"path", path}});
}

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& path) {
  const auto& v = member(obj, key, path);
  if (!v.is_string()) schema_error(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> string_array(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) schema_error(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

[[noreturn]] void empty_field(const std::string& entry_id, const std::string& field) {
  throw Error(ErrorCode::EmptyField, "entry '" + entry_id + "' has empty " + field,
              {{"entry", entry_id}, {"field", field}});
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  const auto end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

CatalogEntry parse_entry(const json& e, const std::string& path) {
  if (!e.is_object()) schema_error(path, "expected an object");
  CatalogEntry entry;
  entry.id = text::trim(string_field(e, "id", path));
  if (entry.id.empty()) empty_field(path, "id");
  entry.title = string_field(e, "title", path);
  if (text::trim(entry.title).empty()) empty_field(entry.id, "title");

  for (const auto& raw : string_array(member(e, "keywords", path), path + ".keywords")) {
    const auto tokens = text::tokenize(raw);
    if (tokens.size() > 1) schema_error(path + ".keywords", "keyword '" + raw + "' is not a single token");
    if (tokens.empty()) continue;
    const auto& kw = *tokens.begin();
    if (std::find(entry.keywords.begin(), entry.keywords.end(), kw) == entry.keywords.end())
      entry.keywords.push_back(kw);
  }
  if (entry.keywords.empty()) empty_field(entry.id, "keywords");

  for (const auto& tag : string_array(member(e, "stride_tags", path), path + ".stride_tags")) {
    auto s = tag.size() == 1 ? parse_stride(tag) : std::nullopt;
    if (!s) schema_error(path + ".stride_tags", "unknown STRIDE tag '" + tag + "' (use S,T,R,I,D,E)");
    entry.stride_tags.insert(*s);
  }
  if (entry.stride_tags.empty()) empty_field(entry.id, "stride_tags");

  entry.requirement_text = string_field(e, "requirement_text", path);
  if (text::trim(entry.requirement_text).empty()) empty_field(entry.id, "requirement_text");

  if (auto it = e.find("references"); it != e.end())
    entry.references = string_array(*it, path + ".references");
  return entry;
}

}  // namespace

const CatalogEntry* Catalog::find(std::string_view id) const {
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const CatalogEntry& e) { return e.id == id; });
  return it == entries.end() ? nullptr : &*it;
}

Catalog parse_catalog(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw Error(ErrorCode::SyntaxError,
                "catalog syntax error at line " + std::to_string(line) + ", column " +
                    std::to_string(column),
                {{"line", line}, {"column", column}});
  }
  if (!doc.is_object()) schema_error("$", "expected a JSON object");

  Catalog catalog;
  catalog.catalog_id = string_field(doc, "catalog_id", "$");
  const auto& version = member(doc, "version", "$");
  if (!version.is_number_integer()) schema_error("$.version", "expected an integer");
  catalog.version = version.get<int>();

  if (auto it = doc.find("weights"); it != doc.end()) {
    if (!it->is_object()) schema_error("$.weights", "expected an object");
    for (auto [key, target] : {std::pair{"stride", &catalog.weights.stride},
                               std::pair{"keyword", &catalog.weights.keyword}}) {
      if (auto w = it->find(key); w != it->end()) {
        if (!w->is_number_integer() || w->get<int>() < 0)
          schema_error(std::string("$.weights.") + key, "expected a non-negative integer");
        *target = w->get<int>();
      }
    }
  }

  const auto& entries = member(doc, "entries", "$");
  if (!entries.is_array()) schema_error("$.entries", "expected an array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto entry = parse_entry(entries[i], "$.entries[" + std::to_string(i) + "]");
    if (catalog.find(entry.id)) {
      throw Error(ErrorCode::DuplicateEntryId, "duplicate catalog entry id '" + entry.id + "'",
                  {{"entry", entry.id}});
    }
    catalog.entries.push_back(std::move(entry));
  }
  return catalog;
}

Catalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read catalog " + path.string(), {{"path", path.string()}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

int match_score(const Threat& threat, const CatalogEntry& entry, const MatchWeights& weights) {
  int shared_tags = 0;
  for (Stride s : threat.stride) shared_tags += static_cast<int>(entry.stride_tags.count(s));
  const auto tokens = text::tokenize(threat.title + " " + threat.description);
  int shared_keywords = 0;
  for (const auto& kw : entry.keywords) shared_keywords += static_cast<int>(tokens.count(kw));
  return weights.stride * shared_tags + weights.keyword * shared_keywords;
}

std::vector<Suggestion> suggest(const Threat& threat, const Catalog& catalog, int limit) {
  if (limit < 1) throw Error(ErrorCode::OutOfRange, "suggestion limit must be at least 1", {{"limit", limit}});
  std::vector<Suggestion> out;
  for (const auto& entry : catalog.entries) {
    const int score = match_score(threat, entry, catalog.weights);
    if (score > 0) out.push_back({threat.id, entry.id, score, 0});
  }
  std::sort(out.begin(), out.end(), [](const Suggestion& a, const Suggestion& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.entry_id < b.entry_id;
  });
  if (out.size() > static_cast<std::size_t>(limit)) out.resize(static_cast<std::size_t>(limit));
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i) + 1;
  return out;
}

ElicitationResult elicit_all(Project project, const Catalog& catalog) {
  if (workflow::status_of(project, 7) != StepStatus::Complete) {
    throw Error(ErrorCode::StepNotReady, "elicitation needs step 7 complete",
                {{"incomplete_steps", {7}}});
  }
  long next = 0;
  for (const auto& r : project.requirements) next = std::max(next, id_number(r.id).value_or(0));

  ElicitationResult result;
  for (const auto& ranked : risk::prioritize(project)) {
    const auto* threat = project.find_threat(ranked.threat_id);
    if (project.find_assessment(threat->id)->excluded) continue;
    const bool covered = std::any_of(project.requirements.begin(), project.requirements.end(),
                                     [&](const SecurityRequirement& r) {
                                       return std::find(r.threat_refs.begin(), r.threat_refs.end(),
                                                        threat->id) != r.threat_refs.end();
                                     });
    if (covered) continue;
    const auto best = suggest(*threat, catalog, 1);
    if (best.empty()) {
      result.manual_entry.push_back(threat->id);
      continue;
    }
    SecurityRequirement req;
    req.id = "SR" + std::to_string(++next);
    req.text = catalog.find(best.front().entry_id)->requirement_text;
    req.threat_refs = {threat->id};
    req.catalog_entry_id = best.front().entry_id;
    result.created.push_back(req.id);
    // `threat` points into project.threats, which push_back on requirements leaves alone.
    project.requirements.push_back(std::move(req));
  }
  result.project = std::move(project);
  return result;
}

}  // namespace store::catalog

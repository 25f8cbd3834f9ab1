#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "store/model.hpp"

namespace store::docgen {

struct Section {
  std::string heading;
  std::string body;
};

struct SrsDocument {
  std::string title;
  std::string generated_at;
  std::vector<Section> sections;
  std::string checksum;

  // Everything except the generated-at line. The checksum covers these bytes.
  std::string body() const;
  // Full Markdown text including the generated-at line.
  std::string render() const;
};

// Builds the document without touching workflow state. Requires every threat
// to be assessed.
SrsDocument build_srs(const Project& project, std::string generated_at = {});

struct SrsOutput {
  Project project;
  SrsDocument document;
};

// Step 10 output. Requires steps 1..9 Complete and records the SrsRecord.
SrsOutput generate_srs(Project project, std::string generated_at, std::string document_path);

// Requirement ids in document order: Accepted only, ordered by the rank of
// their highest-risk threat, then by id number.
std::vector<std::string> ordered_accepted_requirements(const Project& project);

enum class ExportKind { Goals, Stakeholders, Assets, Points, Threats, Risk, Requirements };

std::optional<ExportKind> parse_export_kind(std::string_view s);

// CSV (RFC 4180, LF line endings) with a header row.
std::string export_table(const Project& project, ExportKind kind);

// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

}  // namespace store::docgen

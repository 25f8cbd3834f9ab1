#pragma once

#include <vector>

#include "json.hpp"
#include "store/analysis.hpp"
#include "store/catalog.hpp"
#include "store/docgen.hpp"
#include "store/error.hpp"
#include "store/model.hpp"
#include "store/workflow.hpp"

// JSON shapes shared by `--format json` and the HTTP API.
namespace store::views {

nlohmann::json workflow(const Project& project);
nlohmann::json exit_checks(const std::vector<workflow::ExitCheck>& checks);
nlohmann::json ranking(const Project& project);
nlohmann::json coverage(const analysis::CoverageReport& report);
nlohmann::json surface(const analysis::SurfaceSummary& summary);
nlohmann::json cia(const analysis::CiaSummary& summary);
nlohmann::json stride(const StrideSet& tags);
nlohmann::json suggestions(const std::vector<catalog::Suggestion>& suggestions,
                           const catalog::Catalog& catalog);
nlohmann::json elicitation(const catalog::ElicitationResult& result);
nlohmann::json srs(const docgen::SrsDocument& document);
nlohmann::json error(const Error& error);

}  // namespace store::views

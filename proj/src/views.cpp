#include "store/views.hpp"

#include "store/persistence.hpp"
#include "store/risk.hpp"

namespace store::views {

using nlohmann::json;

json workflow(const Project& project) {
  auto steps = json::array();
  for (int step = 1; step <= kStepCount; ++step) {
    const auto& info = workflow::step_info(step);
    steps.push_back({{"step", step},
                     {"name", info.name},
                     {"status", std::string(to_string(workflow::status_of(project, step)))},
                     {"taking_in", info.taking_in},
                     {"approach", info.approach},
                     {"participants", info.participants},
                     {"taking_out", info.taking_out}});
  }
  return {{"current_step", workflow::current_step(project)}, {"steps", steps}};
}

json exit_checks(const std::vector<workflow::ExitCheck>& checks) {
  auto arr = json::array();
  for (const auto& c : checks)
    arr.push_back({{"step", c.step}, {"rule_id", c.rule_id}, {"description", c.description},
                   {"satisfied", c.satisfied}, {"details", c.details}});
  return arr;
}

json ranking(const Project& project) {
  auto arr = json::array();
  int rank = 0;
  for (const auto& r : risk::prioritize(project)) {
    const auto* threat = project.find_threat(r.threat_id);
    const auto* assessment = project.find_assessment(r.threat_id);
    arr.push_back({{"rank", ++rank},
                   {"threat_id", r.threat_id},
                   {"title", threat->title},
                   {"score_tenths", r.score_tenths},
                   {"score", risk::format_tenths(r.score_tenths)},
                   {"band", std::string(to_string(assessment->band))},
                   {"method", std::string(to_string(assessment->method()))},
                   {"excluded", assessment->excluded},
                   {"mitigated", threat->mitigated}});
  }
  return arr;
}

json coverage(const analysis::CoverageReport& report) {
  return {{"assets_without_threats", report.assets_without_threats},
          {"threats_without_points", report.threats_without_points},
          {"threats_without_requirements", report.threats_without_requirements},
          {"unvalidated_requirements", report.unvalidated_requirements},
          {"orphan_points", report.orphan_points},
          {"fully_traced", report.fully_traced()}};
}

json surface(const analysis::SurfaceSummary& summary) {
  json out = json::object();
  for (PointKind kind : kAllPointKinds)
    out[std::string(to_string(kind))] = {{"count", summary.count(kind)}, {"ids", summary.ids(kind)}};
  return out;
}

json cia(const analysis::CiaSummary& summary) {
  json facets = json::object();
  for (const auto& [facet, n] : summary.per_facet) facets[std::string(cia_name(facet))] = n;
  json priorities = json::object();
  for (const auto& [priority, n] : summary.per_priority) priorities[std::string(to_string(priority))] = n;
  return {{"per_facet", facets}, {"per_priority", priorities}};
}

json stride(const StrideSet& tags) {
  auto arr = json::array();
  for (Stride s : tags)
    arr.push_back({{"letter", std::string(1, stride_letter(s))}, {"category", stride_name(s)}});
  return arr;
}

json suggestions(const std::vector<catalog::Suggestion>& suggestions, const catalog::Catalog& catalog) {
  auto arr = json::array();
  for (const auto& s : suggestions) {
    const auto* entry = catalog.find(s.entry_id);
    arr.push_back({{"threat_id", s.threat_id},
                   {"entry_id", s.entry_id},
                   {"score", s.score},
                   {"rank", s.rank},
                   {"title", entry ? entry->title : ""},
                   {"requirement_text", entry ? entry->requirement_text : ""}});
  }
  return arr;
}

json elicitation(const catalog::ElicitationResult& result) {
  auto created = json::array();
  for (const auto& id : result.created)
    created.push_back(persistence::encode(*result.project.find_requirement(id)));
  return {{"created", created}, {"manual_entry", result.manual_entry}};
}

json srs(const docgen::SrsDocument& document) {
  return {{"title", document.title},
          {"generated_at", document.generated_at},
          {"checksum", document.checksum},
          {"markdown", document.render()}};
}

json error(const Error& e) {
  return {{"code", std::string(e.name())}, {"message", e.what()}, {"details", e.details()}};
}

}  // namespace store::views

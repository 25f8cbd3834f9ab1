#include "store/analysis.hpp"

#include <algorithm>
#include <utility>

#include "store/text.hpp"

namespace store::analysis {

namespace {

struct StrideRule {
  Stride category;
  std::vector<std::string_view> stems;
};

// A rule fires when any token of the text starts with one of its stems.
const std::vector<StrideRule>& stride_rules() {
  static const std::vector<StrideRule> rules = {
      {Stride::Spoofing, {"credential", "password", "impersonat", "spoof"}},
      {Stride::Tampering, {"inject", "modif", "tamper"}},
      {Stride::Repudiation, {"deny", "claim", "audit", "log"}},
      {Stride::InformationDisclosure, {"disclos", "leak", "reveal"}},
      {Stride::DenialOfService, {"crash", "flood", "prevent", "block"}},
      {Stride::ElevationOfPrivilege, {"privilege", "admin", "unauthorized"}},
  };
  return rules;
}

template <typename Pred>
bool any_threat(const Project& p, Pred pred) {
  return std::any_of(p.threats.begin(), p.threats.end(), pred);
}

bool contains(const std::vector<std::string>& v, const std::string& id) {
  return std::find(v.begin(), v.end(), id) != v.end();
}

}  // namespace

SurfaceSummary surface_summary(const Project& project) {
  SurfaceSummary summary;
  for (const auto& pt : project.attack_points)
    summary.points[static_cast<std::size_t>(pt.kind)].push_back(pt.id);
  return summary;
}

StrideSet stride_suggest(std::string_view title, std::string_view description) {
  const auto tokens = text::tokenize(std::string(title) + " " + std::string(description));
  StrideSet out;
  for (const auto& rule : stride_rules()) {
    for (const auto& token : tokens) {
      const bool hit = std::any_of(rule.stems.begin(), rule.stems.end(), [&](std::string_view stem) {
        return token.compare(0, stem.size(), stem) == 0;
      });
      if (hit) {
        out.insert(rule.category);
        break;
      }
    }
  }
  return out;
}

bool CoverageReport::fully_traced() const {
  return assets_without_threats.empty() && threats_without_points.empty() &&
         threats_without_requirements.empty() && unvalidated_requirements.empty() &&
         orphan_points.empty();
}

CoverageReport coverage_report(const Project& project) {
  CoverageReport report;
  for (const auto& a : project.assets)
    if (!any_threat(project, [&](const Threat& t) { return contains(t.asset_refs, a.id); }))
      report.assets_without_threats.push_back(a.id);

  for (const auto& t : project.threats) {
    if (t.point_refs.empty()) report.threats_without_points.push_back(t.id);
    const auto* r = project.find_assessment(t.id);
    if (r && r->excluded) continue;
    const bool covered = std::any_of(project.requirements.begin(), project.requirements.end(),
                                     [&](const SecurityRequirement& sr) { return contains(sr.threat_refs, t.id); });
    if (!covered) report.threats_without_requirements.push_back(t.id);
  }

  for (const auto& r : project.requirements)
    if (requirement_outcome(project, r.id) == RequirementOutcome::Unvalidated)
      report.unvalidated_requirements.push_back(r.id);

  for (const auto& pt : project.attack_points)
    if (!any_threat(project, [&](const Threat& t) { return contains(t.point_refs, pt.id); }))
      report.orphan_points.push_back(pt.id);
  return report;
}

CiaSummary cia_summary(const Project& project) {
  CiaSummary summary;
  for (CiaFacet f : kAllCia) summary.per_facet[f] = 0;
  for (AssetPriority p : {AssetPriority::High, AssetPriority::Medium, AssetPriority::Low})
    summary.per_priority[p] = 0;
  for (const auto& a : project.assets) {
    for (CiaFacet f : a.cia) ++summary.per_facet[f];
    ++summary.per_priority[a.priority];
  }
  return summary;
}

}  // namespace store::analysis

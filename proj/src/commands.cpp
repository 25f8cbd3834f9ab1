#include "store/commands.hpp"

#include <algorithm>

#include "store/error.hpp"
#include "store/risk.hpp"
#include "store/workflow.hpp"

namespace store::commands {

namespace {

Threat& threat_or_throw(Project& project, std::string_view id) {
  auto it = std::find_if(project.threats.begin(), project.threats.end(),
                         [&](const Threat& t) { return t.id == id; });
  if (it == project.threats.end())
    throw Error(ErrorCode::NotFound, "no threat " + std::string(id), {{"id", id}});
  return *it;
}

void append_unique(std::vector<std::string>& into, const std::vector<std::string>& ids) {
  for (const auto& id : ids)
    if (std::find(into.begin(), into.end(), id) == into.end()) into.push_back(id);
}

}  // namespace

Project add(Project project, Entity entity) {
  const auto kind = kind_of(entity);
  project = add_entity(std::move(project), std::move(entity));
  return workflow::touch(std::move(project), kind);
}

Project remove(Project project, std::string_view id) {
  std::optional<EntityKind> kind;
  if (project.find_stakeholder(id)) kind = EntityKind::Stakeholder;
  else kind = kind_from_id(id);
  project = remove_entity(std::move(project), id);
  return workflow::touch(std::move(project), kind.value_or(EntityKind::Goal));
}

Project record_agreement(Project project, Agreement agreement) {
  auto it = std::find_if(project.agreements.begin(), project.agreements.end(), [&](const Agreement& a) {
    return a.goal_id == agreement.goal_id && a.stakeholder_id == agreement.stakeholder_id;
  });
  if (it == project.agreements.end()) return add(std::move(project), std::move(agreement));
  if (*it == agreement) return project;
  *it = std::move(agreement);
  return workflow::touch(std::move(project), EntityKind::Agreement);
}

Project tag_threat(Project project, std::string_view threat_id, StrideSet stride) {
  auto& threat = threat_or_throw(project, threat_id);
  if (stride.empty()) {
    throw Error(ErrorCode::InvariantViolation, std::string(threat_id) + " needs at least one STRIDE tag",
                {{"violations", {{{"entity", threat_id}, {"rule", "stride nonempty"}}}}});
  }
  if (threat.stride == stride) return project;
  threat.stride = std::move(stride);
  return workflow::touch(std::move(project), EntityKind::Threat);
}

Project link_threat(Project project, std::string_view threat_id, const std::vector<std::string>& assets,
                    const std::vector<std::string>& points) {
  std::vector<std::string> missing;
  for (const auto& a : assets)
    if (!project.find_asset(a)) missing.push_back(a);
  for (const auto& p : points)
    if (!project.find_point(p)) missing.push_back(p);
  auto& threat = threat_or_throw(project, threat_id);
  if (!missing.empty()) {
    throw Error(ErrorCode::DanglingReference, std::string(threat_id) + " references unknown ids",
                {{"entity", threat_id}, {"missing", missing}});
  }
  const auto before = threat;
  append_unique(threat.asset_refs, assets);
  append_unique(threat.point_refs, points);
  if (threat == before) return project;
  return workflow::touch(std::move(project), EntityKind::Threat);
}

Project set_mitigated(Project project, std::string_view threat_id, bool mitigated) {
  auto& threat = threat_or_throw(project, threat_id);
  if (threat.mitigated == mitigated) return project;
  threat.mitigated = mitigated;
  return workflow::touch(std::move(project), EntityKind::Threat);
}

Project declare_no_points(Project project, PointKind kind) {
  if (kind != PointKind::PoC && kind != PointKind::PoD) {
    throw Error(ErrorCode::InvariantViolation, "only PoC and PoD may be declared empty",
                {{"kind", to_string(kind)}});
  }
  const bool has_points = std::any_of(project.attack_points.begin(), project.attack_points.end(),
                                      [&](const AttackPoint& p) { return p.kind == kind; });
  if (has_points) {
    throw Error(ErrorCode::InvariantViolation,
                std::string(to_string(kind)) + " already has entries and cannot be declared empty",
                {{"kind", to_string(kind)}});
  }
  if (!project.none_declared.insert(kind).second) return project;
  return workflow::touch(std::move(project), EntityKind::AttackPoint);
}

Project set_risk(Project project, RiskAssessment assessment) {
  const auto* existing = project.find_assessment(assessment.threat_id);
  if (existing && existing->inputs == assessment.inputs) return project;
  project = risk::set_assessment(std::move(project), std::move(assessment));
  return workflow::touch(std::move(project), EntityKind::RiskAssessment);
}

Project exclude(Project project, std::string_view threat_id, bool excluded, std::string rationale) {
  const auto* existing = project.find_assessment(threat_id);
  if (existing && existing->excluded == excluded &&
      (rationale.empty() || existing->exclusion_rationale == rationale))
    return project;
  project = risk::set_excluded(std::move(project), threat_id, excluded, std::move(rationale));
  return workflow::touch(std::move(project), EntityKind::RiskAssessment);
}

catalog::ElicitationResult elicit(Project project, const catalog::Catalog& catalog) {
  auto result = catalog::elicit_all(std::move(project), catalog);
  if (!result.created.empty())
    result.project = workflow::touch(std::move(result.project), EntityKind::SecurityRequirement);
  return result;
}

Project record_validation(Project project, ValidationRecord record) {
  auto it = std::find_if(project.validations.begin(), project.validations.end(),
                         [&](const ValidationRecord& v) {
                           return v.requirement_id == record.requirement_id && v.reviewer == record.reviewer;
                         });
  if (it == project.validations.end()) return add(std::move(project), std::move(record));
  if (*it == record) return project;
  *it = std::move(record);
  return workflow::touch(std::move(project), EntityKind::ValidationRecord);
}

docgen::SrsOutput generate_srs(Project project, std::string generated_at, std::string document_path) {
  const auto previous = project.srs_record;
  auto out = docgen::generate_srs(std::move(project), std::move(generated_at), std::move(document_path));
  // Regenerating an unchanged document keeps step 10 where it is.
  if (previous && previous->checksum != out.project.srs_record->checksum)
    out.project = workflow::touch(std::move(out.project), EntityKind::SrsRecord);
  return out;
}

}  // namespace store::commands

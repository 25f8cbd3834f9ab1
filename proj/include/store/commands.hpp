#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "store/catalog.hpp"
#include "store/docgen.hpp"
#include "store/model.hpp"

// Workflow-aware mutations. Both frontends go through these so that a change
// to an artifact whose step is already Complete reopens that step the same
// way no matter where it came from.
namespace store::commands {

Project add(Project project, Entity entity);
Project remove(Project project, std::string_view id);

// Upsert keyed by (goal, stakeholder).
Project record_agreement(Project project, Agreement agreement);

// Replaces the threat's STRIDE set.
Project tag_threat(Project project, std::string_view threat_id, StrideSet stride);

// Appends asset and point references that are not already present.
Project link_threat(Project project, std::string_view threat_id,
                    const std::vector<std::string>& assets, const std::vector<std::string>& points);

Project set_mitigated(Project project, std::string_view threat_id, bool mitigated);

// Records that `kind` has no entries in this system (PoC and PoD only).
Project declare_no_points(Project project, PointKind kind);

Project set_risk(Project project, RiskAssessment assessment);
Project exclude(Project project, std::string_view threat_id, bool excluded, std::string rationale);

catalog::ElicitationResult elicit(Project project, const catalog::Catalog& catalog);

// Upsert keyed by (requirement, reviewer).
Project record_validation(Project project, ValidationRecord record);

docgen::SrsOutput generate_srs(Project project, std::string generated_at, std::string document_path);

}  // namespace store::commands

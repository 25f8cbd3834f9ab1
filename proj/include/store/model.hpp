#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace store {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kStepCount = 10;

enum class GoalSource { Interview, Brainstorming, Review, Other };
enum class StakeholderGroup { Managerial, Marketing, InformationSystem, Other };
enum class StakeholderPriority { Critical, Major, Minor };
enum class AgreementVerdict { Agreed, Objected };
enum class CiaFacet { Confidentiality, Integrity, Availability };
enum class AssetPriority { Low, Medium, High };
enum class PointKind { PoA, PoB, PoC, PoD };
enum class Stride {
  Spoofing,
  Tampering,
  Repudiation,
  InformationDisclosure,
  DenialOfService,
  ElevationOfPrivilege,
};
enum class ValidationVerdict { Accepted, Rejected, NeedsRework };
enum class StepStatus { Locked, InProgress, Complete, Stale };
enum class RiskMethod { SimpleRisk, Dread };
enum class RiskBand { High, Medium, Low };

inline constexpr std::array kAllStride = {
    Stride::Spoofing,        Stride::Tampering,       Stride::Repudiation,
    Stride::InformationDisclosure, Stride::DenialOfService, Stride::ElevationOfPrivilege,
};
inline constexpr std::array kAllPointKinds = {PointKind::PoA, PointKind::PoB, PointKind::PoC,
                                              PointKind::PoD};
inline constexpr std::array kAllCia = {CiaFacet::Confidentiality, CiaFacet::Integrity,
                                       CiaFacet::Availability};

using StrideSet = std::set<Stride>;
using CiaSet = std::set<CiaFacet>;

struct Goal {
  std::string id;
  std::string description;
  GoalSource source = GoalSource::Interview;

  bool operator==(const Goal&) const = default;
};

struct Stakeholder {
  std::string id;
  std::string name;
  StakeholderGroup group = StakeholderGroup::Other;
  StakeholderPriority priority = StakeholderPriority::Minor;

  bool operator==(const Stakeholder&) const = default;
};

struct Agreement {
  std::string goal_id;
  std::string stakeholder_id;
  AgreementVerdict verdict = AgreementVerdict::Agreed;
  std::optional<std::string> note;

  bool operator==(const Agreement&) const = default;
};

struct Asset {
  std::string id;
  std::string name;
  std::string description;
  CiaSet cia;
  AssetPriority priority = AssetPriority::Medium;
  std::vector<std::string> identified_by;

  bool operator==(const Asset&) const = default;
};

struct AttackPoint {
  std::string id;
  PointKind kind = PointKind::PoA;
  std::string name;
  std::string description;

  bool operator==(const AttackPoint&) const = default;
};

struct Threat {
  std::string id;
  std::string title;
  std::string description;
  StrideSet stride;
  std::vector<std::string> asset_refs;
  std::vector<std::string> point_refs;
  bool mitigated = false;

  bool operator==(const Threat&) const = default;
};

struct SimpleRiskInputs {
  int probability = 1;
  int damage_potential = 1;

  bool operator==(const SimpleRiskInputs&) const = default;
};

// Component order is fixed: Damage, Reproducibility, Exploitability,
// Affected users, Discoverability.
struct DreadComponents {
  int damage = 0;
  int reproducibility = 0;
  int exploitability = 0;
  int affected_users = 0;
  int discoverability = 0;

  std::array<int, 5> as_array() const {
    return {damage, reproducibility, exploitability, affected_users, discoverability};
  }
  static DreadComponents from_array(const std::array<int, 5>& v) {
    return {v[0], v[1], v[2], v[3], v[4]};
  }
  bool operator==(const DreadComponents&) const = default;
};

struct RiskAssessment {
  std::string threat_id;
  std::variant<SimpleRiskInputs, DreadComponents> inputs;
  int score_tenths = 0;
  RiskBand band = RiskBand::Low;
  bool excluded = false;
  std::optional<std::string> exclusion_rationale;

  RiskMethod method() const {
    return std::holds_alternative<DreadComponents>(inputs) ? RiskMethod::Dread
                                                           : RiskMethod::SimpleRisk;
  }
  bool operator==(const RiskAssessment&) const = default;
};

struct SecurityRequirement {
  std::string id;
  std::string text;
  std::vector<std::string> threat_refs;
  // Set when the text came from a catalog entry; empty means manual entry.
  std::optional<std::string> catalog_entry_id;

  bool operator==(const SecurityRequirement&) const = default;
};

struct ValidationRecord {
  std::string requirement_id;
  std::string reviewer;
  ValidationVerdict verdict = ValidationVerdict::Accepted;
  std::optional<std::string> rationale;

  bool operator==(const ValidationRecord&) const = default;
};

struct SrsRecord {
  std::string generated_at;
  std::string checksum;
  std::string document_path;

  bool operator==(const SrsRecord&) const = default;
};

struct StepState {
  int step = 1;
  StepStatus status = StepStatus::Locked;

  bool operator==(const StepState&) const = default;
};

struct Project {
  std::string project_id;
  std::string name;
  int schema_version = kSchemaVersion;
  RiskMethod default_method = RiskMethod::Dread;
  std::vector<Goal> goals;
  std::vector<Stakeholder> stakeholders;
  std::vector<Agreement> agreements;
  std::vector<Asset> assets;
  std::vector<AttackPoint> attack_points;
  // Point kinds the engineer explicitly declared as having no entries.
  std::set<PointKind> none_declared;
  std::vector<Threat> threats;
  std::vector<RiskAssessment> assessments;
  std::vector<SecurityRequirement> requirements;
  std::vector<ValidationRecord> validations;
  std::optional<SrsRecord> srs_record;
  std::vector<StepState> step_states;

  bool operator==(const Project&) const = default;

  const Goal* find_goal(std::string_view id) const;
  const Stakeholder* find_stakeholder(std::string_view id) const;
  const Asset* find_asset(std::string_view id) const;
  const AttackPoint* find_point(std::string_view id) const;
  const Threat* find_threat(std::string_view id) const;
  const SecurityRequirement* find_requirement(std::string_view id) const;
  const RiskAssessment* find_assessment(std::string_view threat_id) const;
  const Agreement* find_agreement(std::string_view goal_id, std::string_view stakeholder_id) const;
};

enum class EntityKind {
  Goal,
  Stakeholder,
  Agreement,
  Asset,
  AttackPoint,
  Threat,
  RiskAssessment,
  SecurityRequirement,
  ValidationRecord,
  SrsRecord,
};

using Entity = std::variant<Goal, Stakeholder, Agreement, Asset, AttackPoint, Threat,
                            RiskAssessment, SecurityRequirement, ValidationRecord>;

EntityKind kind_of(const Entity& entity);

struct Violation {
  std::string entity;
  std::string rule;

  bool operator==(const Violation&) const = default;
};

// A fresh project: step 1 InProgress, steps 2..10 Locked.
Project new_project(std::string name, std::string project_id);

// Random 128-bit hex identifier for new projects.
std::string generate_project_id();

Project add_entity(Project project, Entity entity);
Project remove_entity(Project project, std::string_view id);

// Relation records carry no id of their own.
Project remove_agreement(Project project, std::string_view goal_id, std::string_view stakeholder_id);
Project remove_assessment(Project project, std::string_view threat_id);
Project remove_validation(Project project, std::string_view requirement_id,
                          std::string_view reviewer);

std::vector<Violation> validate_project(const Project& project);

// Kind whose id format `id` matches, if any. Stakeholder ids are opaque and
// never match.
std::optional<EntityKind> kind_from_id(std::string_view id);

// Numeric suffix of an id such as "T12" or "SR3"; nullopt when absent.
std::optional<long> id_number(std::string_view id);

std::string agreement_key(std::string_view goal_id, std::string_view stakeholder_id);
std::string assessment_key(std::string_view threat_id);
std::string validation_key(std::string_view requirement_id, std::string_view reviewer);

enum class RequirementOutcome { Unvalidated, Accepted, Rejected, NeedsRework };

// Rejected beats NeedsRework beats Accepted when reviewers disagree.
RequirementOutcome requirement_outcome(const Project& project, std::string_view requirement_id);

// Enum spellings shared by persistence, the CLI and the API.
std::string_view to_string(GoalSource v);
std::string_view to_string(StakeholderGroup v);
std::string_view to_string(StakeholderPriority v);
std::string_view to_string(AgreementVerdict v);
std::string_view to_string(AssetPriority v);
std::string_view to_string(PointKind v);
std::string_view to_string(ValidationVerdict v);
std::string_view to_string(StepStatus v);
std::string_view to_string(RiskMethod v);
std::string_view to_string(RiskBand v);
std::string_view to_string(RequirementOutcome v);
std::string_view to_string(EntityKind v);

char stride_letter(Stride s);
char cia_letter(CiaFacet c);
std::string_view stride_name(Stride s);
std::string_view cia_name(CiaFacet c);

// Parsers accept the to_string spelling case-insensitively, plus CLI
// spellings such as "poa", "needs-rework" or "information-system".
std::optional<GoalSource> parse_goal_source(std::string_view s);
std::optional<StakeholderGroup> parse_stakeholder_group(std::string_view s);
std::optional<StakeholderPriority> parse_stakeholder_priority(std::string_view s);
std::optional<AgreementVerdict> parse_agreement_verdict(std::string_view s);
std::optional<AssetPriority> parse_asset_priority(std::string_view s);
std::optional<PointKind> parse_point_kind(std::string_view s);
std::optional<ValidationVerdict> parse_validation_verdict(std::string_view s);
std::optional<StepStatus> parse_step_status(std::string_view s);
std::optional<RiskMethod> parse_risk_method(std::string_view s);
std::optional<RiskBand> parse_risk_band(std::string_view s);
std::optional<Stride> parse_stride(std::string_view s);
std::optional<CiaFacet> parse_cia(std::string_view s);

std::string_view point_prefix(PointKind kind);

}  // namespace store

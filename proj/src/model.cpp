#include "store/model.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <regex>

#include "store/error.hpp"
#include "store/risk.hpp"
#include "store/text.hpp"
#include "store/workflow.hpp"

namespace store {

namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& items, std::string_view id) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
  return it == items.end() ? nullptr : &*it;
}

const std::regex& goal_pattern() {
  static const std::regex re("G[1-9][0-9]*");
  return re;
}
const std::regex& asset_pattern() {
  static const std::regex re("A[1-9][0-9]*");
  return re;
}
const std::regex& point_pattern() {
  static const std::regex re("P[ABCD][1-9][0-9]*");
  return re;
}
const std::regex& threat_pattern() {
  static const std::regex re("T[1-9][0-9]*");
  return re;
}
const std::regex& requirement_pattern() {
  static const std::regex re("SR[1-9][0-9]*");
  return re;
}

bool matches(const std::regex& re, std::string_view s) {
  return std::regex_match(s.begin(), s.end(), re);
}

bool valid_stakeholder_id(std::string_view id) {
  if (id.empty()) return false;
  if (std::any_of(id.begin(), id.end(), [](unsigned char c) { return std::isspace(c) || c == ':'; }))
    return false;
  return !kind_from_id(id).has_value();
}

std::string normalize(std::string_view s) {
  std::string out;
  for (unsigned char c : s)
    if (c != '-' && c != '_' && c != ' ') out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

template <typename E, std::size_t N>
std::optional<E> parse_enum(std::string_view s, const std::array<E, N>& values) {
  const auto key = normalize(s);
  for (E v : values)
    if (normalize(to_string(v)) == key) return v;
  return std::nullopt;
}

// Rules that hold for an entity on its own, without looking at the project.
std::vector<Violation> intrinsic(const Goal& g) {
  std::vector<Violation> out;
  if (!matches(goal_pattern(), g.id)) out.push_back({g.id, "id matches G<n>"});
  if (text::trim(g.description).empty()) out.push_back({g.id, "description nonempty"});
  return out;
}

std::vector<Violation> intrinsic(const Stakeholder& s) {
  std::vector<Violation> out;
  if (!valid_stakeholder_id(s.id)) out.push_back({s.id, "stakeholder id well-formed"});
  return out;
}

std::vector<Violation> intrinsic(const Agreement&) { return {}; }

std::vector<Violation> intrinsic(const Asset& a) {
  std::vector<Violation> out;
  if (!matches(asset_pattern(), a.id)) out.push_back({a.id, "id matches A<n>"});
  if (a.cia.empty()) out.push_back({a.id, "cia nonempty"});
  return out;
}

std::vector<Violation> intrinsic(const AttackPoint& p) {
  std::vector<Violation> out;
  if (!matches(point_pattern(), p.id)) {
    out.push_back({p.id, "id matches PA<n>|PB<n>|PC<n>|PD<n>"});
  } else if (p.id.substr(0, 2) != point_prefix(p.kind)) {
    out.push_back({p.id, "id prefix consistent with kind"});
  }
  return out;
}

std::vector<Violation> intrinsic(const Threat& t) {
  std::vector<Violation> out;
  if (!matches(threat_pattern(), t.id)) out.push_back({t.id, "id matches T<n>"});
  if (t.stride.empty()) out.push_back({t.id, "stride nonempty"});
  if (t.asset_refs.empty()) out.push_back({t.id, "asset_refs nonempty"});
  return out;
}

std::vector<Violation> intrinsic(const RiskAssessment& r) {
  std::vector<Violation> out;
  const auto key = assessment_key(r.threat_id);
  int expected = -1;
  if (const auto* s = std::get_if<SimpleRiskInputs>(&r.inputs)) {
    if (s->probability < 1 || s->probability > 10 || s->damage_potential < 1 ||
        s->damage_potential > 10) {
      out.push_back({key, "simple risk inputs in 1..10"});
    } else {
      expected = risk::simple_risk(s->probability, s->damage_potential);
    }
  } else {
    const auto& d = std::get<DreadComponents>(r.inputs);
    const auto v = d.as_array();
    if (std::any_of(v.begin(), v.end(), [](int c) { return c < 0 || c > 10; })) {
      out.push_back({key, "dread components in 0..10"});
    } else {
      expected = risk::dread_score(d);
    }
  }
  if (expected >= 0 && r.score_tenths != expected) out.push_back({key, "score consistent with inputs"});
  if (r.score_tenths >= 0 && r.score_tenths <= 100 && r.band != risk::risk_band(r.score_tenths))
    out.push_back({key, "band consistent with score"});
  return out;
}

std::vector<Violation> intrinsic(const SecurityRequirement& r) {
  std::vector<Violation> out;
  if (!matches(requirement_pattern(), r.id)) out.push_back({r.id, "id matches SR<n>"});
  if (text::trim(r.text).empty()) out.push_back({r.id, "text nonempty"});
  if (r.threat_refs.empty()) out.push_back({r.id, "threat_refs nonempty"});
  return out;
}

std::vector<Violation> intrinsic(const ValidationRecord&) { return {}; }

// Missing cross-references, as the ids that do not resolve.
std::vector<std::string> dangling(const Project& p, const Goal&) { (void)p; return {}; }
std::vector<std::string> dangling(const Project& p, const Stakeholder&) { (void)p; return {}; }

std::vector<std::string> dangling(const Project& p, const Agreement& a) {
  std::vector<std::string> out;
  if (!p.find_goal(a.goal_id)) out.push_back(a.goal_id);
  if (!p.find_stakeholder(a.stakeholder_id)) out.push_back(a.stakeholder_id);
  return out;
}

std::vector<std::string> dangling(const Project& p, const Asset& a) {
  std::vector<std::string> out;
  for (const auto& s : a.identified_by)
    if (!p.find_stakeholder(s)) out.push_back(s);
  return out;
}

std::vector<std::string> dangling(const Project&, const AttackPoint&) { return {}; }

std::vector<std::string> dangling(const Project& p, const Threat& t) {
  std::vector<std::string> out;
  for (const auto& a : t.asset_refs)
    if (!p.find_asset(a)) out.push_back(a);
  for (const auto& pt : t.point_refs)
    if (!p.find_point(pt)) out.push_back(pt);
  return out;
}

std::vector<std::string> dangling(const Project& p, const RiskAssessment& r) {
  if (!p.find_threat(r.threat_id)) return {r.threat_id};
  return {};
}

std::vector<std::string> dangling(const Project& p, const SecurityRequirement& r) {
  std::vector<std::string> out;
  for (const auto& t : r.threat_refs)
    if (!p.find_threat(t)) out.push_back(t);
  return out;
}

std::vector<std::string> dangling(const Project& p, const ValidationRecord& v) {
  std::vector<std::string> out;
  if (!p.find_requirement(v.requirement_id)) out.push_back(v.requirement_id);
  if (!p.find_stakeholder(v.reviewer)) out.push_back(v.reviewer);
  return out;
}

// Identity of an entity for duplicate detection and error messages.
std::string key_of(const Goal& x) { return x.id; }
std::string key_of(const Stakeholder& x) { return x.id; }
std::string key_of(const Asset& x) { return x.id; }
std::string key_of(const AttackPoint& x) { return x.id; }
std::string key_of(const Threat& x) { return x.id; }
std::string key_of(const SecurityRequirement& x) { return x.id; }
std::string key_of(const Agreement& x) { return agreement_key(x.goal_id, x.stakeholder_id); }
std::string key_of(const RiskAssessment& x) { return assessment_key(x.threat_id); }
std::string key_of(const ValidationRecord& x) { return validation_key(x.requirement_id, x.reviewer); }

template <typename T>
std::vector<T>& collection(Project& p);
template <> std::vector<Goal>& collection(Project& p) { return p.goals; }
template <> std::vector<Stakeholder>& collection(Project& p) { return p.stakeholders; }
template <> std::vector<Agreement>& collection(Project& p) { return p.agreements; }
template <> std::vector<Asset>& collection(Project& p) { return p.assets; }
template <> std::vector<AttackPoint>& collection(Project& p) { return p.attack_points; }
template <> std::vector<Threat>& collection(Project& p) { return p.threats; }
template <> std::vector<RiskAssessment>& collection(Project& p) { return p.assessments; }
template <> std::vector<SecurityRequirement>& collection(Project& p) { return p.requirements; }
template <> std::vector<ValidationRecord>& collection(Project& p) { return p.validations; }

template <typename T>
bool id_taken(const Project& p, const T& entity) {
  const auto& items = collection<T>(const_cast<Project&>(p));
  const auto key = key_of(entity);
  return std::any_of(items.begin(), items.end(), [&](const T& x) { return key_of(x) == key; });
}

nlohmann::json violations_json(const std::vector<Violation>& vs) {
  auto arr = nlohmann::json::array();
  for (const auto& v : vs) arr.push_back({{"entity", v.entity}, {"rule", v.rule}});
  return arr;
}

template <typename T>
void check_collection(const Project& p, const std::vector<T>& items, std::vector<Violation>& out) {
  std::set<std::string> seen;
  for (const auto& item : items) {
    const auto key = key_of(item);
    if (!seen.insert(key).second) out.push_back({key, "id unique"});
    for (auto& v : intrinsic(item)) out.push_back(std::move(v));
    for (const auto& missing : dangling(p, item))
      out.push_back({key, "reference resolves: " + missing});
  }
}

}  // namespace

const Goal* Project::find_goal(std::string_view id) const { return find_by_id(goals, id); }
const Stakeholder* Project::find_stakeholder(std::string_view id) const {
  return find_by_id(stakeholders, id);
}
const Asset* Project::find_asset(std::string_view id) const { return find_by_id(assets, id); }
const AttackPoint* Project::find_point(std::string_view id) const {
  return find_by_id(attack_points, id);
}
const Threat* Project::find_threat(std::string_view id) const { return find_by_id(threats, id); }
const SecurityRequirement* Project::find_requirement(std::string_view id) const {
  return find_by_id(requirements, id);
}
const RiskAssessment* Project::find_assessment(std::string_view threat_id) const {
  auto it = std::find_if(assessments.begin(), assessments.end(),
                         [&](const RiskAssessment& r) { return r.threat_id == threat_id; });
  return it == assessments.end() ? nullptr : &*it;
}
const Agreement* Project::find_agreement(std::string_view goal_id,
                                         std::string_view stakeholder_id) const {
  auto it = std::find_if(agreements.begin(), agreements.end(), [&](const Agreement& a) {
    return a.goal_id == goal_id && a.stakeholder_id == stakeholder_id;
  });
  return it == agreements.end() ? nullptr : &*it;
}

EntityKind kind_of(const Entity& entity) {
  return static_cast<EntityKind>(entity.index());
}

std::string agreement_key(std::string_view goal_id, std::string_view stakeholder_id) {
  return "Agreement(" + std::string(goal_id) + "," + std::string(stakeholder_id) + ")";
}
std::string assessment_key(std::string_view threat_id) {
  return "RiskAssessment(" + std::string(threat_id) + ")";
}
std::string validation_key(std::string_view requirement_id, std::string_view reviewer) {
  return "ValidationRecord(" + std::string(requirement_id) + "," + std::string(reviewer) + ")";
}

std::optional<EntityKind> kind_from_id(std::string_view id) {
  if (matches(goal_pattern(), id)) return EntityKind::Goal;
  if (matches(asset_pattern(), id)) return EntityKind::Asset;
  if (matches(point_pattern(), id)) return EntityKind::AttackPoint;
  if (matches(threat_pattern(), id)) return EntityKind::Threat;
  if (matches(requirement_pattern(), id)) return EntityKind::SecurityRequirement;
  return std::nullopt;
}

std::optional<long> id_number(std::string_view id) {
  auto pos = id.find_first_of("0123456789");
  if (pos == std::string_view::npos) return std::nullopt;
  long value = 0;
  for (auto c : id.substr(pos)) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

Project new_project(std::string name, std::string project_id) {
  Project p;
  p.name = std::move(name);
  p.project_id = std::move(project_id);
  for (int step = 1; step <= kStepCount; ++step)
    p.step_states.push_back({step, step == 1 ? StepStatus::InProgress : StepStatus::Locked});
  return p;
}

std::string generate_project_id() {
  std::random_device rd;
  std::uniform_int_distribution<int> nibble(0, 15);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 32; ++i) id.push_back(kHex[nibble(rd)]);
  return id;
}

Project add_entity(Project project, Entity entity) {
  std::visit(
      [&](auto&& e) {
        using T = std::decay_t<decltype(e)>;
        if (auto vs = intrinsic(e); !vs.empty()) {
          throw Error(ErrorCode::InvariantViolation,
                      key_of(e) + " violates: " + vs.front().rule,
                      {{"violations", violations_json(vs)}});
        }
        if (id_taken(project, e))
          throw Error(ErrorCode::DuplicateId, "duplicate id " + key_of(e), {{"id", key_of(e)}});
        if (auto missing = dangling(project, e); !missing.empty()) {
          throw Error(ErrorCode::DanglingReference,
                      key_of(e) + " references missing " + text::join(missing, ", "),
                      {{"missing", missing}, {"entity", key_of(e)}});
        }
        if constexpr (std::is_same_v<T, AttackPoint>) project.none_declared.erase(e.kind);
        collection<T>(project).push_back(std::move(e));
      },
      std::move(entity));
  return project;
}

namespace {

std::vector<std::string> referencing(const Project& p, EntityKind kind, std::string_view id) {
  std::vector<std::string> refs;
  switch (kind) {
    case EntityKind::Goal:
      for (const auto& a : p.agreements)
        if (a.goal_id == id) refs.push_back(key_of(a));
      break;
    case EntityKind::Stakeholder:
      for (const auto& a : p.agreements)
        if (a.stakeholder_id == id) refs.push_back(key_of(a));
      for (const auto& a : p.assets)
        if (std::find(a.identified_by.begin(), a.identified_by.end(), id) != a.identified_by.end())
          refs.push_back(a.id);
      for (const auto& v : p.validations)
        if (v.reviewer == id) refs.push_back(key_of(v));
      break;
    case EntityKind::Asset:
      for (const auto& t : p.threats)
        if (std::find(t.asset_refs.begin(), t.asset_refs.end(), id) != t.asset_refs.end())
          refs.push_back(t.id);
      break;
    case EntityKind::AttackPoint:
      for (const auto& t : p.threats)
        if (std::find(t.point_refs.begin(), t.point_refs.end(), id) != t.point_refs.end())
          refs.push_back(t.id);
      break;
    case EntityKind::Threat:
      for (const auto& r : p.requirements)
        if (std::find(r.threat_refs.begin(), r.threat_refs.end(), id) != r.threat_refs.end())
          refs.push_back(r.id);
      if (p.find_assessment(id)) refs.push_back(assessment_key(id));
      break;
    case EntityKind::SecurityRequirement:
      for (const auto& v : p.validations)
        if (v.requirement_id == id) refs.push_back(key_of(v));
      break;
    default:
      break;
  }
  return refs;
}

template <typename T>
bool erase_id(std::vector<T>& items, std::string_view id) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
  if (it == items.end()) return false;
  items.erase(it);
  return true;
}

}  // namespace

Project remove_entity(Project project, std::string_view id) {
  std::optional<EntityKind> kind;
  if (project.find_goal(id)) kind = EntityKind::Goal;
  else if (project.find_stakeholder(id)) kind = EntityKind::Stakeholder;
  else if (project.find_asset(id)) kind = EntityKind::Asset;
  else if (project.find_point(id)) kind = EntityKind::AttackPoint;
  else if (project.find_threat(id)) kind = EntityKind::Threat;
  else if (project.find_requirement(id)) kind = EntityKind::SecurityRequirement;
  if (!kind) throw Error(ErrorCode::NotFound, "no entity with id " + std::string(id), {{"id", id}});

  if (auto refs = referencing(project, *kind, id); !refs.empty()) {
    throw Error(ErrorCode::StillReferenced,
                std::string(id) + " is referenced by " + text::join(refs, ", "),
                {{"id", id}, {"referenced_by", refs}});
  }
  switch (*kind) {
    case EntityKind::Goal: erase_id(project.goals, id); break;
    case EntityKind::Stakeholder: erase_id(project.stakeholders, id); break;
    case EntityKind::Asset: erase_id(project.assets, id); break;
    case EntityKind::AttackPoint: erase_id(project.attack_points, id); break;
    case EntityKind::Threat: erase_id(project.threats, id); break;
    case EntityKind::SecurityRequirement: erase_id(project.requirements, id); break;
    default: break;
  }
  return project;
}

Project remove_agreement(Project project, std::string_view goal_id,
                         std::string_view stakeholder_id) {
  auto& v = project.agreements;
  auto it = std::find_if(v.begin(), v.end(), [&](const Agreement& a) {
    return a.goal_id == goal_id && a.stakeholder_id == stakeholder_id;
  });
  if (it == v.end())
    throw Error(ErrorCode::NotFound, "no " + agreement_key(goal_id, stakeholder_id));
  v.erase(it);
  return project;
}

Project remove_assessment(Project project, std::string_view threat_id) {
  auto& v = project.assessments;
  auto it = std::find_if(v.begin(), v.end(),
                         [&](const RiskAssessment& r) { return r.threat_id == threat_id; });
  if (it == v.end()) throw Error(ErrorCode::NotFound, "no " + assessment_key(threat_id));
  v.erase(it);
  return project;
}

Project remove_validation(Project project, std::string_view requirement_id,
                          std::string_view reviewer) {
  auto& v = project.validations;
  auto it = std::find_if(v.begin(), v.end(), [&](const ValidationRecord& r) {
    return r.requirement_id == requirement_id && r.reviewer == reviewer;
  });
  if (it == v.end()) throw Error(ErrorCode::NotFound, "no " + validation_key(requirement_id, reviewer));
  v.erase(it);
  return project;
}

std::vector<Violation> validate_project(const Project& project) {
  std::vector<Violation> out;
  if (project.schema_version < 1) out.push_back({"project", "schema_version >= 1"});
  check_collection(project, project.goals, out);
  check_collection(project, project.stakeholders, out);
  check_collection(project, project.agreements, out);
  check_collection(project, project.assets, out);
  check_collection(project, project.attack_points, out);
  check_collection(project, project.threats, out);
  check_collection(project, project.assessments, out);
  check_collection(project, project.requirements, out);
  check_collection(project, project.validations, out);

  for (PointKind kind : project.none_declared) {
    if (kind == PointKind::PoA || kind == PointKind::PoB)
      out.push_back({"project", "only PoC and PoD may be declared empty"});
    const bool has_points = std::any_of(project.attack_points.begin(), project.attack_points.end(),
                                        [&](const AttackPoint& p) { return p.kind == kind; });
    if (has_points) out.push_back({"project", "declared-empty point kind has no points"});
  }
  if (project.srs_record && project.srs_record->checksum.empty())
    out.push_back({"project", "srs checksum nonempty"});

  for (auto& v : workflow::step_state_violations(project)) out.push_back(std::move(v));
  return out;
}

RequirementOutcome requirement_outcome(const Project& project, std::string_view requirement_id) {
  bool any = false, rejected = false, rework = false;
  for (const auto& v : project.validations) {
    if (v.requirement_id != requirement_id) continue;
    any = true;
    rejected |= v.verdict == ValidationVerdict::Rejected;
    rework |= v.verdict == ValidationVerdict::NeedsRework;
  }
  if (!any) return RequirementOutcome::Unvalidated;
  if (rejected) return RequirementOutcome::Rejected;
  if (rework) return RequirementOutcome::NeedsRework;
  return RequirementOutcome::Accepted;
}

std::string_view to_string(GoalSource v) {
  switch (v) {
    case GoalSource::Interview: return "Interview";
    case GoalSource::Brainstorming: return "Brainstorming";
    case GoalSource::Review: return "Review";
    case GoalSource::Other: return "Other";
  }
  return "";
}

std::string_view to_string(StakeholderGroup v) {
  switch (v) {
    case StakeholderGroup::Managerial: return "Managerial";
    case StakeholderGroup::Marketing: return "Marketing";
    case StakeholderGroup::InformationSystem: return "InformationSystem";
    case StakeholderGroup::Other: return "Other";
  }
  return "";
}

std::string_view to_string(StakeholderPriority v) {
  switch (v) {
    case StakeholderPriority::Critical: return "Critical";
    case StakeholderPriority::Major: return "Major";
    case StakeholderPriority::Minor: return "Minor";
  }
  return "";
}

std::string_view to_string(AgreementVerdict v) {
  return v == AgreementVerdict::Agreed ? "Agreed" : "Objected";
}

std::string_view to_string(AssetPriority v) {
  switch (v) {
    case AssetPriority::Low: return "Low";
    case AssetPriority::Medium: return "Medium";
    case AssetPriority::High: return "High";
  }
  return "";
}

std::string_view to_string(PointKind v) {
  switch (v) {
    case PointKind::PoA: return "PoA";
    case PointKind::PoB: return "PoB";
    case PointKind::PoC: return "PoC";
    case PointKind::PoD: return "PoD";
  }
  return "";
}

std::string_view to_string(ValidationVerdict v) {
  switch (v) {
    case ValidationVerdict::Accepted: return "Accepted";
    case ValidationVerdict::Rejected: return "Rejected";
    case ValidationVerdict::NeedsRework: return "NeedsRework";
  }
  return "";
}

std::string_view to_string(StepStatus v) {
  switch (v) {
    case StepStatus::Locked: return "Locked";
    case StepStatus::InProgress: return "InProgress";
    case StepStatus::Complete: return "Complete";
    case StepStatus::Stale: return "Stale";
  }
  return "";
}

std::string_view to_string(RiskMethod v) { return v == RiskMethod::Dread ? "Dread" : "SimpleRisk"; }

std::string_view to_string(RiskBand v) {
  switch (v) {
    case RiskBand::High: return "High";
    case RiskBand::Medium: return "Medium";
    case RiskBand::Low: return "Low";
  }
  return "";
}

std::string_view to_string(RequirementOutcome v) {
  switch (v) {
    case RequirementOutcome::Unvalidated: return "Unvalidated";
    case RequirementOutcome::Accepted: return "Accepted";
    case RequirementOutcome::Rejected: return "Rejected";
    case RequirementOutcome::NeedsRework: return "NeedsRework";
  }
  return "";
}

std::string_view to_string(EntityKind v) {
  switch (v) {
    case EntityKind::Goal: return "Goal";
    case EntityKind::Stakeholder: return "Stakeholder";
    case EntityKind::Agreement: return "Agreement";
    case EntityKind::Asset: return "Asset";
    case EntityKind::AttackPoint: return "AttackPoint";
    case EntityKind::Threat: return "Threat";
    case EntityKind::RiskAssessment: return "RiskAssessment";
    case EntityKind::SecurityRequirement: return "SecurityRequirement";
    case EntityKind::ValidationRecord: return "ValidationRecord";
    case EntityKind::SrsRecord: return "SrsRecord";
  }
  return "";
}

char stride_letter(Stride s) {
  static constexpr char kLetters[] = "STRIDE";
  return kLetters[static_cast<int>(s)];
}

char cia_letter(CiaFacet c) {
  static constexpr char kLetters[] = "CIA";
  return kLetters[static_cast<int>(c)];
}

std::string_view stride_name(Stride s) {
  switch (s) {
    case Stride::Spoofing: return "Spoofing";
    case Stride::Tampering: return "Tampering";
    case Stride::Repudiation: return "Repudiation";
    case Stride::InformationDisclosure: return "InformationDisclosure";
    case Stride::DenialOfService: return "DenialOfService";
    case Stride::ElevationOfPrivilege: return "ElevationOfPrivilege";
  }
  return "";
}

std::string_view cia_name(CiaFacet c) {
  switch (c) {
    case CiaFacet::Confidentiality: return "Confidentiality";
    case CiaFacet::Integrity: return "Integrity";
    case CiaFacet::Availability: return "Availability";
  }
  return "";
}

std::optional<GoalSource> parse_goal_source(std::string_view s) {
  return parse_enum(s, std::array{GoalSource::Interview, GoalSource::Brainstorming,
                                  GoalSource::Review, GoalSource::Other});
}
std::optional<StakeholderGroup> parse_stakeholder_group(std::string_view s) {
  return parse_enum(s, std::array{StakeholderGroup::Managerial, StakeholderGroup::Marketing,
                                  StakeholderGroup::InformationSystem, StakeholderGroup::Other});
}
std::optional<StakeholderPriority> parse_stakeholder_priority(std::string_view s) {
  return parse_enum(s, std::array{StakeholderPriority::Critical, StakeholderPriority::Major,
                                  StakeholderPriority::Minor});
}
std::optional<AgreementVerdict> parse_agreement_verdict(std::string_view s) {
  return parse_enum(s, std::array{AgreementVerdict::Agreed, AgreementVerdict::Objected});
}
std::optional<AssetPriority> parse_asset_priority(std::string_view s) {
  return parse_enum(s, std::array{AssetPriority::Low, AssetPriority::Medium, AssetPriority::High});
}
std::optional<PointKind> parse_point_kind(std::string_view s) {
  return parse_enum(s, kAllPointKinds);
}
std::optional<ValidationVerdict> parse_validation_verdict(std::string_view s) {
  return parse_enum(s, std::array{ValidationVerdict::Accepted, ValidationVerdict::Rejected,
                                  ValidationVerdict::NeedsRework});
}
std::optional<StepStatus> parse_step_status(std::string_view s) {
  return parse_enum(s, std::array{StepStatus::Locked, StepStatus::InProgress, StepStatus::Complete,
                                  StepStatus::Stale});
}
std::optional<RiskMethod> parse_risk_method(std::string_view s) {
  if (normalize(s) == "simple") return RiskMethod::SimpleRisk;
  return parse_enum(s, std::array{RiskMethod::SimpleRisk, RiskMethod::Dread});
}
std::optional<RiskBand> parse_risk_band(std::string_view s) {
  return parse_enum(s, std::array{RiskBand::High, RiskBand::Medium, RiskBand::Low});
}

std::optional<Stride> parse_stride(std::string_view s) {
  if (s.size() == 1) {
    for (Stride v : kAllStride)
      if (std::toupper(static_cast<unsigned char>(s[0])) == stride_letter(v)) return v;
    return std::nullopt;
  }
  const auto key = normalize(s);
  for (Stride v : kAllStride)
    if (normalize(stride_name(v)) == key) return v;
  return std::nullopt;
}

std::optional<CiaFacet> parse_cia(std::string_view s) {
  if (s.size() == 1) {
    for (CiaFacet v : kAllCia)
      if (std::toupper(static_cast<unsigned char>(s[0])) == cia_letter(v)) return v;
    return std::nullopt;
  }
  const auto key = normalize(s);
  for (CiaFacet v : kAllCia)
    if (normalize(cia_name(v)) == key) return v;
  return std::nullopt;
}

std::string_view point_prefix(PointKind kind) {
  switch (kind) {
    case PointKind::PoA: return "PA";
    case PointKind::PoB: return "PB";
    case PointKind::PoC: return "PC";
    case PointKind::PoD: return "PD";
  }
  return "";
}

}  // namespace store

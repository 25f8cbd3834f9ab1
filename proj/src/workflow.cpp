#include "store/workflow.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "store/docgen.hpp"
#include "store/error.hpp"
#include "store/text.hpp"

namespace store::workflow {

namespace {

constexpr std::array<StepInfo, kStepCount> kSteps = {{
    {"Identify System Goals", "Objectives of the proposed system, Policy and Procedure",
     "Interview, Brainstorming", "Requirement Engineer, Client", "List of System Goals"},
    {"Identify and Prioritize Stakeholders", "System Goals", "Review, Analysis",
     "Requirement Engineer", "Stakeholders"},
    {"Agreed upon Goals", "System Goals", "Meeting", "Requirement Engineer, Stakeholders",
     "Agreed upon Goals"},
    {"Asset Identification", "Stakeholder's Valuable Asset",
     "Interview, questionnaire, brainstorming", "Requirement Engineer, Stakeholders",
     "Valuable Asset"},
    {"Security Attack Analysis", "Valuable Asset", "Security Attack Analysis",
     "Requirement Engineer, Security Expert", "PoA, PoB, PoC, PoD"},
    {"Threat Identification and Categorization", "PoA, PoB, PoC, PoD", "STRIDE Analysis",
     "Requirement Engineer", "Categorized & Prioritized Threats"},
    {"Risk Evaluation and Prioritization", "Categorized & Prioritized Threats",
     "DREAD Risk Assessment Methods", "Requirement Engineer, Risk Manager",
     "Risk Assessment Report"},
    {"Security Requirements Elicitation", "Potential Threats", "Threat Dictionary",
     "Requirement Engineer", "Security requirements"},
    {"Security Requirements Validation", "Security requirements", "Review, Walk-through",
     "Requirement Engineer, Security Expert", "Valid Security Requirements"},
    {"Security Requirements Specification Document", "Valid Security Requirement",
     "Documentation", "Requirement Engineer", "Security Requirements Specification Document"},
}};

void require_range(int step) {
  if (step < 1 || step > kStepCount)
    throw Error(ErrorCode::StepOutOfRange, "step must be in 1..10, got " + std::to_string(step),
                {{"step", step}});
}

StepState& state_of(Project& project, int step) {
  for (auto& s : project.step_states)
    if (s.step == step) return s;
  // Loaded projects are validated, so every step has a state.
  throw Error(ErrorCode::InvalidProject, "missing state for step " + std::to_string(step));
}

ExitCheck check(int step, std::string rule, std::string description, bool ok, std::string details) {
  return {step, std::move(rule), std::move(description), ok, std::move(details)};
}

std::string limited_list(const std::vector<std::string>& ids, std::size_t max = 12) {
  if (ids.size() <= max) return text::join(ids, ", ");
  std::vector<std::string> head(ids.begin(), ids.begin() + static_cast<long>(max));
  return text::join(head, ", ") + ", ... (" + std::to_string(ids.size()) + " total)";
}

std::vector<ExitCheck> step_checks(const Project& p, int step) {
  std::vector<ExitCheck> out;
  switch (step) {
    case 1:
      out.push_back(check(1, "goals-nonempty", "At least one system goal is recorded",
                          !p.goals.empty(), std::to_string(p.goals.size()) + " goal(s)"));
      break;
    case 2: {
      out.push_back(check(2, "stakeholders-nonempty", "At least one stakeholder is identified",
                          !p.stakeholders.empty(),
                          std::to_string(p.stakeholders.size()) + " stakeholder(s)"));
      // Priority is a required field, so every recorded stakeholder carries one.
      out.push_back(check(2, "stakeholders-prioritized",
                          "Every stakeholder is prioritized Critical, Major or Minor", true, ""));
      break;
    }
    case 3: {
      std::vector<std::string> missing;
      for (const auto& g : p.goals) {
        for (const auto& s : p.stakeholders) {
          if (s.priority != StakeholderPriority::Critical) continue;
          const auto* a = p.find_agreement(g.id, s.id);
          if (!a || a->verdict != AgreementVerdict::Agreed)
            missing.push_back("(" + g.id + ", " + s.id + ")");
        }
      }
      out.push_back(check(3, "goals-agreed-by-critical",
                          "Every goal is agreed by every Critical stakeholder", missing.empty(),
                          missing.empty() ? "" : "awaiting agreement: " + limited_list(missing)));
      std::vector<std::string> objections;
      for (const auto& a : p.agreements)
        if (a.verdict == AgreementVerdict::Objected)
          objections.push_back("(" + a.goal_id + ", " + a.stakeholder_id + ")");
      out.push_back(check(3, "no-open-objections", "No goal has an unresolved objection",
                          objections.empty(),
                          objections.empty() ? "" : "objections: " + limited_list(objections)));
      break;
    }
    case 4: {
      out.push_back(check(4, "assets-nonempty", "At least one valuable asset is identified",
                          !p.assets.empty(), std::to_string(p.assets.size()) + " asset(s)"));
      std::vector<std::string> bad;
      for (const auto& a : p.assets)
        if (a.cia.empty()) bad.push_back(a.id);
      out.push_back(check(4, "assets-categorized",
                          "Every asset has a CIA categorization and a priority", bad.empty(),
                          bad.empty() ? "" : "uncategorized: " + limited_list(bad)));
      break;
    }
    case 5: {
      std::map<PointKind, int> counts;
      for (const auto& pt : p.attack_points) ++counts[pt.kind];
      out.push_back(check(5, "poa-nonempty", "At least one Point of Attack is registered",
                          counts[PointKind::PoA] > 0,
                          std::to_string(counts[PointKind::PoA]) + " PoA"));
      out.push_back(check(5, "pob-nonempty", "At least one Point of Belief is registered",
                          counts[PointKind::PoB] > 0,
                          std::to_string(counts[PointKind::PoB]) + " PoB"));
      for (PointKind kind : {PointKind::PoC, PointKind::PoD}) {
        const bool declared = p.none_declared.count(kind) > 0;
        const auto name = std::string(to_string(kind));
        const auto n = counts[kind];
        out.push_back(check(5, text::to_lower(name) + "-declared",
                            "Points of kind " + name + " are registered or declared absent",
                            n > 0 || declared,
                            n > 0 ? std::to_string(n) + " " + name
                                  : (declared ? "none declared" : "neither registered nor declared")));
      }
      break;
    }
    case 6: {
      out.push_back(check(6, "threats-nonempty", "At least one threat is identified",
                          !p.threats.empty(), std::to_string(p.threats.size()) + " threat(s)"));
      std::vector<std::string> untagged, unlinked;
      for (const auto& t : p.threats) {
        if (t.stride.empty()) untagged.push_back(t.id);
        if (t.asset_refs.empty()) unlinked.push_back(t.id);
      }
      out.push_back(check(6, "threats-stride-nonempty", "Every threat has a STRIDE category",
                          untagged.empty(),
                          untagged.empty() ? "" : "untagged: " + limited_list(untagged)));
      out.push_back(check(6, "threats-assets-nonempty", "Every threat names at least one asset",
                          unlinked.empty(),
                          unlinked.empty() ? "" : "no assets: " + limited_list(unlinked)));
      break;
    }
    case 7: {
      std::vector<std::string> bad;
      for (const auto& t : p.threats) {
        const auto n = std::count_if(p.assessments.begin(), p.assessments.end(),
                                     [&](const RiskAssessment& r) { return r.threat_id == t.id; });
        if (n != 1) bad.push_back(t.id);
      }
      out.push_back(check(7, "threats-assessed", "Every threat has exactly one risk assessment",
                          bad.empty(), bad.empty() ? "" : "unassessed: " + limited_list(bad)));
      break;
    }
    case 8: {
      std::vector<std::string> bad;
      for (const auto& t : p.threats) {
        const auto* r = p.find_assessment(t.id);
        if (r && r->excluded) continue;
        const bool covered =
            std::any_of(p.requirements.begin(), p.requirements.end(), [&](const SecurityRequirement& sr) {
              return std::find(sr.threat_refs.begin(), sr.threat_refs.end(), t.id) != sr.threat_refs.end();
            });
        if (!covered) bad.push_back(t.id);
      }
      out.push_back(check(8, "threats-have-requirements",
                          "Every threat not excluded has a security requirement", bad.empty(),
                          bad.empty() ? "" : "no requirement: " + limited_list(bad)));
      break;
    }
    case 9: {
      std::vector<std::string> unvalidated;
      bool any_accepted = false;
      for (const auto& r : p.requirements) {
        const auto outcome = requirement_outcome(p, r.id);
        if (outcome == RequirementOutcome::Unvalidated) unvalidated.push_back(r.id);
        any_accepted |= outcome == RequirementOutcome::Accepted;
      }
      out.push_back(check(9, "requirements-validated",
                          "Every security requirement has a validation record", unvalidated.empty(),
                          unvalidated.empty() ? "" : "unvalidated: " + limited_list(unvalidated)));
      out.push_back(check(9, "requirement-accepted", "At least one requirement is accepted",
                          any_accepted, any_accepted ? "" : "no accepted requirement"));
      break;
    }
    case 10: {
      const bool present = p.srs_record.has_value();
      out.push_back(check(10, "srs-present", "A specification document has been generated",
                          present, present ? p.srs_record->document_path : "not generated"));
      bool current = false;
      std::string details = "not generated";
      if (present) {
        try {
          const auto doc = docgen::build_srs(p);
          current = doc.checksum == p.srs_record->checksum;
          details = current ? "checksum " + doc.checksum : "project changed since generation";
        } catch (const Error& e) {
          details = e.what();
        }
      }
      out.push_back(check(10, "srs-checksum-current",
                          "The recorded document matches the current project content", current,
                          details));
      break;
    }
  }
  return out;
}

}  // namespace

const StepInfo& step_info(int step) {
  require_range(step);
  return kSteps[static_cast<std::size_t>(step - 1)];
}

StepStatus status_of(const Project& project, int step) {
  require_range(step);
  for (const auto& s : project.step_states)
    if (s.step == step) return s.status;
  return StepStatus::Locked;
}

int current_step(const Project& project) {
  for (int step = 1; step <= kStepCount; ++step)
    if (status_of(project, step) != StepStatus::Complete) return step;
  return kStepCount;
}

std::vector<ExitCheck> exit_checks(const Project& project, int step) {
  require_range(step);
  return step_checks(project, step);
}

Project complete_step(Project project, int step) {
  require_range(step);
  const int current = current_step(project);
  if (step != current || status_of(project, step) == StepStatus::Complete) {
    throw Error(ErrorCode::StepNotCurrent,
                "cannot complete step " + std::to_string(step) + "; current step is " +
                    std::to_string(current),
                {{"step", step}, {"current_step", current}});
  }
  std::vector<std::string> failing;
  for (const auto& c : step_checks(project, step))
    if (!c.satisfied) failing.push_back(c.rule_id);
  if (!failing.empty()) {
    throw Error(ErrorCode::ExitChecksFailed,
                "step " + std::to_string(step) + " exit checks failed: " + text::join(failing, ", "),
                {{"step", step}, {"failed", failing}});
  }
  state_of(project, step).status = StepStatus::Complete;
  if (step < kStepCount) state_of(project, step + 1).status = StepStatus::InProgress;
  return project;
}

Project reopen_step(Project project, int step) {
  require_range(step);
  const auto status = status_of(project, step);
  switch (status) {
    case StepStatus::Locked:
      throw Error(ErrorCode::StepNotStarted, "step " + std::to_string(step) + " has not started",
                  {{"step", step}});
    case StepStatus::InProgress:
      return project;
    case StepStatus::Stale:
      if (current_step(project) != step) {
        throw Error(ErrorCode::StepNotCurrent,
                    "stale step " + std::to_string(step) + " is re-completed in order; current step is " +
                        std::to_string(current_step(project)),
                    {{"step", step}, {"current_step", current_step(project)}});
      }
      break;
    case StepStatus::Complete:
      break;
  }
  state_of(project, step).status = StepStatus::InProgress;
  for (auto& s : project.step_states) {
    if (s.step <= step) continue;
    if (s.status == StepStatus::Complete) s.status = StepStatus::Stale;
    else if (s.status == StepStatus::InProgress) s.status = StepStatus::Locked;
  }
  return project;
}

int mutation_step_of(EntityKind kind) {
  switch (kind) {
    case EntityKind::Goal: return 1;
    case EntityKind::Stakeholder: return 2;
    case EntityKind::Agreement: return 3;
    case EntityKind::Asset: return 4;
    case EntityKind::AttackPoint: return 5;
    case EntityKind::Threat: return 6;
    case EntityKind::RiskAssessment: return 7;
    case EntityKind::SecurityRequirement: return 8;
    case EntityKind::ValidationRecord: return 9;
    case EntityKind::SrsRecord: return 10;
  }
  return 1;
}

Project touch(Project project, EntityKind kind) {
  const int step = mutation_step_of(kind);
  if (status_of(project, step) == StepStatus::Complete) return reopen_step(std::move(project), step);
  return project;
}

std::vector<Violation> step_state_violations(const Project& project) {
  std::vector<Violation> out;
  std::map<int, int> seen;
  for (const auto& s : project.step_states) ++seen[s.step];
  bool exact = project.step_states.size() == kStepCount;
  for (int step = 1; step <= kStepCount; ++step) exact = exact && seen[step] == 1;
  if (!exact) {
    out.push_back({"project", "steps 1..10 exactly once"});
    return out;
  }
  if (status_of(project, 1) == StepStatus::Locked) out.push_back({"project", "step 1 never Locked"});
  for (int k = 2; k <= kStepCount; ++k) {
    const auto st = status_of(project, k);
    if (st != StepStatus::InProgress && st != StepStatus::Complete) continue;
    for (int j = 1; j < k; ++j) {
      const auto pred = status_of(project, j);
      if (pred != StepStatus::Complete && pred != StepStatus::Stale) {
        out.push_back({"project", "step " + std::to_string(k) + " " + std::string(to_string(st)) +
                                      " requires steps before it Complete or Stale"});
        break;
      }
    }
  }
  return out;
}

}  // namespace store::workflow

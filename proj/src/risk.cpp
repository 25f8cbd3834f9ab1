#include "store/risk.hpp"

#include <algorithm>

#include "store/error.hpp"
#include "store/text.hpp"

namespace store::risk {

int simple_risk(int probability, int damage) {
  if (probability < 1 || probability > 10 || damage < 1 || damage > 10) {
    throw Error(ErrorCode::OutOfRange, "probability and damage potential must be in 1..10",
                {{"probability", probability}, {"damage", damage}});
  }
  return probability * damage;
}

int dread_score(const DreadComponents& components) {
  int sum = 0;
  for (int c : components.as_array()) {
    if (c < 0 || c > 10) {
      throw Error(ErrorCode::OutOfRange, "DREAD components must be in 0..10",
                  {{"components", components.as_array()}});
    }
    sum += c;
  }
  return 2 * sum;
}

RiskBand risk_band(int score_tenths) {
  if (score_tenths >= kHighThreshold) return RiskBand::High;
  if (score_tenths >= kMediumThreshold) return RiskBand::Medium;
  return RiskBand::Low;
}

RiskAssessment assess_simple(std::string threat_id, int probability, int damage) {
  RiskAssessment r;
  r.threat_id = std::move(threat_id);
  r.inputs = SimpleRiskInputs{probability, damage};
  r.score_tenths = simple_risk(probability, damage);
  r.band = risk_band(r.score_tenths);
  return r;
}

RiskAssessment assess_dread(std::string threat_id, const DreadComponents& components) {
  RiskAssessment r;
  r.threat_id = std::move(threat_id);
  r.inputs = components;
  r.score_tenths = dread_score(components);
  r.band = risk_band(r.score_tenths);
  return r;
}

std::string format_tenths(int score_tenths) {
  const bool negative = score_tenths < 0;
  const int v = negative ? -score_tenths : score_tenths;
  return (negative ? "-" : "") + std::to_string(v / 10) + "." + std::to_string(v % 10);
}

std::vector<RankedThreat> prioritize(const Project& project) {
  std::vector<RankedThreat> ranked;
  std::vector<std::string> missing;
  for (const auto& t : project.threats) {
    if (const auto* r = project.find_assessment(t.id)) ranked.push_back({t.id, r->score_tenths});
    else missing.push_back(t.id);
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::MissingAssessment, "threats without assessment: " + text::join(missing, ", "),
                {{"threats", missing}});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedThreat& a, const RankedThreat& b) {
    if (a.score_tenths != b.score_tenths) return a.score_tenths > b.score_tenths;
    const auto na = id_number(a.threat_id).value_or(0);
    const auto nb = id_number(b.threat_id).value_or(0);
    if (na != nb) return na < nb;
    return a.threat_id < b.threat_id;
  });
  return ranked;
}

Project set_assessment(Project project, RiskAssessment assessment) {
  if (!project.find_threat(assessment.threat_id)) {
    throw Error(ErrorCode::NotFound, "no threat " + assessment.threat_id,
                {{"id", assessment.threat_id}});
  }
  for (auto& r : project.assessments) {
    if (r.threat_id != assessment.threat_id) continue;
    if (!assessment.excluded) {
      assessment.excluded = r.excluded;
      assessment.exclusion_rationale = r.exclusion_rationale;
    }
    r = std::move(assessment);
    return project;
  }
  project.assessments.push_back(std::move(assessment));
  return project;
}

Project set_excluded(Project project, std::string_view threat_id, bool excluded,
                     std::string rationale) {
  if (!project.find_threat(threat_id))
    throw Error(ErrorCode::NotFound, "no threat " + std::string(threat_id), {{"id", threat_id}});
  for (auto& r : project.assessments) {
    if (r.threat_id != threat_id) continue;
    r.excluded = excluded;
    if (excluded && !rationale.empty()) r.exclusion_rationale = std::move(rationale);
    else if (!excluded) r.exclusion_rationale.reset();
    return project;
  }
  throw Error(ErrorCode::MissingAssessment, std::string(threat_id) + " has no risk assessment",
              {{"threats", {threat_id}}});
}

}  // namespace store::risk

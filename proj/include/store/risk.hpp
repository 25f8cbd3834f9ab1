#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "store/model.hpp"

namespace store::risk {

inline constexpr int kHighThreshold = 70;
inline constexpr int kMediumThreshold = 40;

// probability x damage potential, both on a 1..10 scale; the result reads
// as a percentage.
int simple_risk(int probability, int damage);

// Average of the five components, in tenths: sum / 5 == 2 * sum / 10.
int dread_score(const DreadComponents& components);

RiskBand risk_band(int score_tenths);

RiskAssessment assess_simple(std::string threat_id, int probability, int damage);
RiskAssessment assess_dread(std::string threat_id, const DreadComponents& components);

// "9.2" for 92.
std::string format_tenths(int score_tenths);

struct RankedThreat {
  std::string threat_id;
  int score_tenths = 0;

  bool operator==(const RankedThreat&) const = default;
};

// Descending score; ties by ascending numeric id suffix.
std::vector<RankedThreat> prioritize(const Project& project);

// Inserts or replaces the assessment for its threat; keeps an existing
// exclusion flag unless the new assessment sets one.
Project set_assessment(Project project, RiskAssessment assessment);

Project set_excluded(Project project, std::string_view threat_id, bool excluded,
                     std::string rationale);

}  // namespace store::risk

#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "store/model.hpp"

namespace store::analysis {

struct SurfaceSummary {
  // Indexed by PointKind; ids in insertion order.
  std::array<std::vector<std::string>, 4> points;

  std::size_t count(PointKind kind) const { return points[static_cast<std::size_t>(kind)].size(); }
  const std::vector<std::string>& ids(PointKind kind) const {
    return points[static_cast<std::size_t>(kind)];
  }
};

SurfaceSummary surface_summary(const Project& project);

// Advisory STRIDE categories from a fixed keyword-stem table. Never applied
// to a threat automatically.
StrideSet stride_suggest(std::string_view title, std::string_view description);

struct CoverageReport {
  std::vector<std::string> assets_without_threats;
  std::vector<std::string> threats_without_points;
  std::vector<std::string> threats_without_requirements;
  std::vector<std::string> unvalidated_requirements;
  std::vector<std::string> orphan_points;

  bool fully_traced() const;
  bool operator==(const CoverageReport&) const = default;
};

CoverageReport coverage_report(const Project& project);

struct CiaSummary {
  std::map<CiaFacet, int> per_facet;
  std::map<AssetPriority, int> per_priority;

  bool operator==(const CiaSummary&) const = default;
};

CiaSummary cia_summary(const Project& project);

}  // namespace store::analysis

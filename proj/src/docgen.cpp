#include "store/docgen.hpp"

#include <algorithm>
#include <ctime>
#include <map>
#include <sstream>

#include "store/error.hpp"
#include "store/hash.hpp"
#include "store/risk.hpp"
#include "store/text.hpp"
#include "store/workflow.hpp"

namespace store::docgen {

namespace {

constexpr std::string_view kCheck = "\xE2\x9C\x93";  // U+2713

std::string cell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n' || c == '\r') out += ' ';
    else out += c;
  }
  return out;
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  std::string str() const {
    std::string out = line(header_);
    out += "|";
    for (std::size_t i = 0; i < header_.size(); ++i) out += "---|";
    out += "\n";
    for (const auto& r : rows_) out += line(r);
    return out;
  }

 private:
  static std::string line(const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& c : cells) out += " " + cell(c) + " |";
    return out + "\n";
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string yes_no(bool b) { return b ? "Yes" : "No"; }

std::string cia_text(const CiaSet& cia) {
  std::string out;
  for (CiaFacet f : cia) {
    if (!out.empty()) out += ",";
    out += cia_letter(f);
  }
  return out;
}

std::string inputs_text(const RiskAssessment& r) {
  if (const auto* s = std::get_if<SimpleRiskInputs>(&r.inputs))
    return "P=" + std::to_string(s->probability) + " x D=" + std::to_string(s->damage_potential);
  const auto v = std::get<DreadComponents>(r.inputs).as_array();
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "/" : "") + std::to_string(v[i]);
  return out;
}

std::string point_kind_title(PointKind kind) {
  switch (kind) {
    case PointKind::PoA: return "Points of Attack (PoA)";
    case PointKind::PoB: return "Points of Belief (PoB)";
    case PointKind::PoC: return "Points of Conjecture (PoC)";
    case PointKind::PoD: return "Points of Dependency (PoD)";
  }
  return "";
}

std::string goals_section(const Project& p) {
  Table t({"Goal ID", "Description", "Source"});
  for (const auto& g : p.goals) t.row({g.id, g.description, std::string(to_string(g.source))});
  return t.str();
}

std::string stakeholders_section(const Project& p) {
  Table t({"ID", "Name", "Significance", "Type"});
  for (const auto& s : p.stakeholders)
    t.row({s.id, s.name, std::string(to_string(s.priority)), std::string(to_string(s.group))});
  return t.str();
}

std::string agreements_section(const Project& p) {
  Table t({"Goal ID", "Agreed by", "Objected by"});
  std::vector<std::string> notes;
  for (const auto& g : p.goals) {
    std::vector<std::string> agreed, objected;
    for (const auto& a : p.agreements) {
      if (a.goal_id != g.id) continue;
      (a.verdict == AgreementVerdict::Agreed ? agreed : objected).push_back(a.stakeholder_id);
      if (a.note) notes.push_back("- " + g.id + " / " + a.stakeholder_id + ": " + cell(*a.note));
    }
    t.row({g.id, agreed.empty() ? "-" : text::join(agreed, ", "),
           objected.empty() ? "-" : text::join(objected, ", ")});
  }
  auto out = t.str();
  if (!notes.empty()) out += "\nNotes:\n\n" + text::join(notes, "\n") + "\n";
  return out;
}

std::string assets_section(const Project& p) {
  Table t({"Asset ID", "Name", "Description", "CIA", "Priority", "Identified by"});
  for (const auto& a : p.assets)
    t.row({a.id, a.name, a.description, cia_text(a.cia), std::string(to_string(a.priority)),
           a.identified_by.empty() ? "-" : text::join(a.identified_by, ", ")});
  return t.str();
}

std::string surface_section(const Project& p) {
  std::string out;
  for (PointKind kind : kAllPointKinds) {
    if (!out.empty()) out += "\n";
    out += "### " + point_kind_title(kind) + "\n\n";
    Table t({"ID", "Name", "Description"});
    bool any = false;
    for (const auto& pt : p.attack_points) {
      if (pt.kind != kind) continue;
      t.row({pt.id, pt.name, pt.description});
      any = true;
    }
    if (any) out += t.str();
    else out += p.none_declared.count(kind) ? "None declared.\n" : "None registered.\n";
  }
  return out;
}

std::string threats_section(const Project& p) {
  std::vector<std::string> header = {"ID", "Threat", "Description"};
  for (Stride s : kAllStride) header.emplace_back(1, stride_letter(s));
  header.insert(header.end(), {"Mitigated", "Assets", "Points"});
  Table t(header);
  for (const auto& th : p.threats) {
    std::vector<std::string> row = {th.id, th.title, th.description};
    for (Stride s : kAllStride) row.emplace_back(th.stride.count(s) ? std::string(kCheck) : "");
    row.push_back(yes_no(th.mitigated));
    row.push_back(text::join(th.asset_refs, ", "));
    row.push_back(th.point_refs.empty() ? "-" : text::join(th.point_refs, ", "));
    t.row(row);
  }
  return t.str();
}

std::string ranking_section(const Project& p, const std::vector<risk::RankedThreat>& ranking) {
  Table t({"Rank", "Threat ID", "Threat", "Method", "Inputs", "Risk", "Band", "Mitigated", "Excluded"});
  int rank = 0;
  for (const auto& r : ranking) {
    const auto* th = p.find_threat(r.threat_id);
    const auto* a = p.find_assessment(r.threat_id);
    std::string excluded = "No";
    if (a->excluded) excluded = a->exclusion_rationale ? "Yes: " + *a->exclusion_rationale : "Yes";
    t.row({std::to_string(++rank), th->id, th->title, std::string(to_string(a->method())),
           inputs_text(*a), risk::format_tenths(r.score_tenths), std::string(to_string(a->band)),
           yes_no(th->mitigated), excluded});
  }
  return t.str();
}

std::map<std::string, std::size_t> rank_positions(const std::vector<risk::RankedThreat>& ranking) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < ranking.size(); ++i) pos[ranking[i].threat_id] = i;
  return pos;
}

std::vector<std::string> order_by_risk(const Project& p, std::vector<std::string> ids,
                                       const std::vector<risk::RankedThreat>& ranking) {
  const auto pos = rank_positions(ranking);
  auto best = [&](const std::string& id) {
    std::size_t b = ranking.size();
    for (const auto& t : p.find_requirement(id)->threat_refs)
      if (auto it = pos.find(t); it != pos.end()) b = std::min(b, it->second);
    return b;
  };
  std::stable_sort(ids.begin(), ids.end(), [&](const std::string& a, const std::string& b) {
    const auto ba = best(a), bb = best(b);
    if (ba != bb) return ba < bb;
    return id_number(a).value_or(0) < id_number(b).value_or(0);
  });
  return ids;
}

int highest_risk(const Project& p, const SecurityRequirement& r) {
  int best = 0;
  for (const auto& t : r.threat_refs)
    if (const auto* a = p.find_assessment(t)) best = std::max(best, a->score_tenths);
  return best;
}

std::string requirements_section(const Project& p, const std::vector<risk::RankedThreat>& ranking) {
  std::vector<std::string> accepted;
  for (const auto& r : p.requirements)
    if (requirement_outcome(p, r.id) == RequirementOutcome::Accepted) accepted.push_back(r.id);
  Table t({"#", "Requirement ID", "Security Requirement", "Threat IDs", "Risk", "Origin"});
  int n = 0;
  for (const auto& id : order_by_risk(p, accepted, ranking)) {
    const auto* r = p.find_requirement(id);
    t.row({std::to_string(++n), r->id, r->text, text::join(r->threat_refs, ", "),
           risk::format_tenths(highest_risk(p, *r)),
           r->catalog_entry_id ? "Catalog: " + *r->catalog_entry_id : "Manual"});
  }
  if (n == 0) return "No accepted requirements.\n";
  return t.str();
}

std::string validation_section(const Project& p) {
  Table t({"Requirement ID", "Outcome", "Reviews"});
  std::map<RequirementOutcome, int> counts;
  for (const auto& r : p.requirements) {
    const auto outcome = requirement_outcome(p, r.id);
    ++counts[outcome];
    std::vector<std::string> reviews;
    for (const auto& v : p.validations) {
      if (v.requirement_id != r.id) continue;
      auto entry = v.reviewer + ": " + std::string(to_string(v.verdict));
      if (v.rationale) entry += " (" + *v.rationale + ")";
      reviews.push_back(entry);
    }
    t.row({r.id, std::string(to_string(outcome)), reviews.empty() ? "-" : text::join(reviews, "; ")});
  }
  std::string out = t.str();
  out += "\nAccepted: " + std::to_string(counts[RequirementOutcome::Accepted]) +
         ", Rejected: " + std::to_string(counts[RequirementOutcome::Rejected]) +
         ", Needs rework: " + std::to_string(counts[RequirementOutcome::NeedsRework]) +
         ", Unvalidated: " + std::to_string(counts[RequirementOutcome::Unvalidated]) + "\n";
  return out;
}

std::string sections_text(const std::vector<Section>& sections) {
  std::string out;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    if (i) out += "\n";
    out += "## " + sections[i].heading + "\n\n" + sections[i].body;
  }
  return out;
}

}  // namespace

std::string SrsDocument::body() const { return "# " + title + "\n\n" + sections_text(sections); }

std::string SrsDocument::render() const {
  return "# " + title + "\n\nGenerated: " + generated_at + "\n\n" + sections_text(sections);
}

SrsDocument build_srs(const Project& project, std::string generated_at) {
  const auto ranking = risk::prioritize(project);
  SrsDocument doc;
  doc.title = "Security Requirements Specification: " + project.name;
  doc.generated_at = std::move(generated_at);
  doc.sections = {
      {"1. System Goals", goals_section(project)},
      {"2. Stakeholders", stakeholders_section(project)},
      {"3. Agreed Goals", agreements_section(project)},
      {"4. Assets", assets_section(project)},
      {"5. Attack Surface", surface_section(project)},
      {"6. Threats", threats_section(project)},
      {"7. Risk Ranking", ranking_section(project, ranking)},
      {"8. Security Requirements", requirements_section(project, ranking)},
      {"9. Validation Summary", validation_section(project)},
  };
  doc.checksum = sha256_hex(doc.body());
  return doc;
}

std::vector<std::string> ordered_accepted_requirements(const Project& project) {
  std::vector<std::string> accepted;
  for (const auto& r : project.requirements)
    if (requirement_outcome(project, r.id) == RequirementOutcome::Accepted) accepted.push_back(r.id);
  return order_by_risk(project, accepted, risk::prioritize(project));
}

SrsOutput generate_srs(Project project, std::string generated_at, std::string document_path) {
  std::vector<int> incomplete;
  for (int step = 1; step <= 9; ++step)
    if (workflow::status_of(project, step) != StepStatus::Complete) incomplete.push_back(step);
  if (!incomplete.empty()) {
    std::vector<std::string> names;
    for (int s : incomplete) names.push_back(std::to_string(s));
    throw Error(ErrorCode::StepNotReady, "steps not complete: " + text::join(names, ", "),
                {{"incomplete_steps", incomplete}});
  }
  auto doc = build_srs(project, std::move(generated_at));
  project.srs_record = SrsRecord{doc.generated_at, doc.checksum, std::move(document_path)};
  return {std::move(project), std::move(doc)};
}

std::optional<ExportKind> parse_export_kind(std::string_view s) {
  static const std::map<std::string, ExportKind> kinds = {
      {"goals", ExportKind::Goals},   {"stakeholders", ExportKind::Stakeholders},
      {"assets", ExportKind::Assets}, {"points", ExportKind::Points},
      {"threats", ExportKind::Threats}, {"risk", ExportKind::Risk},
      {"requirements", ExportKind::Requirements},
  };
  auto it = kinds.find(text::to_lower(s));
  if (it == kinds.end()) return std::nullopt;
  return it->second;
}

std::string export_table(const Project& project, ExportKind kind) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header;
  switch (kind) {
    case ExportKind::Goals:
      header = {"Goal ID", "Description"};
      for (const auto& g : project.goals) rows.push_back({g.id, g.description});
      break;
    case ExportKind::Stakeholders:
      header = {"ID", "Name", "Significance", "Type"};
      for (const auto& s : project.stakeholders)
        rows.push_back({s.id, s.name, std::string(to_string(s.priority)), std::string(to_string(s.group))});
      break;
    case ExportKind::Assets:
      header = {"Asset ID", "Name", "Description", "CIA", "Priority"};
      for (const auto& a : project.assets)
        rows.push_back({a.id, a.name, a.description, cia_text(a.cia), std::string(to_string(a.priority))});
      break;
    case ExportKind::Points:
      header = {"ID", "Kind", "Name", "Description"};
      for (const auto& p : project.attack_points)
        rows.push_back({p.id, std::string(to_string(p.kind)), p.name, p.description});
      break;
    case ExportKind::Threats:
      header = {"ID", "Threat", "Description", "S", "T", "R", "I", "D", "E", "Mitigated", "Assets"};
      for (const auto& t : project.threats) {
        std::vector<std::string> row = {t.id, t.title, t.description};
        for (Stride s : kAllStride) row.emplace_back(t.stride.count(s) ? std::string(kCheck) : "");
        row.push_back(yes_no(t.mitigated));
        row.push_back(text::join(t.asset_refs, ", "));
        rows.push_back(std::move(row));
      }
      break;
    case ExportKind::Risk:
      header = {"Threat ID", "Threat", "Risk Value", "Mitigated"};
      if (!project.threats.empty()) {
        for (const auto& r : risk::prioritize(project)) {
          const auto* t = project.find_threat(r.threat_id);
          rows.push_back({t->id, t->title, risk::format_tenths(r.score_tenths), yes_no(t->mitigated)});
        }
      }
      break;
    case ExportKind::Requirements: {
      header = {"Threat ID", "Security Requirement ID", "Security Requirement"};
      std::vector<std::string> ids;
      for (const auto& r : project.requirements) ids.push_back(r.id);
      bool all_assessed = std::all_of(project.threats.begin(), project.threats.end(),
                                      [&](const Threat& t) { return project.find_assessment(t.id); });
      if (all_assessed) ids = order_by_risk(project, ids, risk::prioritize(project));
      for (const auto& id : ids) {
        const auto* r = project.find_requirement(id);
        rows.push_back({text::join(r->threat_refs, ", "), r->id, r->text});
      }
      break;
    }
  }
  if (rows.empty()) throw Error(ErrorCode::NothingToExport, "nothing to export", {});
  std::string out;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + text::csv_field(cells[i]);
    out += "\n";
  };
  emit(header);
  for (const auto& r : rows) emit(r);
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace store::docgen

#include "store/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "store/analysis.hpp"
#include "store/api.hpp"
#include "store/catalog.hpp"
#include "store/commands.hpp"
#include "store/docgen.hpp"
#include "store/error.hpp"
#include "store/persistence.hpp"
#include "store/risk.hpp"
#include "store/text.hpp"
#include "store/views.hpp"
#include "store/workflow.hpp"

namespace store::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Bad argument values that CLI11 cannot check on its own; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  std::string project_path = "project.store.json";
  std::string format = "text";
  std::ostringstream out;

  bool json_output() const { return format == "json"; }
  Project load() const { return persistence::load(project_path); }
  void save(const Project& project) const { persistence::save(project, project_path); }

  void emit(const json& j, const std::string& text) {
    if (json_output()) out << j.dump(2) << "\n";
    else out << text;
  }
};

template <typename E, typename Parser>
E parse_value(const std::string& text, Parser parser, const char* what) {
  auto v = parser(text);
  if (!v) throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  return *v;
}

StrideSet parse_stride_list(const std::vector<std::string>& items) {
  StrideSet out;
  for (const auto& item : items)
    for (const auto& part : text::split(item, ','))
      if (!text::trim(part).empty()) out.insert(parse_value<Stride>(text::trim(part), parse_stride, "STRIDE tag"));
  return out;
}

CiaSet parse_cia_list(const std::vector<std::string>& items) {
  CiaSet out;
  for (const auto& item : items)
    for (const auto& part : text::split(item, ','))
      if (!text::trim(part).empty()) out.insert(parse_value<CiaFacet>(text::trim(part), parse_cia, "CIA facet"));
  return out;
}

std::vector<int> parse_ints(const std::string& text, std::size_t expected, const char* what) {
  std::vector<int> out;
  for (const auto& part : text::split(text, ',')) {
    const auto t = text::trim(part);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size()) throw UsageError(std::string("invalid ") + what + " '" + text + "'");
    out.push_back(v);
  }
  if (out.size() != expected)
    throw UsageError(std::string(what) + " takes " + std::to_string(expected) + " comma-separated integers");
  return out;
}

template <typename T>
std::string next_id(const std::string& prefix, const std::vector<T>& items) {
  long n = 0;
  for (const auto& x : items)
    if (x.id.rfind(prefix, 0) == 0) n = std::max(n, id_number(x.id).value_or(0));
  return prefix + std::to_string(n + 1);
}

std::string next_point_id(const Project& p, PointKind kind) {
  const std::string prefix(point_prefix(kind));
  long n = 0;
  for (const auto& x : p.attack_points)
    if (x.kind == kind) n = std::max(n, id_number(x.id).value_or(0));
  return prefix + std::to_string(n + 1);
}

// Columns padded to their widest cell; the last column is left ragged.
std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], row[i].size());
    }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string stride_letters(const StrideSet& s) {
  std::string out;
  for (Stride x : s) out.push_back(stride_letter(x));
  return out;
}

std::string cia_letters(const CiaSet& s) {
  std::string out;
  for (CiaFacet x : s) out.push_back(cia_letter(x));
  return out;
}

template <typename T>
json encode_all(const std::vector<T>& items) {
  auto arr = json::array();
  for (const auto& x : items) arr.push_back(persistence::encode(x));
  return arr;
}

std::string default_srs_path(const std::string& project_path) {
  std::string p = project_path;
  const std::string ext(persistence::kFileExtension);
  if (p.size() > ext.size() && p.compare(p.size() - ext.size(), ext.size(), ext) == 0)
    p.resize(p.size() - ext.size());
  else if (auto dot = p.rfind('.'); dot != std::string::npos && p.find('/', dot) == std::string::npos)
    p.resize(dot);
  return p + ".srs.md";
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << bytes;
  if (!out.flush()) throw Error(ErrorCode::IoFailure, "cannot write " + path, {{"path", path}});
}

std::string checks_text(const std::vector<workflow::ExitCheck>& checks) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : checks)
    rows.push_back({c.satisfied ? "[x]" : "[ ]", c.rule_id, c.details.empty() ? c.description : c.description + " (" + c.details + ")"});
  return table(rows);
}

std::string workflow_text(const Project& p) {
  std::vector<std::vector<std::string>> rows;
  for (int step = 1; step <= kStepCount; ++step)
    rows.push_back({std::to_string(step), std::string(to_string(workflow::status_of(p, step))),
                    std::string(workflow::step_info(step).name)});
  return table(rows);
}

std::string ranking_text(const Project& p) {
  std::vector<std::vector<std::string>> rows;
  int rank = 0;
  for (const auto& r : risk::prioritize(p)) {
    const auto* t = p.find_threat(r.threat_id);
    const auto* a = p.find_assessment(r.threat_id);
    std::string title = t->title;
    if (a->excluded) title += " (excluded)";
    rows.push_back({std::to_string(++rank), r.threat_id, risk::format_tenths(r.score_tenths),
                    std::string(to_string(a->band)), title});
  }
  return table(rows);
}

std::string list_line(const std::string& label, const std::vector<std::string>& ids) {
  return label + ": " + (ids.empty() ? "none" : text::join(ids, ", ")) + "\n";
}

class Cli {
 public:
  Cli() : app_("Security requirements workbench", "store") { build(); }

  Result run(const std::vector<std::string>& args) {
    Result result;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    std::ostringstream help_out, help_err;
    try {
      app_.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      app_.exit(e, help_out, help_err);
      return {0, help_out.str(), help_err.str()};
    } catch (const CLI::CallForAllHelp& e) {
      app_.exit(e, help_out, help_err);
      return {0, help_out.str(), help_err.str()};
    } catch (const CLI::ParseError& e) {
      return {2, "", std::string("usage error: ") + e.what() + "\nRun with --help for usage.\n"};
    }
    try {
      action_();
      result.out = ctx_.out.str();
    } catch (const UsageError& e) {
      return {2, ctx_.out.str(), std::string("usage error: ") + e.what() + "\n"};
    } catch (const Error& e) {
      result.exit_code = 1;
      result.out = ctx_.out.str();
      if (ctx_.json_output()) {
        result.err = json{{"error", views::error(e)}}.dump(2) + "\n";
      } else {
        result.err = std::string(e.name()) + ": " + e.what() + "\n";
        if (e.code() == ErrorCode::ExitChecksFailed) {
          try {
            const int step = e.details().at("step").get<int>();
            std::vector<workflow::ExitCheck> failed;
            for (auto& c : workflow::exit_checks(ctx_.load(), step))
              if (!c.satisfied) failed.push_back(c);
            result.err += checks_text(failed);
          } catch (const std::exception&) {
          }
        }
      }
    } catch (const std::exception& e) {
      result.exit_code = 1;
      result.err = std::string("IoFailure: ") + e.what() + "\n";
    }
    return result;
  }

 private:
  CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& description,
                 std::function<void()> body) {
    auto* sub = parent->add_subcommand(name, description);
    sub->callback([this, body = std::move(body)] { action_ = body; });
    return sub;
  }

  CLI::App* group(const std::string& name, const std::string& description) {
    auto* sub = app_.add_subcommand(name, description);
    sub->require_subcommand(1);
    return sub;
  }

  // Loads, mutates, saves.
  template <typename F>
  void mutate(F&& f) {
    auto project = ctx_.load();
    project = f(std::move(project));
    ctx_.save(project);
  }

  void build() {
    app_.fallthrough();
    app_.require_subcommand(1);
    app_.add_option("--project", ctx_.project_path, "Project file")->capture_default_str();
    app_.add_option("--format", ctx_.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    build_init();
    build_goal();
    build_stakeholder();
    build_agree();
    build_asset();
    build_point();
    build_threat();
    build_risk();
    build_elicit();
    build_req();
    build_step();
    build_report();
    build_doc();
    build_suggest();
    build_rm();
    build_serve();
  }

  void build_init() {
    auto* cmd = leaf(&app_, "init", "Create a new project file", [this] {
      if (fs::exists(ctx_.project_path) && !a_.force) {
        throw Error(ErrorCode::IoFailure, ctx_.project_path + " already exists (use --force to overwrite)",
                    {{"path", ctx_.project_path}});
      }
      auto project = new_project(a_.name, generate_project_id());
      ctx_.save(project);
      ctx_.emit(json{{"project_id", project.project_id}, {"name", project.name}, {"path", ctx_.project_path}},
                "initialized " + ctx_.project_path + "\n");
    });
    cmd->add_option("name", a_.name, "Project name")->required();
    cmd->add_flag("--force", a_.force, "Overwrite an existing file");
  }

  void build_goal() {
    auto* g = group("goal", "System goals (step 1)");
    auto* add = leaf(g, "add", "Add a goal", [this] {
      mutate([&](Project p) {
        Goal goal{a_.id.empty() ? next_id("G", p.goals) : a_.id, a_.text,
                  parse_value<GoalSource>(a_.source, parse_goal_source, "goal source")};
        p = commands::add(std::move(p), goal);
        ctx_.emit(persistence::encode(goal), "added " + goal.id + "\n");
        return p;
      });
    });
    add->add_option("description", a_.text, "Goal statement")->required();
    add->add_option("--id", a_.id, "Goal id (default: next G<n>)");
    add->add_option("--source", a_.source, "interview|brainstorming|review|other")->capture_default_str();
    leaf(g, "list", "List goals", [this] {
      const auto p = ctx_.load();
      std::vector<std::vector<std::string>> rows;
      for (const auto& x : p.goals) rows.push_back({x.id, x.description});
      ctx_.emit(encode_all(p.goals), table(rows));
    });
    add_rm(g, "goal");
  }

  void build_stakeholder() {
    auto* s = group("stakeholder", "Stakeholders (step 2)");
    auto* add = leaf(s, "add", "Add a stakeholder", [this] {
      mutate([&](Project p) {
        Stakeholder st{a_.id.empty() ? next_id("SH", p.stakeholders) : a_.id, a_.name,
                       parse_value<StakeholderGroup>(a_.group, parse_stakeholder_group, "stakeholder group"),
                       parse_value<StakeholderPriority>(a_.priority, parse_stakeholder_priority, "priority")};
        p = commands::add(std::move(p), st);
        ctx_.emit(persistence::encode(st), "added " + st.id + "\n");
        return p;
      });
    });
    add->add_option("name", a_.name, "Stakeholder name or role")->required();
    add->add_option("--id", a_.id, "Stakeholder id (default: next SH<n>)");
    add->add_option("--group", a_.group, "managerial|marketing|information-system|other")->capture_default_str();
    add->add_option("--priority", a_.priority, "critical|major|minor")->required();
    leaf(s, "list", "List stakeholders", [this] {
      const auto p = ctx_.load();
      std::vector<std::vector<std::string>> rows;
      for (const auto& x : p.stakeholders)
        rows.push_back({x.id, x.name, std::string(to_string(x.priority)), std::string(to_string(x.group))});
      ctx_.emit(encode_all(p.stakeholders), table(rows));
    });
    add_rm(s, "stakeholder");
  }

  void build_agree() {
    auto* cmd = leaf(&app_, "agree", "Record a stakeholder's verdict on a goal (step 3)", [this] {
      mutate([&](Project p) {
        Agreement a{a_.id, a_.second, a_.object ? AgreementVerdict::Objected : AgreementVerdict::Agreed,
                    a_.note.empty() ? std::nullopt : std::optional(a_.note)};
        p = commands::record_agreement(std::move(p), a);
        ctx_.emit(persistence::encode(a), std::string(to_string(a.verdict)) + " " + a.goal_id + " " +
                                              a.stakeholder_id + "\n");
        return p;
      });
    });
    cmd->add_option("goal", a_.id, "Goal id")->required();
    cmd->add_option("stakeholder", a_.second, "Stakeholder id")->required();
    cmd->add_flag("--object", a_.object, "Record an objection instead of agreement");
    cmd->add_option("--note", a_.note, "Dialogue note");
  }

  void build_asset() {
    auto* s = group("asset", "Assets (step 4)");
    auto* add = leaf(s, "add", "Add an asset", [this] {
      mutate([&](Project p) {
        Asset asset{a_.id.empty() ? next_id("A", p.assets) : a_.id, a_.name, a_.description,
                    parse_cia_list(a_.cia),
                    parse_value<AssetPriority>(a_.priority, parse_asset_priority, "priority"), a_.identified_by};
        p = commands::add(std::move(p), asset);
        ctx_.emit(persistence::encode(asset), "added " + asset.id + "\n");
        return p;
      });
    });
    add->add_option("name", a_.name, "Asset name")->required();
    add->add_option("--id", a_.id, "Asset id (default: next A<n>)");
    add->add_option("--description", a_.description, "Description");
    add->add_option("--cia", a_.cia, "Security facets, e.g. C,I")->delimiter(',')->required();
    add->add_option("--priority", a_.priority, "low|medium|high")->required();
    add->add_option("--identified-by", a_.identified_by, "Stakeholder ids")->delimiter(',');
    leaf(s, "list", "List assets", [this] {
      const auto p = ctx_.load();
      std::vector<std::vector<std::string>> rows;
      for (const auto& x : p.assets)
        rows.push_back({x.id, cia_letters(x.cia), std::string(to_string(x.priority)), x.name});
      ctx_.emit(encode_all(p.assets), table(rows));
    });
    add_rm(s, "asset");
  }

  void build_point() {
    auto* s = group("point", "Attack points: PoA, PoB, PoC, PoD (step 5)");
    auto* add = leaf(s, "add", "Add an attack point", [this] {
      mutate([&](Project p) {
        const auto kind = parse_value<PointKind>(a_.kind, parse_point_kind, "point kind");
        AttackPoint pt{a_.id.empty() ? next_point_id(p, kind) : a_.id, kind, a_.name, a_.description};
        p = commands::add(std::move(p), pt);
        ctx_.emit(persistence::encode(pt), "added " + pt.id + "\n");
        return p;
      });
    });
    add->add_option("name", a_.name, "Point name")->required();
    add->add_option("--kind", a_.kind, "poa|pob|poc|pod")->required();
    add->add_option("--id", a_.id, "Point id (default: next PA<n>/PB<n>/PC<n>/PD<n>)");
    add->add_option("--description", a_.description, "Description");
    auto* none = leaf(s, "none", "Declare that a kind has no entries (poc, pod)", [this] {
      mutate([&](Project p) {
        const auto kind = parse_value<PointKind>(a_.kind, parse_point_kind, "point kind");
        p = commands::declare_no_points(std::move(p), kind);
        ctx_.emit(json{{"none_declared", std::string(to_string(kind))}},
                  "declared no " + std::string(to_string(kind)) + "\n");
        return p;
      });
    });
    none->add_option("--kind", a_.kind, "poc|pod")->required();
    leaf(s, "list", "List attack points", [this] {
      const auto p = ctx_.load();
      std::vector<std::vector<std::string>> rows;
      for (const auto& x : p.attack_points) rows.push_back({x.id, std::string(to_string(x.kind)), x.name});
      ctx_.emit(encode_all(p.attack_points), table(rows));
    });
    add_rm(s, "point");
  }

  void build_threat() {
    auto* s = group("threat", "Threats and STRIDE categories (step 6)");
    auto* add = leaf(s, "add", "Add a threat", [this] {
      mutate([&](Project p) {
        Threat t{a_.id.empty() ? next_id("T", p.threats) : a_.id, a_.name, a_.description,
                 parse_stride_list(a_.stride), a_.assets, a_.points, a_.mitigated};
        p = commands::add(std::move(p), t);
        ctx_.emit(persistence::encode(t), "added " + t.id + "\n");
        return p;
      });
    });
    add->add_option("title", a_.name, "Threat title")->required();
    add->add_option("--id", a_.id, "Threat id (default: next T<n>)");
    add->add_option("--description", a_.description, "Description");
    add->add_option("--stride", a_.stride, "STRIDE letters, e.g. T,E")->delimiter(',');
    add->add_option("--assets", a_.assets, "Asset ids")->delimiter(',');
    add->add_option("--points", a_.points, "Attack point ids")->delimiter(',');
    add->add_flag("--mitigated", a_.mitigated, "Threat is already mitigated");

    auto* tag = leaf(s, "tag", "Replace a threat's STRIDE categories", [this] {
      mutate([&](Project p) {
        p = commands::tag_threat(std::move(p), a_.id, parse_stride_list(a_.stride));
        ctx_.emit(persistence::encode(*p.find_threat(a_.id)), "tagged " + a_.id + "\n");
        return p;
      });
    });
    tag->add_option("threat", a_.id, "Threat id")->required();
    tag->add_option("stride", a_.stride, "STRIDE letters, e.g. T,E")->delimiter(',')->required();

    auto* link = leaf(s, "link", "Link a threat to assets and attack points", [this] {
      mutate([&](Project p) {
        p = commands::link_threat(std::move(p), a_.id, a_.assets, a_.points);
        ctx_.emit(persistence::encode(*p.find_threat(a_.id)), "linked " + a_.id + "\n");
        return p;
      });
    });
    link->add_option("threat", a_.id, "Threat id")->required();
    link->add_option("--assets", a_.assets, "Asset ids")->delimiter(',');
    link->add_option("--points", a_.points, "Attack point ids")->delimiter(',');

    auto* mitigate = leaf(s, "mitigate", "Mark a threat as mitigated", [this] {
      mutate([&](Project p) {
        p = commands::set_mitigated(std::move(p), a_.id, !a_.undo);
        ctx_.emit(persistence::encode(*p.find_threat(a_.id)),
                  (a_.undo ? "unmitigated " : "mitigated ") + a_.id + "\n");
        return p;
      });
    });
    mitigate->add_option("threat", a_.id, "Threat id")->required();
    mitigate->add_flag("--undo", a_.undo, "Clear the mitigated flag");

    leaf(s, "list", "List threats", [this] {
      const auto p = ctx_.load();
      std::vector<std::vector<std::string>> rows;
      for (const auto& x : p.threats)
        rows.push_back({x.id, stride_letters(x.stride), x.mitigated ? "mitigated" : "-",
                        text::join(x.asset_refs, ","), x.title});
      ctx_.emit(encode_all(p.threats), table(rows));
    });
    add_rm(s, "threat");
  }

  void build_risk() {
    auto* s = group("risk", "Risk evaluation and prioritization (step 7)");
    auto* set = leaf(s, "set", "Assess a threat", [this] {
      if (a_.dread.empty() == a_.simple.empty()) throw UsageError("give exactly one of --dread or --simple");
      mutate([&](Project p) {
        RiskAssessment r;
        if (!a_.dread.empty()) {
          auto v = parse_ints(a_.dread, 5, "--dread");
          r = risk::assess_dread(a_.id, DreadComponents::from_array({v[0], v[1], v[2], v[3], v[4]}));
        } else {
          auto v = parse_ints(a_.simple, 2, "--simple");
          r = risk::assess_simple(a_.id, v[0], v[1]);
        }
        p = commands::set_risk(std::move(p), r);
        ctx_.emit(persistence::encode(*p.find_assessment(a_.id)),
                  a_.id + " " + risk::format_tenths(r.score_tenths) + " " + std::string(to_string(r.band)) + "\n");
        return p;
      });
    });
    set->add_option("threat", a_.id, "Threat id")->required();
    set->add_option("--dread", a_.dread, "Damage,Reproducibility,Exploitability,Affected users,Discoverability (0..10)");
    set->add_option("--simple", a_.simple, "Probability,Damage potential (1..10)");

    leaf(s, "rank", "Threats in priority order", [this] {
      const auto p = ctx_.load();
      ctx_.emit(views::ranking(p), ranking_text(p));
    });

    auto* ex = leaf(s, "exclude", "Exclude a threat from requirement coverage", [this] {
      if (!a_.undo && text::trim(a_.note).empty()) throw UsageError("--rationale is required when excluding");
      mutate([&](Project p) {
        p = commands::exclude(std::move(p), a_.id, !a_.undo, a_.note);
        ctx_.emit(persistence::encode(*p.find_assessment(a_.id)),
                  (a_.undo ? "included " : "excluded ") + a_.id + "\n");
        return p;
      });
    });
    ex->add_option("threat", a_.id, "Threat id")->required();
    ex->add_option("--rationale", a_.note, "Why the threat needs no requirement");
    ex->add_flag("--undo", a_.undo, "Include the threat again");
  }

  void build_elicit() {
    auto* cmd = leaf(&app_, "elicit", "Create requirements from a catalog (step 8)", [this] {
      const auto cat = catalog::load_catalog(a_.catalog);
      mutate([&](Project p) {
        auto result = commands::elicit(std::move(p), cat);
        std::string text;
        for (const auto& id : result.created) {
          const auto* r = result.project.find_requirement(id);
          text += id + "  " + text::join(r->threat_refs, ",") + "  " + r->text + "\n";
        }
        for (const auto& t : result.manual_entry) text += "no catalog match for " + t + "; add a requirement manually\n";
        if (text.empty()) text = "nothing to elicit\n";
        ctx_.emit(views::elicitation(result), text);
        return std::move(result.project);
      });
    });
    cmd->add_option("--catalog", a_.catalog, "Catalog file")->required();
  }

  void build_req() {
    auto* s = group("req", "Security requirements (steps 8 and 9)");
    auto* add = leaf(s, "add", "Add a requirement by hand", [this] {
      mutate([&](Project p) {
        SecurityRequirement r{a_.id.empty() ? next_id("SR", p.requirements) : a_.id, a_.text, a_.threats,
                              std::nullopt};
        p = commands::add(std::move(p), r);
        ctx_.emit(persistence::encode(r), "added " + r.id + "\n");
        return p;
      });
    });
    add->add_option("text", a_.text, "Requirement text")->required();
    add->add_option("--id", a_.id, "Requirement id (default: next SR<n>)");
    add->add_option("--threats", a_.threats, "Threat ids")->delimiter(',')->required();

    auto* validate = leaf(s, "validate", "Record a reviewer's verdict", [this] {
      mutate([&](Project p) {
        ValidationRecord v{a_.id, a_.second,
                           parse_value<ValidationVerdict>(a_.verdict, parse_validation_verdict, "verdict"),
                           a_.note.empty() ? std::nullopt : std::optional(a_.note)};
        p = commands::record_validation(std::move(p), v);
        ctx_.emit(persistence::encode(v), std::string(to_string(v.verdict)) + " " + v.requirement_id + " by " +
                                              v.reviewer + "\n");
        return p;
      });
    });
    validate->add_option("requirement", a_.id, "Requirement id")->required();
    validate->add_option("reviewer", a_.second, "Reviewing stakeholder id")->required();
    validate->add_option("--verdict", a_.verdict, "accepted|rejected|needs-rework")->capture_default_str();
    validate->add_option("--rationale", a_.note, "Reviewer comment");

    leaf(s, "list", "List requirements", [this] {
      const auto p = ctx_.load();
      std::vector<std::vector<std::string>> rows;
      for (const auto& x : p.requirements)
        rows.push_back({x.id, text::join(x.threat_refs, ","),
                        std::string(to_string(requirement_outcome(p, x.id))), x.text});
      auto j = encode_all(p.requirements);
      for (auto& item : j)
        item["outcome"] = std::string(to_string(requirement_outcome(p, item["id"].get<std::string>())));
      ctx_.emit(j, table(rows));
    });
    add_rm(s, "requirement");
  }

  void build_step() {
    auto* s = group("step", "Workflow steps");
    leaf(s, "status", "Status of all ten steps", [this] {
      const auto p = ctx_.load();
      ctx_.emit(views::workflow(p), workflow_text(p));
    });
    auto* complete = leaf(s, "complete", "Complete the current step", [this] {
      mutate([&](Project p) {
        p = workflow::complete_step(std::move(p), a_.step);
        ctx_.emit(views::workflow(p), "step " + std::to_string(a_.step) + " Complete\n");
        return p;
      });
    });
    complete->add_option("step", a_.step, "Step number")->required();
    auto* reopen = leaf(s, "reopen", "Reopen a completed step", [this] {
      mutate([&](Project p) {
        p = workflow::reopen_step(std::move(p), a_.step);
        ctx_.emit(views::workflow(p), "step " + std::to_string(a_.step) + " InProgress\n");
        return p;
      });
    });
    reopen->add_option("step", a_.step, "Step number")->required();
    auto* checks = leaf(s, "checks", "Exit checks of a step (default: current step)", [this] {
      const auto p = ctx_.load();
      const int step = a_.step > 0 ? a_.step : workflow::current_step(p);
      const auto c = workflow::exit_checks(p, step);
      ctx_.emit(views::exit_checks(c), checks_text(c));
    });
    checks->add_option("step", a_.step, "Step number");
  }

  void build_report() {
    auto* s = group("report", "Traceability and analysis reports");
    leaf(s, "coverage", "Traceability gaps", [this] {
      const auto r = analysis::coverage_report(ctx_.load());
      std::string text = list_line("assets without threats", r.assets_without_threats) +
                         list_line("threats without attack points", r.threats_without_points) +
                         list_line("threats without requirements", r.threats_without_requirements) +
                         list_line("unvalidated requirements", r.unvalidated_requirements) +
                         list_line("orphan attack points", r.orphan_points) +
                         (r.fully_traced() ? "fully traced\n" : "");
      ctx_.emit(views::coverage(r), text);
    });
    leaf(s, "surface", "Attack points per kind", [this] {
      const auto p = ctx_.load();
      const auto r = analysis::surface_summary(p);
      std::string text;
      for (PointKind k : kAllPointKinds) {
        const bool declared = p.none_declared.count(k) > 0;
        text += std::string(to_string(k)) + " " + std::to_string(r.count(k)) +
                (r.count(k) ? ": " + text::join(r.ids(k), ", ") : declared ? " (declared none)" : "") + "\n";
      }
      ctx_.emit(views::surface(r), text);
    });
    leaf(s, "cia", "Assets per security facet and priority", [this] {
      const auto r = analysis::cia_summary(ctx_.load());
      std::string text;
      for (const auto& [f, n] : r.per_facet) text += std::string(cia_name(f)) + " " + std::to_string(n) + "\n";
      for (AssetPriority pr : {AssetPriority::High, AssetPriority::Medium, AssetPriority::Low})
        text += std::string(to_string(pr)) + " " + std::to_string(r.per_priority.at(pr)) + "\n";
      ctx_.emit(views::cia(r), text);
    });
  }

  void build_doc() {
    auto* s = group("doc", "Documents and exports");
    auto* srs = leaf(s, "srs", "Generate the SRS document (step 10)", [this] {
      const auto path = a_.out.empty() ? default_srs_path(ctx_.project_path) : a_.out;
      mutate([&](Project p) {
        auto result = commands::generate_srs(std::move(p), a_.generated_at.empty() ? docgen::utc_timestamp() : a_.generated_at,
                                             path);
        write_file(path, result.document.render());
        auto j = views::srs(result.document);
        j.erase("markdown");
        j["path"] = path;
        ctx_.emit(j, "wrote " + path + "\nchecksum " + result.document.checksum + "\n");
        return std::move(result.project);
      });
    });
    srs->add_option("--out", a_.out, "Output Markdown file (default: next to the project file)");
    srs->add_option("--generated-at", a_.generated_at, "Timestamp to record instead of the current time");

    auto* exp = leaf(s, "export", "Export a table as CSV", [this] {
      const auto kind = docgen::parse_export_kind(a_.kind);
      if (!kind) throw UsageError("unknown export kind '" + a_.kind + "'");
      const auto csv = docgen::export_table(ctx_.load(), *kind);
      if (!a_.out.empty()) {
        write_file(a_.out, csv);
        ctx_.emit(json{{"path", a_.out}}, "wrote " + a_.out + "\n");
      } else {
        ctx_.out << csv;
      }
    });
    exp->add_option("kind", a_.kind, "goals|stakeholders|assets|points|threats|risk|requirements")->required();
    exp->add_option("--out", a_.out, "Output file (default: stdout)");
  }

  void build_suggest() {
    auto* s = group("suggest", "Advisory suggestions (never applied automatically)");
    auto* stride = leaf(s, "stride", "STRIDE categories for a threat text", [this] {
      const auto tags = analysis::stride_suggest(a_.text, "");
      std::string text;
      for (Stride t : tags) text += std::string(1, stride_letter(t)) + "  " + std::string(stride_name(t)) + "\n";
      ctx_.emit(views::stride(tags), text.empty() ? "no suggestion\n" : text);
    });
    stride->add_option("text", a_.text, "Threat title and description")->required();

    auto* req = leaf(s, "req", "Catalog entries matching a threat", [this] {
      const auto p = ctx_.load();
      const auto* t = p.find_threat(a_.id);
      if (!t) throw Error(ErrorCode::NotFound, "no threat " + a_.id, {{"id", a_.id}});
      const auto cat = catalog::load_catalog(a_.catalog);
      const auto found = catalog::suggest(*t, cat, a_.limit);
      std::vector<std::vector<std::string>> rows;
      for (const auto& x : found)
        rows.push_back({std::to_string(x.rank), x.entry_id, std::to_string(x.score), cat.find(x.entry_id)->requirement_text});
      ctx_.emit(views::suggestions(found, cat), rows.empty() ? "no catalog entry matches\n" : table(rows));
    });
    req->add_option("threat", a_.id, "Threat id")->required();
    req->add_option("--catalog", a_.catalog, "Catalog file")->required();
    req->add_option("--limit", a_.limit, "Maximum number of suggestions")->capture_default_str();
  }

  void add_rm(CLI::App* parent, const std::string& noun) {
    auto* rm = leaf(parent, "rm", "Remove a " + noun, [this] { remove_entity_by_id(); });
    rm->add_option("id", a_.id, "Id to remove")->required();
  }

  void build_rm() {
    auto* rm = leaf(&app_, "rm", "Remove any entity by id", [this] { remove_entity_by_id(); });
    rm->add_option("id", a_.id, "Id to remove")->required();
  }

  void remove_entity_by_id() {
    mutate([&](Project p) {
      p = commands::remove(std::move(p), a_.id);
      ctx_.emit(json{{"removed", a_.id}}, "removed " + a_.id + "\n");
      return p;
    });
  }

  void build_serve() {
    auto* cmd = leaf(&app_, "serve", "Serve the HTTP JSON API", [this] {
      std::optional<catalog::Catalog> cat;
      if (!a_.catalog.empty()) cat = catalog::load_catalog(a_.catalog);
      api::Service service(ctx_.project_path, std::move(cat));
      std::optional<fs::path> ui;
      if (!a_.out.empty()) ui = a_.out;
      api::HttpServer server(service, ui);
      const int port = server.bind(a_.bind);
      std::cerr << "serving " << ctx_.project_path << " on port " << port << std::endl;
      server.run();
    });
    cmd->add_option("--bind", a_.bind, "host:port")->capture_default_str();
    cmd->add_option("--catalog", a_.catalog, "Catalog for /elicit and /suggest/requirements");
    cmd->add_option("--ui", a_.out, "Directory of static web UI files served under /");
  }

  // Every argument any subcommand takes; only one subcommand runs per call.
  struct Args {
    std::string id, second, name, text, description, note, kind, catalog, out, generated_at;
    std::string source = "interview", group = "other", priority, verdict = "accepted";
    std::string dread, simple, bind = "127.0.0.1:8080";
    std::vector<std::string> cia, identified_by, stride, assets, points, threats;
    bool force = false, object = false, mitigated = false, undo = false;
    int step = 0, limit = 5;
  };

  CLI::App app_;
  Context ctx_;
  Args a_;
  std::function<void()> action_;
};

}  // namespace

Result dispatch(const std::vector<std::string>& args) {
  Cli cli;
  return cli.run(args);
}

Result replay(const std::vector<script::Command>& commands, const std::string& project_path) {
  Result total;
  for (const auto& command : commands) {
    std::vector<std::string> args = {"--project", project_path};
    args.insert(args.end(), command.args.begin(), command.args.end());
    auto r = dispatch(args);
    total.out += r.out;
    total.err += r.err;
    if (r.exit_code != 0) {
      total.exit_code = r.exit_code;
      total.err += "script line " + std::to_string(command.line) + " failed\n";
      return total;
    }
  }
  return total;
}

}  // namespace store::cli

#include "support.hpp"

#include <stdexcept>

#include "store/commands.hpp"
#include "store/risk.hpp"

namespace testing {

using namespace store;

Project minimal_project(int steps) {
  auto p = fresh("minimal");
  auto stage = [&](int step, auto&& fill) {
    if (step > steps) return;
    fill();
    p = workflow::complete_step(std::move(p), step);
  };
  stage(1, [&] { p = add_entity(std::move(p), Goal{"G1", "Protect the web server", GoalSource::Interview}); });
  stage(2, [&] {
    p = add_entity(std::move(p), Stakeholder{"SH1", "Owner", StakeholderGroup::Managerial,
                                             StakeholderPriority::Critical});
  });
  stage(3, [&] { p = add_entity(std::move(p), Agreement{"G1", "SH1", AgreementVerdict::Agreed, std::nullopt}); });
  stage(4, [&] { p = add_entity(std::move(p), asset("A1")); });
  stage(5, [&] {
    p = add_entity(std::move(p), AttackPoint{"PA1", PointKind::PoA, "Login page", ""});
    p = add_entity(std::move(p), AttackPoint{"PB1", PointKind::PoB, "Remote user", ""});
    p = commands::declare_no_points(std::move(p), PointKind::PoC);
    p = commands::declare_no_points(std::move(p), PointKind::PoD);
  });
  stage(6, [&] {
    auto t = threat("T1", "Tampering with records", "The attacker modifies records.", {Stride::Tampering});
    t.point_refs = {"PA1"};
    p = add_entity(std::move(p), t);
  });
  stage(7, [&] { p = risk::set_assessment(std::move(p), risk::assess_dread("T1", {8, 8, 8, 8, 8})); });
  stage(8, [&] {
    p = add_entity(std::move(p), SecurityRequirement{"SR1", "Validate every record change", {"T1"}, std::nullopt});
  });
  stage(9, [&] {
    p = add_entity(std::move(p), ValidationRecord{"SR1", "SH1", ValidationVerdict::Accepted, std::nullopt});
  });
  stage(10, [&] { p = docgen::generate_srs(std::move(p), "2000-01-01T00:00:00Z", "minimal.srs.md").project; });
  return p;
}

namespace {

std::string random_text(std::mt19937& rng, bool nonempty) {
  static const std::vector<std::string> pieces = {
      "a", "b", "z", "Q", "0", "9", " ", ",", "\"", "'", "|", "\n", "\t", "\\", "é", "✓", "SQL", "admin", "#", "$"};
  std::uniform_int_distribution<int> len(nonempty ? 1 : 0, 12);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::string out;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) out += pieces[pick(rng)];
  if (nonempty) out = "x" + out;  // never blank after trimming
  return out;
}

template <typename T>
const T& choose(std::mt19937& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool coin(std::mt19937& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

int between(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <typename T>
std::vector<std::string> sample_ids(std::mt19937& rng, const std::vector<T>& items, int at_least) {
  std::vector<std::string> out;
  for (const auto& x : items)
    if (coin(rng, 0.3)) out.push_back(x.id);
  while (static_cast<int>(out.size()) < at_least && !items.empty()) {
    const auto& id = choose(rng, items).id;
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  }
  return out;
}

}  // namespace

Project random_project(std::mt19937& rng) {
  Project p = new_project(random_text(rng, true), generate_project_id());
  p.default_method = coin(rng) ? RiskMethod::Dread : RiskMethod::SimpleRisk;

  for (int i = 1, n = between(rng, 0, 5); i <= n; ++i)
    p.goals.push_back({"G" + std::to_string(i), random_text(rng, true),
                       static_cast<GoalSource>(between(rng, 0, 3))});
  for (int i = 1, n = between(rng, 0, 5); i <= n; ++i)
    p.stakeholders.push_back({coin(rng) ? "SH" + std::to_string(i) : "reviewer-" + std::to_string(i),
                              random_text(rng, false), static_cast<StakeholderGroup>(between(rng, 0, 3)),
                              static_cast<StakeholderPriority>(between(rng, 0, 2))});
  for (const auto& g : p.goals)
    for (const auto& s : p.stakeholders)
      if (coin(rng, 0.4))
        p.agreements.push_back({g.id, s.id, coin(rng, 0.8) ? AgreementVerdict::Agreed : AgreementVerdict::Objected,
                                coin(rng) ? std::optional(random_text(rng, false)) : std::nullopt});
  for (int i = 1, n = between(rng, 0, 6); i <= n; ++i) {
    CiaSet cia;
    for (CiaFacet f : kAllCia)
      if (coin(rng)) cia.insert(f);
    if (cia.empty()) cia.insert(CiaFacet::Integrity);
    p.assets.push_back({"A" + std::to_string(i), random_text(rng, false), random_text(rng, false), cia,
                        static_cast<AssetPriority>(between(rng, 0, 2)), sample_ids(rng, p.stakeholders, 0)});
  }
  for (PointKind kind : kAllPointKinds) {
    const int n = between(rng, 0, 3);
    for (int i = 1; i <= n; ++i)
      p.attack_points.push_back({std::string(point_prefix(kind)) + std::to_string(i), kind,
                                 random_text(rng, false), random_text(rng, false)});
    if (n == 0 && (kind == PointKind::PoC || kind == PointKind::PoD) && coin(rng)) p.none_declared.insert(kind);
  }
  if (!p.assets.empty()) {
    for (int i = 1, n = between(rng, 0, 6); i <= n; ++i) {
      StrideSet stride;
      for (Stride s : kAllStride)
        if (coin(rng, 0.3)) stride.insert(s);
      if (stride.empty()) stride.insert(choose(rng, std::vector<Stride>(kAllStride.begin(), kAllStride.end())));
      p.threats.push_back({"T" + std::to_string(i), random_text(rng, true), random_text(rng, false), stride,
                           sample_ids(rng, p.assets, 1), sample_ids(rng, p.attack_points, 0), coin(rng)});
    }
  }
  for (const auto& t : p.threats) {
    if (!coin(rng, 0.8)) continue;
    RiskAssessment r = coin(rng)
                           ? risk::assess_dread(t.id, {between(rng, 0, 10), between(rng, 0, 10), between(rng, 0, 10),
                                                       between(rng, 0, 10), between(rng, 0, 10)})
                           : risk::assess_simple(t.id, between(rng, 1, 10), between(rng, 1, 10));
    if (coin(rng, 0.2)) {
      r.excluded = true;
      if (coin(rng)) r.exclusion_rationale = random_text(rng, true);
    }
    p.assessments.push_back(r);
  }
  if (!p.threats.empty()) {
    for (int i = 1, n = between(rng, 0, 5); i <= n; ++i)
      p.requirements.push_back({"SR" + std::to_string(i), random_text(rng, true), sample_ids(rng, p.threats, 1),
                                coin(rng) ? std::optional("entry-" + std::to_string(i)) : std::nullopt});
  }
  for (const auto& r : p.requirements)
    for (const auto& s : p.stakeholders)
      if (coin(rng, 0.4))
        p.validations.push_back({r.id, s.id, static_cast<ValidationVerdict>(between(rng, 0, 2)),
                                 coin(rng) ? std::optional(random_text(rng, false)) : std::nullopt});
  if (coin(rng, 0.3)) p.srs_record = SrsRecord{"2024-05-06T07:08:09Z", std::string(64, 'a'), random_text(rng, true)};

  // Any state reachable by complete/reopen: a Complete prefix, then either
  // the current step or a reopened step followed by Stale steps.
  const int complete = between(rng, 0, kStepCount);
  for (int step = 1; step <= kStepCount; ++step)
    p.step_states[step - 1].status = step <= complete ? StepStatus::Complete : StepStatus::Locked;
  if (complete < kStepCount) p.step_states[complete].status = StepStatus::InProgress;
  if (complete > 1 && coin(rng, 0.3)) {
    const int reopened = between(rng, 1, complete);
    p = workflow::reopen_step(std::move(p), reopened);
  }
  return p;
}

cli::Result replay_erp(const fs::path& project_path, const std::string& stop_before) {
  auto commands = script::parse(read_file(erp_script_path()), {{"CATALOG", erp_catalog_path().string()}});
  if (!stop_before.empty()) {
    for (auto it = commands.begin(); it != commands.end(); ++it) {
      std::string joined;
      for (const auto& a : it->args) joined += (joined.empty() ? "" : " ") + a;
      if (joined.rfind(stop_before, 0) == 0) {
        commands.erase(it, commands.end());
        break;
      }
    }
  }
  return cli::replay(commands, project_path.string());
}

Project erp_validated() {
  static const Project cached = [] {
    TempDir dir;
    const auto path = dir / "erp.store.json";
    const auto result = replay_erp(path, "doc srs");
    if (result.exit_code != 0) throw std::runtime_error("ERP replay failed: " + result.err);
    return persistence::load(path);
  }();
  return cached;
}

}  // namespace testing

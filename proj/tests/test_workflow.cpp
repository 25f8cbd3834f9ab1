#include "doctest.h"
#include "store/commands.hpp"
#include "store/risk.hpp"
#include "support.hpp"

using namespace store;
using testing::error_of;

namespace {

std::vector<StepStatus> statuses(const Project& p) {
  std::vector<StepStatus> out;
  for (int s = 1; s <= kStepCount; ++s) out.push_back(workflow::status_of(p, s));
  return out;
}

const workflow::ExitCheck* find_check(const std::vector<workflow::ExitCheck>& checks, const std::string& rule) {
  for (const auto& c : checks)
    if (c.rule_id == rule) return &c;
  return nullptr;
}

}  // namespace

TEST_SUITE("workflow_engine") {

TEST_CASE("current_step") {
  CHECK(workflow::current_step(testing::fresh()) == 1);
  CHECK(workflow::current_step(testing::erp_project()) == 8);
  CHECK(workflow::current_step(testing::minimal_project(10)) == 10);
}

TEST_CASE("step information names the ten steps") {
  CHECK(workflow::step_info(1).name == "Identify System Goals");
  CHECK(workflow::step_info(7).name == "Risk Evaluation and Prioritization");
  CHECK(workflow::step_info(10).name == "Security Requirements Specification Document");
  CHECK(error_of([] { workflow::step_info(0); }) == ErrorCode::StepOutOfRange);
  CHECK(error_of([] { workflow::step_info(11); }) == ErrorCode::StepOutOfRange);
}

TEST_CASE("exit checks") {
  SUBCASE("step 1 on a fresh project") {
    const auto checks = workflow::exit_checks(testing::fresh(), 1);
    REQUIRE(checks.size() == 1);
    CHECK(checks[0].rule_id == "goals-nonempty");
    CHECK_FALSE(checks[0].satisfied);
  }
  SUBCASE("step 7 on the ERP fixture") {
    for (const auto& c : workflow::exit_checks(testing::erp_project(), 7)) CHECK(c.satisfied);
  }
  SUBCASE("step 3 with a critical stakeholder missing agreement on G5") {
    auto p = testing::minimal_project(2);
    for (int i = 2; i <= 5; ++i)
      p = add_entity(std::move(p), Goal{"G" + std::to_string(i), "goal", GoalSource::Interview});
    for (int i = 1; i <= 4; ++i)
      p = add_entity(std::move(p), Agreement{"G" + std::to_string(i), "SH1", AgreementVerdict::Agreed, std::nullopt});
    const auto* c = find_check(workflow::exit_checks(p, 3), "goals-agreed-by-critical");
    REQUIRE(c);
    CHECK_FALSE(c->satisfied);
    CHECK(c->details.find("(G5, SH1)") != std::string::npos);
  }
  SUBCASE("an objection blocks step 3 until replaced") {
    auto p = testing::minimal_project(2);
    p = commands::record_agreement(std::move(p), {"G1", "SH1", AgreementVerdict::Objected, "needs rewording"});
    CHECK(error_of([&] { workflow::complete_step(p, 3); }) == ErrorCode::ExitChecksFailed);
    p = commands::record_agreement(std::move(p), {"G1", "SH1", AgreementVerdict::Agreed, std::nullopt});
    CHECK(workflow::status_of(workflow::complete_step(p, 3), 3) == StepStatus::Complete);
  }
  SUBCASE("step 5 needs PoA, PoB and a decision on PoC and PoD") {
    auto p = testing::minimal_project(4);
    auto failed = [&](const Project& q) {
      std::vector<std::string> out;
      for (const auto& c : workflow::exit_checks(q, 5))
        if (!c.satisfied) out.push_back(c.rule_id);
      return out;
    };
    CHECK(failed(p) == std::vector<std::string>{"poa-nonempty", "pob-nonempty", "poc-declared", "pod-declared"});
    p = add_entity(std::move(p), AttackPoint{"PA1", PointKind::PoA, "port", ""});
    p = add_entity(std::move(p), AttackPoint{"PB1", PointKind::PoB, "user", ""});
    p = add_entity(std::move(p), AttackPoint{"PC1", PointKind::PoC, "payments", ""});
    p = commands::declare_no_points(std::move(p), PointKind::PoD);
    CHECK(failed(p).empty());
    CHECK(error_of([&] { commands::declare_no_points(p, PointKind::PoA); }) == ErrorCode::InvariantViolation);
    CHECK(error_of([&] { commands::declare_no_points(p, PointKind::PoC); }) == ErrorCode::InvariantViolation);
  }
  SUBCASE("step 9 needs every requirement reviewed and one accepted") {
    auto p = testing::minimal_project(8);
    p = add_entity(std::move(p), ValidationRecord{"SR1", "SH1", ValidationVerdict::Rejected, "too vague"});
    const auto checks = workflow::exit_checks(p, 9);
    CHECK(find_check(checks, "requirements-validated")->satisfied);
    CHECK_FALSE(find_check(checks, "requirement-accepted")->satisfied);
  }
  SUBCASE("step 10 detects a document that no longer matches the project") {
    auto p = testing::minimal_project(10);
    for (const auto& c : workflow::exit_checks(p, 10)) CHECK(c.satisfied);
    p.goals[0].description = "changed after generation";
    CHECK_FALSE(find_check(workflow::exit_checks(p, 10), "srs-checksum-current")->satisfied);
  }
}

TEST_CASE("complete_step") {
  SUBCASE("step 1 with the seven ERP goals") {
    auto p = testing::fresh();
    for (int i = 1; i <= 7; ++i)
      p = add_entity(std::move(p), Goal{"G" + std::to_string(i), "goal " + std::to_string(i), GoalSource::Interview});
    p = workflow::complete_step(std::move(p), 1);
    CHECK(workflow::status_of(p, 1) == StepStatus::Complete);
    CHECK(workflow::status_of(p, 2) == StepStatus::InProgress);
  }
  SUBCASE("skipping ahead") {
    auto p = testing::minimal_project(2);
    CHECK(error_of([&] { workflow::complete_step(p, 5); }) == ErrorCode::StepNotCurrent);
    CHECK(error_of([&] { workflow::complete_step(p, 2); }) == ErrorCode::StepNotCurrent);
    CHECK(error_of([&] { workflow::complete_step(p, 11); }) == ErrorCode::StepOutOfRange);
  }
  SUBCASE("untagged threat") {
    auto p = testing::minimal_project(5);
    p.threats.push_back(testing::threat("T1", "x", "y", {}));
    try {
      workflow::complete_step(p, 6);
      FAIL("expected ExitChecksFailed");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ExitChecksFailed);
      CHECK(e.details()["failed"] == nlohmann::json::array({"threats-stride-nonempty"}));
    }
  }
  SUBCASE("all ten steps") {
    const auto p = testing::minimal_project(10);
    for (auto s : statuses(p)) CHECK(s == StepStatus::Complete);
    CHECK(error_of([&] { workflow::complete_step(p, 10); }) == ErrorCode::StepNotCurrent);
  }
}

TEST_CASE("reopen_step") {
  SUBCASE("step 4 after step 10") {
    const auto p = workflow::reopen_step(testing::minimal_project(10), 4);
    const auto s = statuses(p);
    for (int i = 0; i < 3; ++i) CHECK(s[i] == StepStatus::Complete);
    CHECK(s[3] == StepStatus::InProgress);
    for (int i = 4; i < 10; ++i) CHECK(s[i] == StepStatus::Stale);
    CHECK(workflow::step_state_violations(p).empty());
  }
  SUBCASE("step 10") {
    const auto s = statuses(workflow::reopen_step(testing::minimal_project(10), 10));
    for (int i = 0; i < 9; ++i) CHECK(s[i] == StepStatus::Complete);
    CHECK(s[9] == StepStatus::InProgress);
  }
  SUBCASE("locked step") {
    CHECK(error_of([] { workflow::reopen_step(testing::fresh(), 9); }) == ErrorCode::StepNotStarted);
  }
  SUBCASE("reopening while a later step is in progress locks it again") {
    const auto p = workflow::reopen_step(testing::minimal_project(3), 2);
    CHECK(workflow::status_of(p, 2) == StepStatus::InProgress);
    CHECK(workflow::status_of(p, 3) == StepStatus::Stale);
    CHECK(workflow::status_of(p, 4) == StepStatus::Locked);
    CHECK(workflow::step_state_violations(p).empty());
  }
  SUBCASE("stale steps are re-completed in order") {
    auto p = workflow::reopen_step(testing::minimal_project(10), 4);
    CHECK(error_of([&] { workflow::reopen_step(p, 6); }) == ErrorCode::StepNotCurrent);
    CHECK(error_of([&] { workflow::complete_step(p, 6); }) == ErrorCode::StepNotCurrent);
    for (int step = 4; step <= 9; ++step) p = workflow::complete_step(std::move(p), step);
    // Step 10 is InProgress again; its recorded document is still current.
    CHECK(workflow::status_of(p, 10) == StepStatus::InProgress);
    p = workflow::complete_step(std::move(p), 10);
    CHECK(workflow::current_step(p) == 10);
  }
}

TEST_CASE("mutation_step_of") {
  CHECK(workflow::mutation_step_of(EntityKind::Goal) == 1);
  CHECK(workflow::mutation_step_of(EntityKind::Asset) == 4);
  CHECK(workflow::mutation_step_of(EntityKind::RiskAssessment) == 7);
  CHECK(workflow::mutation_step_of(EntityKind::SrsRecord) == 10);
}

TEST_CASE("mutating a completed step's artifact reopens it") {
  auto p = testing::minimal_project(10);
  p = commands::add(std::move(p), testing::asset("A2"));
  CHECK(workflow::status_of(p, 3) == StepStatus::Complete);
  CHECK(workflow::status_of(p, 4) == StepStatus::InProgress);
  for (int s = 5; s <= 10; ++s) CHECK(workflow::status_of(p, s) == StepStatus::Stale);

  SUBCASE("drafting ahead does not touch later steps") {
    auto q = testing::minimal_project(2);
    q = commands::add(std::move(q), testing::asset("A9"));
    CHECK(workflow::status_of(q, 3) == StepStatus::InProgress);
    CHECK(workflow::status_of(q, 4) == StepStatus::Locked);
  }
  SUBCASE("a no-op change leaves steps alone") {
    auto q = testing::minimal_project(10);
    q = commands::set_mitigated(std::move(q), "T1", false);
    q = commands::set_risk(std::move(q), risk::assess_dread("T1", {8, 8, 8, 8, 8}));
    CHECK(workflow::current_step(q) == 10);
    CHECK(workflow::status_of(q, 10) == StepStatus::Complete);
  }
}

}

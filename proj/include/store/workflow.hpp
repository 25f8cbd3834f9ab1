#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "store/model.hpp"

namespace store::workflow {

struct ExitCheck {
  int step = 1;
  std::string rule_id;
  std::string description;
  bool satisfied = false;
  std::string details;
};

struct StepInfo {
  std::string_view name;
  std::string_view taking_in;
  std::string_view approach;
  std::string_view participants;
  std::string_view taking_out;
};

// Throws StepOutOfRange outside 1..10.
const StepInfo& step_info(int step);

StepStatus status_of(const Project& project, int step);

// Lowest step that is not Complete; 10 when every step is Complete.
int current_step(const Project& project);

std::vector<ExitCheck> exit_checks(const Project& project, int step);

// Marks `step` Complete and moves the next step to InProgress.
Project complete_step(Project project, int step);

// Reopens a Complete step; every later Complete step becomes Stale and any
// later InProgress step goes back to Locked.
Project reopen_step(Project project, int step);

// Step whose output the given kind of artifact is.
int mutation_step_of(EntityKind kind);

// Applied after an entity of `kind` was mutated: reopens its step when that
// step is already Complete.
Project touch(Project project, EntityKind kind);

// True when the StepState rules hold (exactly one entry per step, step 1 not
// Locked, prefix rule for InProgress/Complete steps).
std::vector<Violation> step_state_violations(const Project& project);

}  // namespace store::workflow

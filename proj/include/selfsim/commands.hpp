#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "selfsim/automaton.hpp"
#include "selfsim/problem.hpp"

namespace selfsim {

struct CommandOutput {
  int exit_code = 0;  // 0 ok, 1 a requested check failed
  std::string text;
  std::string dot;
  std::string csv;
};

CommandOutput run_act(const ProblemSpec& spec, std::string_view element, std::string_view word);
CommandOutput run_state(const ProblemSpec& spec, std::string_view element, std::string_view word);
/// `seeds` are element names or coordinate lists.
CommandOutput run_automaton(const ProblemSpec& spec, const std::vector<std::string>& seeds, ExplorationBounds bounds);
CommandOutput run_recursion(const ProblemSpec& spec, const std::vector<std::string>& elements);
CommandOutput run_classify(const ProblemSpec& spec, bool json);
/// mode "finite" or "nonfinite"; the nonfinite construction starts from the
/// document's digits (or the finite construction when there are none).
CommandOutput run_digits(const ProblemSpec& spec, std::string_view mode, long k);
CommandOutput run_schreier(const ProblemSpec& spec, std::size_t level, std::string_view basepoint, bool want_dot = false);

struct ReproductionCheck {
  std::string name;
  bool passed;
  std::string detail;
};

/// The bundled Heisenberg and odometer reproduction suite.
std::vector<ReproductionCheck> reproduction_checks();
CommandOutput run_reproduction_suite();

ProblemSpec bundled_problem(std::string_view name);  // "heisenberg" or "odometer"

}  // namespace selfsim

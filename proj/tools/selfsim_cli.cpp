#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "selfsim/selfsim.h"

namespace {

int exit_code(selfsim_status s) {
  switch (s) {
    case SELFSIM_OK:
      return 0;
    case SELFSIM_CHECK_FAILED:
    case SELFSIM_ERR_UNSUPPORTED:
    case SELFSIM_ERR_NO_FIXED_ELEMENT:
    case SELFSIM_ERR_SEARCH_EXHAUSTED:
    case SELFSIM_ERR_INVALID_K:
    case SELFSIM_ERR_RESOURCE_CAP:
    case SELFSIM_ERR_INSUFFICIENT_RANGE:
      return 1;
    case SELFSIM_ERR_INTERNAL:
      return 3;
    default:
      return 2;
  }
}

bool write_file(const std::string& path, const char* content) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    return false;
  }
  if (content) out << content;
  return true;
}

struct Problem {
  selfsim_problem* handle = nullptr;
  ~Problem() { selfsim_problem_free(handle); }
};

// "bundled:heisenberg" selects a shipped fixture, anything else is a path.
selfsim_status load(const std::string& spec, Problem& p) {
  const std::string prefix = "bundled:";
  if (spec.rfind(prefix, 0) == 0) return selfsim_problem_load_bundled(spec.substr(prefix.size()).c_str(), &p.handle);
  return selfsim_problem_load_file(spec.c_str(), &p.handle);
}

int finish(selfsim_status s, selfsim_output& out, const std::string& dot_path = "", const std::string& csv_path = "") {
  if (s != SELFSIM_OK && s != SELFSIM_CHECK_FAILED) {
    std::cerr << "error: " << selfsim_last_error() << "\n";
    return exit_code(s);
  }
  if (out.text) std::cout << out.text;
  bool ok = true;
  if (!dot_path.empty()) ok = write_file(dot_path, out.dot) && ok;
  if (!csv_path.empty()) ok = write_file(csv_path, out.csv) && ok;
  selfsim_output_free(&out);
  return ok ? exit_code(s) : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-similar actions of nilpotent groups: run, classify, construct digit sets, measure growth"};
  app.require_subcommand(1);

  std::string spec, element, word, mode = "finite", basepoint, dot_path, csv_path;
  std::vector<std::string> seeds, names;
  std::size_t max_states = 10000, max_depth = 1000, level = 0;
  long k = 1;
  bool json = false;

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", spec, "problem JSON file, or bundled:heisenberg / bundled:odometer")->required();
  };

  auto* act = app.add_subcommand("act", "image of a word under an element");
  add_spec(act);
  act->add_option("--element", element, "name or coordinates, e.g. a or 1,0,0")->required();
  act->add_option("--word", word, "word such as 1424")->required();

  auto* state = app.add_subcommand("state", "section of an element at a word");
  add_spec(state);
  state->add_option("--element", element)->required();
  state->add_option("--word", word)->required();

  auto* automaton = app.add_subcommand("automaton", "explore the state closure of seed elements");
  add_spec(automaton);
  automaton->add_option("--seed", seeds, "seed element (repeatable)")->required();
  automaton->add_option("--max-states", max_states);
  automaton->add_option("--max-depth", max_depth);
  automaton->add_option("--dot", dot_path, "write the automaton as DOT");

  auto* recursion = app.add_subcommand("recursion", "wreath recursion rules of named elements");
  add_spec(recursion);
  recursion->add_option("--element", names, "element (repeatable); default all named elements");

  auto* classify = app.add_subcommand("classify", "spectral classification of the virtual endomorphism");
  add_spec(classify);
  classify->add_flag("--json", json);

  auto* digits = app.add_subcommand("digits", "construct a digit set");
  add_spec(digits);
  digits->add_option("--mode", mode)->check(CLI::IsMember({"finite", "nonfinite"}));
  digits->add_option("--k", k, "power used by the nonfinite construction")->check(CLI::PositiveNumber);

  auto* schreier = app.add_subcommand("schreier", "level Schreier graph and ball growth");
  add_spec(schreier);
  schreier->add_option("--level", level)->required();
  schreier->add_option("--basepoint", basepoint, "word of length level; default first letter repeated");
  schreier->add_option("--csv", csv_path, "write r,ball_size rows");
  schreier->add_option("--dot", dot_path, "write the level graph as DOT");

  auto* verify = app.add_subcommand("verify-paper", "reproduce the bundled Heisenberg and odometer results");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  selfsim_output out{};
  if (verify->parsed()) return finish(selfsim_reproduction_suite(&out), out);

  Problem p;
  if (selfsim_status s = load(spec, p); s != SELFSIM_OK) {
    std::cerr << "error: " << selfsim_last_error() << "\n";
    return exit_code(s);
  }
  if (act->parsed()) return finish(selfsim_act(p.handle, element.c_str(), word.c_str(), &out), out);
  if (state->parsed()) return finish(selfsim_state(p.handle, element.c_str(), word.c_str(), &out), out);
  if (automaton->parsed()) {
    std::vector<const char*> raw;
    for (const auto& s : seeds) raw.push_back(s.c_str());
    return finish(selfsim_automaton(p.handle, raw.data(), raw.size(), max_states, max_depth, &out), out, dot_path);
  }
  if (recursion->parsed()) {
    std::vector<const char*> raw;
    for (const auto& s : names) raw.push_back(s.c_str());
    return finish(selfsim_recursion(p.handle, raw.data(), raw.size(), &out), out);
  }
  if (classify->parsed()) return finish(selfsim_classify(p.handle, json ? 1 : 0, &out), out);
  if (digits->parsed()) return finish(selfsim_digits(p.handle, mode.c_str(), k, &out), out);
  if (schreier->parsed()) {
    return finish(selfsim_schreier(p.handle, level, basepoint.c_str(), dot_path.empty() ? 0 : 1, &out), out, dot_path,
                  csv_path);
  }
  return 2;
}

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "selfsim/action.hpp"

namespace selfsim {

struct ExplorationBounds {
  std::size_t max_states = 10000;
  std::size_t max_depth = 1000;
};

struct Transition {
  Letter output;
  std::size_t target;
};

struct MealyAutomaton {
  std::size_t degree = 0;
  std::vector<GroupElement> states;               // BFS order
  std::vector<std::vector<Transition>> transitions;  // [state][input letter]
  std::vector<std::size_t> seeds;

  std::optional<std::size_t> find(const GroupElement& g) const;
  /// Output word and final state index after reading `w` from `state`.
  std::pair<Word, std::size_t> run(std::size_t state, const Word& w) const;
  std::size_t edge_count() const { return states.size() * degree; }
};

struct WitnessLink {
  Word word;  // from the seed
  GroupElement state;
};

struct BoundExceeded {
  std::size_t states_found = 0;
  std::size_t frontier_depth = 0;
  std::vector<WitnessLink> witness_chain;  // strictly growing l1 norm
};

struct ExplorationOutcome {
  std::variant<MealyAutomaton, BoundExceeded> result;

  bool finite() const { return std::holds_alternative<MealyAutomaton>(result); }
  const MealyAutomaton& automaton() const { return std::get<MealyAutomaton>(result); }
  const BoundExceeded& exceeded() const { return std::get<BoundExceeded>(result); }
};

ExplorationOutcome explore(const SelfSimilarAction& action, const std::vector<GroupElement>& seeds,
                           ExplorationBounds bounds = {});

/// Human names for elements: "e", powers of registered names ("c^2", "a^{-1}"),
/// short words in the generators ("b^{-1}ab"), else coordinates "(1,0,1)".
class ElementNamer {
 public:
  ElementNamer(const GroupModel& model, std::vector<std::pair<std::string, GroupElement>> named,
               std::vector<std::string> generators, std::size_t max_word_length = 6);

  std::string name(const GroupElement& g) const;
  /// Form suitable before "(v)": "a", "c^2", or "(b^{-1}ab)" for products.
  std::string operator_form(const GroupElement& g) const;
  std::optional<GroupElement> lookup(const std::string& name) const;

 private:
  GroupModel model_;
  std::map<std::string, GroupElement> by_name_;
  struct Name {
    std::string text;
    bool compound;  // more than one syllable
  };
  std::map<GroupElement, Name> names_;
};

/// Renders a generator word such as {a,a,b^-1} as "a^2b^{-1}".
std::string render_syllables(const std::vector<std::pair<std::string, long>>& letters);

struct RecursionRule {
  std::string element_name;
  Letter input;
  Letter output;
  GroupElement state;
  std::string text;  // "a(4v)=2(b^{-1}ab)(v)"
};

std::vector<RecursionRule> recursion_table(const SelfSimilarAction& action,
                                           const std::vector<std::pair<std::string, GroupElement>>& elements,
                                           const ElementNamer& namer);

std::string automaton_to_dot(const MealyAutomaton& automaton, const Alphabet& alphabet,
                             const ElementNamer* namer = nullptr);
std::string automaton_to_table(const MealyAutomaton& automaton, const Alphabet& alphabet,
                               const ElementNamer* namer = nullptr);

}  // namespace selfsim

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selfsim/action.hpp"
#include "selfsim/automaton.hpp"

namespace selfsim {

/// A problem document:
///   { "model": {"kind": "unitriangular", "n": 3} | {"kind": "abelian", "rank": k},
///     "subgroup": {"moduli": [...]} | {"lattice": [[...], ...]},
///     "phi": [["1", "0", "0"], ...],            rationals as "p/q" strings or integers
///     "digits": [[0, 0, 0], ...],               optional
///     "first_letter": 1,                        optional label of digit 0
///     "elements": {"a": [1, 0, 0], ...},        optional named elements
///     "generators": ["a", "b"] }                optional, names from "elements"
struct ProblemSpec {
  GroupModel model = GroupModel::abelian(1);
  SubgroupSpec subgroup;
  RatMatrix phi;
  std::optional<DigitSet> digits;
  long first_letter = 1;
  std::vector<std::pair<std::string, GroupElement>> elements;
  std::vector<std::string> generators;

  VirtualEndomorphism endomorphism() const;
  /// Throws Usage when the document has no digits.
  SelfSimilarAction action() const;
  SelfSimilarAction action_with(const DigitSet& digits) const;

  /// A registered name ("a") or a coordinate list ("1,0,-2").
  GroupElement resolve_element(std::string_view text) const;
  std::vector<std::pair<std::string, GroupElement>> generator_elements() const;
  ElementNamer namer() const;
  Alphabet alphabet(std::size_t size) const { return Alphabet{size, first_letter}; }
};

/// Throws Error(Parse) for malformed documents and the group_core errors for
/// structurally invalid ones.
ProblemSpec parse_problem(std::string_view json_text);
ProblemSpec load_problem(const std::string& path);

/// {"digits": [[...], ...]}, readable back as the "digits" field.
std::string digits_to_json(const DigitSet& digits);

}  // namespace selfsim

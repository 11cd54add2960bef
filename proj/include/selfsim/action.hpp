#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selfsim/group.hpp"

namespace selfsim {

/// Letters are 0-based digit indices; `first_label` only matters for display.
using Letter = std::uint32_t;
/// First letter is the root of the tree: g(xv) = y g|_x(v).
using Word = std::vector<Letter>;

struct Alphabet {
  std::size_t size = 0;
  long first_label = 1;

  long label(Letter x) const { return first_label + static_cast<long>(x); }
  /// Digit strings ("1424") when every label is a single digit, comma separated otherwise.
  std::string format(const Word& w) const;
  std::string format(Letter x) const { return std::to_string(label(x)); }
  Word parse(std::string_view text) const;  // throws Error(Parse)
};

struct LetterStep {
  Letter output;
  GroupElement state;
};

struct WreathRecursion {
  std::vector<Letter> permutation;  // x -> g(x)
  std::vector<GroupElement> states;  // g|_x
};

class SelfSimilarAction {
 public:
  /// Validates phi and the transversal; throws NotAnAutomorphism,
  /// InconsistentEndomorphism or InvalidTransversal.
  SelfSimilarAction(VirtualEndomorphism phi, DigitSet digits, long first_label = 1);

  const GroupModel& model() const noexcept { return phi_.model(); }
  const VirtualEndomorphism& phi() const noexcept { return phi_; }
  const DigitSet& digits() const noexcept { return digits_; }
  std::size_t degree() const noexcept { return digits_.size(); }
  const Alphabet& alphabet() const noexcept { return alphabet_; }

  LetterStep step(const GroupElement& g, Letter x) const;
  Word act(const GroupElement& g, const Word& w) const;
  GroupElement state(const GroupElement& g, const Word& w) const;
  /// Image word and section in one pass.
  std::pair<Word, GroupElement> act_and_state(const GroupElement& g, const Word& w) const;

  /// The section as the nested product
  /// phi(h_{y_n}^-1 phi(... phi(h_{y_1}^-1 g h_{x_1}) ...) h_{x_n}), expanded with
  /// powers of phi on the rational completion.
  GroupElement state_closed_form(const GroupElement& g, const Word& w) const;

  WreathRecursion wreath_recursion(const GroupElement& g) const;

 private:
  void check_letter(Letter x) const;

  VirtualEndomorphism phi_;
  DigitSet digits_;
  std::vector<GroupElement> inverse_reps_;
  Alphabet alphabet_;
};

}  // namespace selfsim

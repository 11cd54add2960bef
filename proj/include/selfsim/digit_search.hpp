#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfsim/automaton.hpp"
#include "selfsim/spectral.hpp"

namespace selfsim {

struct ContractingSubspace {
  std::vector<RatVector> basis;  // spans the kernel of q(M)
  RatPolynomial contracting_factor;  // q: the minimal polynomial with cyclotomic factors removed
  SpectralClassification classification;

  std::size_t dimension() const { return basis.size(); }
};

/// Throws Unsupported when phi admits no finite-state action.
ContractingSubspace contracting_subspace(const VirtualEndomorphism& phi);

/// g lies in G_c iff log g is in the span of the contracting subspace.
bool in_contracting_subgroup(const GroupModel& model, const ContractingSubspace& sub, const GroupElement& g);

/// Greedy transversal inside G_c, scanning l-infinity shells of growing radius.
/// Throws SearchExhausted when `max_radius` is reached first.
DigitSet finite_state_digits(const VirtualEndomorphism& phi, long max_radius = 64);

/// Smallest positive multiple of a primitive kernel vector of M - I whose
/// exponential is an element of H. Throws NoFixedElement or SearchExhausted.
GroupElement fixed_element(const VirtualEndomorphism& phi, long cap = 1000);

/// Replaces every representative by its k-th power (throws InvalidK if that is
/// no longer a transversal), then swaps the identity for fixed_element(phi).
DigitSet non_finite_state_digits(const VirtualEndomorphism& phi, const DigitSet& digits, long k = 1);

struct DigitSearchReport {
  DigitSet digits;
  std::vector<GroupElement> seeds;
  std::vector<ExplorationOutcome> outcomes;
  bool all_finite = true;
  std::optional<std::size_t> unbounded_seed;  // index into seeds

  std::string to_string(const Alphabet& alphabet) const;
};

DigitSearchReport empirical_classify(const VirtualEndomorphism& phi, const DigitSet& digits,
                                     const std::vector<GroupElement>& seeds, ExplorationBounds bounds = {},
                                     long first_label = 1);

}  // namespace selfsim

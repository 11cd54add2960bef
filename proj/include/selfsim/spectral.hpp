#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfsim/factor.hpp"
#include "selfsim/group.hpp"
#include "selfsim/polynomial.hpp"

namespace selfsim {

/// Faddeev-LeVerrier; monic.
RatPolynomial char_poly(const RatMatrix& m);
/// First linear dependence among I, M, M^2, ...; monic.
RatPolynomial min_poly(const RatMatrix& m);

/// Exact Schur-Cohn test: every complex root has modulus < 1. Nonzero constants pass.
bool strictly_inside_unit_disk(const RatPolynomial& p);

RatPolynomial cyclotomic(unsigned m);
unsigned long totient(unsigned long m);

struct CyclotomicFactor {
  unsigned order;
  unsigned char_multiplicity;
  unsigned min_multiplicity;
};

struct CyclotomicSplit {
  std::vector<CyclotomicFactor> unit_root_part;
  RatPolynomial remainder;  // chi with every cyclotomic factor divided out
  unsigned long lcm_order = 1;
};

CyclotomicSplit cyclotomic_split(const RatPolynomial& chi, const RatPolynomial& mu);
/// Every cyclotomic factor of chi divides mu exactly once.
bool semisimple_on_unit_circle(const RatPolynomial& chi, const RatPolynomial& mu);

enum class Verdict { StrictlyContracting, MixedFiniteStateCapable, NoFiniteStateAction };
const char* verdict_name(Verdict v);

struct SpectralClassification {
  Verdict verdict = Verdict::NoFiniteStateAction;
  RatMatrix lie_matrix;
  RatPolynomial chi;
  RatPolynomial mu;
  bool chi_strictly_inside = false;
  CyclotomicSplit split;
  bool remainder_strictly_inside = false;
  bool semisimple = false;
};

SpectralClassification classify_matrix(const RatMatrix& lie_matrix);
SpectralClassification classify(const VirtualEndomorphism& phi);

/// Lie matrix restricted to the centre; throws InconsistentEndomorphism if the
/// centre is not invariant.
RatMatrix center_restriction(const VirtualEndomorphism& phi);

struct CoreTriviality {
  bool trivial = false;
  RatPolynomial center_char_poly;
  Factorization factorization;
  std::optional<RatPolynomial> integral_factor;  // first monic integral factor when not trivial
};

CoreTriviality core_is_trivial(const VirtualEndomorphism& phi, int degree_cap = 24);
CoreTriviality core_is_trivial_matrix(const RatMatrix& center, int degree_cap = 24);

}  // namespace selfsim

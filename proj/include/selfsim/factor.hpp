#pragma once

#include <string>
#include <vector>

#include "selfsim/polynomial.hpp"

namespace selfsim {

struct FactorPower {
  RatPolynomial factor;  // monic, irreducible over Q
  unsigned multiplicity;
};

struct Factorization {
  Rational unit;  // leading coefficient of the input
  std::vector<FactorPower> factors;  // by degree, then coefficients from the constant term up

  RatPolynomial product() const;
  /// "(x - 1)(x - 1/2)^2", prefixed by the unit when it is not 1.
  std::string to_string() const;
};

/// Irreducible factorization over Q: squarefree decomposition, then
/// Cantor-Zassenhaus modulo a small prime, Hensel lifting and factor
/// recombination. Throws Unsupported above `degree_cap`, Usage on zero.
Factorization factor_over_rationals(const RatPolynomial& p, int degree_cap = 24);

/// Squarefree decomposition of a nonzero polynomial: monic parts a_i with p = lc * prod a_i^i.
std::vector<FactorPower> squarefree_decomposition(const RatPolynomial& p);

}  // namespace selfsim

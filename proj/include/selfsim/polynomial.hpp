#pragma once

#include <string>
#include <vector>

#include "selfsim/matrix.hpp"
#include "selfsim/numeric.hpp"

namespace selfsim {

/// Univariate polynomial over Q, coefficients lowest degree first. The zero
/// polynomial has degree -1.
class RatPolynomial {
 public:
  RatPolynomial() = default;
  explicit RatPolynomial(std::vector<Rational> coefficients);

  static RatPolynomial constant(const Rational& c);
  static RatPolynomial monomial(const Rational& c, std::size_t degree);
  /// (x - root)
  static RatPolynomial linear(const Rational& root);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  Rational coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const;
  bool is_monic() const { return !is_zero() && leading() == 1; }
  RatPolynomial monic() const;

  RatPolynomial operator+(const RatPolynomial& o) const;
  RatPolynomial operator-(const RatPolynomial& o) const;
  RatPolynomial operator*(const RatPolynomial& o) const;
  RatPolynomial scaled(const Rational& s) const;

  /// Euclidean division; throws Usage on a zero divisor.
  void divmod(const RatPolynomial& divisor, RatPolynomial& quotient, RatPolynomial& remainder) const;
  RatPolynomial operator/(const RatPolynomial& o) const;
  RatPolynomial operator%(const RatPolynomial& o) const;
  bool divisible_by(const RatPolynomial& o) const { return (*this % o).is_zero(); }

  RatPolynomial derivative() const;
  /// x^deg p(1/x)
  RatPolynomial reversed() const;
  Rational evaluate(const Rational& x) const;
  RatMatrix evaluate(const RatMatrix& m) const;

  bool operator==(const RatPolynomial& o) const = default;

  /// "x^3 - 5/2*x^2 + 2*x - 1/2"
  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic gcd (zero when both inputs are zero).
RatPolynomial gcd(RatPolynomial a, RatPolynomial b);

}  // namespace selfsim

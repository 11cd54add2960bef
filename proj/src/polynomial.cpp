#include "selfsim/polynomial.hpp"

#include <algorithm>

#include "selfsim/error.hpp"

namespace selfsim {

RatPolynomial::RatPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

void RatPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RatPolynomial RatPolynomial::constant(const Rational& c) { return RatPolynomial({c}); }

RatPolynomial RatPolynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return RatPolynomial(std::move(v));
}

RatPolynomial RatPolynomial::linear(const Rational& root) { return RatPolynomial({-root, Rational(1)}); }

const Rational& RatPolynomial::leading() const {
  if (coeffs_.empty()) throw Error(ErrorCode::Usage, "zero polynomial has no leading coefficient");
  return coeffs_.back();
}

RatPolynomial RatPolynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / leading());
}

RatPolynomial RatPolynomial::operator+(const RatPolynomial& o) const {
  std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coefficient(i) + o.coefficient(i);
  return RatPolynomial(std::move(v));
}

RatPolynomial RatPolynomial::operator-(const RatPolynomial& o) const {
  std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coefficient(i) - o.coefficient(i);
  return RatPolynomial(std::move(v));
}

RatPolynomial RatPolynomial::operator*(const RatPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return RatPolynomial(std::move(v));
}

RatPolynomial RatPolynomial::scaled(const Rational& s) const {
  std::vector<Rational> v = coeffs_;
  for (auto& c : v) c *= s;
  return RatPolynomial(std::move(v));
}

void RatPolynomial::divmod(const RatPolynomial& divisor, RatPolynomial& quotient, RatPolynomial& remainder) const {
  if (divisor.is_zero()) throw Error(ErrorCode::Usage, "polynomial division by zero");
  std::vector<Rational> r = coeffs_;
  const int dd = divisor.degree();
  const Rational lead_inv = 1 / divisor.leading();
  std::vector<Rational> q(std::max(0, degree() - dd + 1));
  for (int k = degree() - dd; k >= 0; --k) {
    Rational c = r[static_cast<std::size_t>(k + dd)] * lead_inv;
    q[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  quotient = RatPolynomial(std::move(q));
  r.resize(static_cast<std::size_t>(std::max(0, std::min(degree() + 1, dd))));
  remainder = RatPolynomial(std::move(r));
}

RatPolynomial RatPolynomial::operator/(const RatPolynomial& o) const {
  RatPolynomial q, r;
  divmod(o, q, r);
  return q;
}

RatPolynomial RatPolynomial::operator%(const RatPolynomial& o) const {
  RatPolynomial q, r;
  divmod(o, q, r);
  return r;
}

RatPolynomial RatPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return RatPolynomial(std::move(v));
}

RatPolynomial RatPolynomial::reversed() const {
  std::vector<Rational> v(coeffs_.rbegin(), coeffs_.rend());
  return RatPolynomial(std::move(v));
}

Rational RatPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatMatrix RatPolynomial::evaluate(const RatMatrix& m) const {
  if (!m.square()) throw Error(ErrorCode::Usage, "polynomial evaluation needs a square matrix");
  RatMatrix acc(m.rows(), m.cols());
  const RatMatrix id = RatMatrix::identity(m.rows());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * m + id.scaled(*it);
  return acc;
}

std::string RatPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    Rational c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    Rational a = abs(c);
    std::string mono = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
    if (k == 0) {
      out += a.get_str();
    } else if (a == 1) {
      out += mono;
    } else {
      out += a.get_str() + "*" + mono;
    }
  }
  return out;
}

RatPolynomial gcd(RatPolynomial a, RatPolynomial b) {
  while (!b.is_zero()) {
    RatPolynomial r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace selfsim

#include "selfsim/spectral.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include "selfsim/error.hpp"

namespace selfsim {

RatPolynomial char_poly(const RatMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::Usage, "characteristic polynomial needs a square matrix");
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RatMatrix mk(n, n);
  const RatMatrix id = RatMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk + id.scaled(c[n - k + 1]);
    c[n - k] = -(a * mk).trace() / Rational(static_cast<unsigned long>(k));
  }
  return RatPolynomial(std::move(c));
}

RatPolynomial min_poly(const RatMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::Usage, "minimal polynomial needs a square matrix");
  const std::size_t n = a.rows();
  std::vector<RatVector> powers;
  RatMatrix pk = RatMatrix::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    RatVector v;
    v.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) v.push_back(pk(r, c));
    powers.push_back(std::move(v));
    RatMatrix cols(n * n, powers.size());
    for (std::size_t j = 0; j < powers.size(); ++j)
      for (std::size_t i = 0; i < n * n; ++i) cols(i, j) = powers[j][i];
    auto kernel = cols.kernel_basis();
    if (!kernel.empty()) {
      RatVector coeffs = kernel.front();
      return RatPolynomial(std::move(coeffs)).monic();
    }
    pk = pk * a;
  }
  throw Error(ErrorCode::Internal, "no dependence among matrix powers");
}

bool strictly_inside_unit_disk(const RatPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::Usage, "zero polynomial has no roots to test");
  RatPolynomial cur = p;
  while (cur.degree() > 0) {
    const Rational a0 = cur.coefficient(0);
    const Rational an = cur.leading();
    if (abs(a0) >= abs(an)) return false;
    // Schur transform: (an p - a0 p*) / x keeps the count of roots inside the disk.
    RatPolynomial t = cur.scaled(an) - cur.reversed().scaled(a0);
    // The constant term an*a0 - a0*an vanishes, so divide by x.
    std::vector<Rational> shifted(t.coefficients().begin() + 1, t.coefficients().end());
    cur = RatPolynomial(std::move(shifted));
  }
  return true;
}

unsigned long totient(unsigned long m) {
  unsigned long result = m;
  for (unsigned long q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    while (m % q == 0) m /= q;
    result -= result / q;
  }
  if (m > 1) result -= result / m;
  return result;
}

RatPolynomial cyclotomic(unsigned m) {
  if (m == 0) throw Error(ErrorCode::Usage, "cyclotomic order must be positive");
  static std::mutex lock;
  static std::map<unsigned, RatPolynomial> cache;
  {
    std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  RatPolynomial r = RatPolynomial::monomial(1, m) - RatPolynomial::constant(1);
  for (unsigned d = 1; d < m; ++d)
    if (m % d == 0) r = r / cyclotomic(d);
  std::lock_guard<std::mutex> guard(lock);
  cache.emplace(m, r);
  return r;
}

namespace {

unsigned strip(RatPolynomial& p, const RatPolynomial& factor) {
  unsigned k = 0;
  for (;;) {
    RatPolynomial q, r;
    p.divmod(factor, q, r);
    if (!r.is_zero()) return k;
    p = q;
    ++k;
  }
}

}  // namespace

CyclotomicSplit cyclotomic_split(const RatPolynomial& chi, const RatPolynomial& mu) {
  CyclotomicSplit out;
  RatPolynomial rest = chi.monic();
  RatPolynomial mu_rest = mu.monic();
  const unsigned long deg = static_cast<unsigned long>(std::max(0, chi.degree()));
  // totient(m) >= sqrt(m/2), so every m with totient(m) <= deg is below 2 deg^2 + 2.
  const unsigned long limit = 2 * deg * deg + 2;
  for (unsigned long m = 1; m <= limit && rest.degree() > 0; ++m) {
    if (totient(m) > deg) continue;
    const RatPolynomial phi_m = cyclotomic(static_cast<unsigned>(m));
    unsigned in_chi = strip(rest, phi_m);
    if (in_chi == 0) continue;
    unsigned in_mu = strip(mu_rest, phi_m);
    out.unit_root_part.push_back(CyclotomicFactor{static_cast<unsigned>(m), in_chi, in_mu});
    out.lcm_order = std::lcm(out.lcm_order, m);
  }
  out.remainder = rest;
  return out;
}

bool semisimple_on_unit_circle(const RatPolynomial& chi, const RatPolynomial& mu) {
  for (const auto& f : cyclotomic_split(chi, mu).unit_root_part)
    if (f.min_multiplicity != 1) return false;
  return true;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::StrictlyContracting:
      return "StrictlyContracting";
    case Verdict::MixedFiniteStateCapable:
      return "MixedFiniteStateCapable";
    case Verdict::NoFiniteStateAction:
      return "NoFiniteStateAction";
  }
  return "?";
}

SpectralClassification classify_matrix(const RatMatrix& lie_matrix) {
  SpectralClassification c;
  c.verdict = Verdict::NoFiniteStateAction;
  c.lie_matrix = lie_matrix;
  c.chi = char_poly(lie_matrix);
  c.mu = min_poly(lie_matrix);
  c.chi_strictly_inside = strictly_inside_unit_disk(c.chi);
  c.split = cyclotomic_split(c.chi, c.mu);
  c.remainder_strictly_inside = strictly_inside_unit_disk(c.split.remainder);
  c.semisimple = true;
  for (const auto& f : c.split.unit_root_part) c.semisimple = c.semisimple && f.min_multiplicity == 1;
  if (c.chi_strictly_inside) {
    c.verdict = Verdict::StrictlyContracting;
  } else if (c.remainder_strictly_inside && c.semisimple) {
    c.verdict = Verdict::MixedFiniteStateCapable;
  }
  return c;
}

SpectralClassification classify(const VirtualEndomorphism& phi) { return classify_matrix(phi.lie_matrix()); }

RatMatrix center_restriction(const VirtualEndomorphism& phi) {
  const RatMatrix& m = phi.lie_matrix();
  const auto& model = phi.model();
  if (model.is_abelian()) return m;
  const std::size_t c = model.center_coordinates().front();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r != c && m(r, c) != 0) throw Error(ErrorCode::InconsistentEndomorphism, "the centre is not invariant under phi");
  }
  RatMatrix out(1, 1);
  out(0, 0) = m(c, c);
  return out;
}

CoreTriviality core_is_trivial_matrix(const RatMatrix& center, int degree_cap) {
  CoreTriviality out;
  out.center_char_poly = char_poly(center);
  out.factorization = factor_over_rationals(out.center_char_poly, degree_cap);
  out.trivial = true;
  for (const auto& f : out.factorization.factors) {
    bool integral = true;
    for (const auto& c : f.factor.coefficients()) integral = integral && is_integral(c);
    if (integral) {
      out.trivial = false;
      out.integral_factor = f.factor;
      break;
    }
  }
  return out;
}

CoreTriviality core_is_trivial(const VirtualEndomorphism& phi, int degree_cap) {
  return core_is_trivial_matrix(center_restriction(phi), degree_cap);
}

}  // namespace selfsim

#include "selfsim/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

#include "selfsim/error.hpp"

namespace selfsim {

namespace {

// ---------------------------------------------------------------- polynomials over Z/p

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;  // lowest degree first, trimmed

struct Field {
  u64 p;

  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }

  static void trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }
  static int deg(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

  ModPoly sub(const ModPoly& a, const ModPoly& b) const {
    ModPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
  }
  ModPoly mul(const ModPoly& a, const ModPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
    trim(r);
    return r;
  }
  void divmod(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r) const {
    r = a;
    const int db = deg(b);
    const u64 li = inv(b.back());
    q.assign(static_cast<std::size_t>(std::max(0, deg(a) - db + 1)), 0);
    for (int k = deg(a) - db; k >= 0; --k) {
      u64 c = mul(r[static_cast<std::size_t>(k + db)], li);
      q[static_cast<std::size_t>(k)] = c;
      if (!c) continue;
      for (int j = 0; j <= db; ++j) {
        auto& t = r[static_cast<std::size_t>(k + j)];
        t = sub(t, mul(c, b[static_cast<std::size_t>(j)]));
      }
    }
    trim(q);
    trim(r);
  }
  ModPoly rem(const ModPoly& a, const ModPoly& b) const {
    ModPoly q, r;
    divmod(a, b, q, r);
    return r;
  }
  ModPoly quo(const ModPoly& a, const ModPoly& b) const {
    ModPoly q, r;
    divmod(a, b, q, r);
    return q;
  }
  ModPoly monic(ModPoly f) const {
    if (f.empty()) return f;
    const u64 li = inv(f.back());
    for (auto& c : f) c = mul(c, li);
    return f;
  }
  ModPoly gcd(ModPoly a, ModPoly b) const {
    while (!b.empty()) {
      ModPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  /// s*a + t*b = 1 for coprime a, b.
  void bezout(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t) const {
    ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
      ModPoly q, r;
      divmod(r0, r1, q, r);
      ModPoly s2 = sub(s0, mul(q, s1));
      ModPoly t2 = sub(t0, mul(q, t1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (deg(r0) != 0) throw Error(ErrorCode::Internal, "Hensel factors are not coprime");
    const u64 li = inv(r0[0]);
    for (auto& c : s0) c = mul(c, li);
    for (auto& c : t0) c = mul(c, li);
    s = std::move(s0);
    t = std::move(t0);
  }
  ModPoly powmod(ModPoly base, Integer e, const ModPoly& modulus) const {
    ModPoly result{1};
    base = rem(base, modulus);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) result = rem(mul(result, base), modulus);
      e >>= 1;
      if (e > 0) base = rem(mul(base, base), modulus);
    }
    return result;
  }
  ModPoly derivative(const ModPoly& f) const {
    ModPoly r;
    for (std::size_t i = 1; i < f.size(); ++i) r.push_back(mul(f[i], i % p));
    trim(r);
    return r;
  }

  // Cantor-Zassenhaus for a monic squarefree f.
  std::vector<ModPoly> factor(const ModPoly& f, std::mt19937_64& rng) const {
    std::vector<std::pair<ModPoly, int>> by_degree;
    ModPoly rest = f;
    ModPoly h{0, 1};
    for (int i = 1; deg(rest) >= 2 * i; ++i) {
      h = powmod(h, Integer(static_cast<unsigned long>(p)), rest);
      ModPoly g = gcd(sub(h, ModPoly{0, 1}), rest);
      if (deg(g) > 0) {
        by_degree.emplace_back(g, i);
        rest = quo(rest, g);
        h = rem(h, rest);
      }
    }
    if (deg(rest) > 0) by_degree.emplace_back(rest, deg(rest));
    std::vector<ModPoly> out;
    for (const auto& [g, d] : by_degree) equal_degree(g, d, rng, out);
    return out;
  }

  void equal_degree(const ModPoly& g, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) const {
    if (deg(g) == d) {
      out.push_back(g);
      return;
    }
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(d));
    const Integer e = (q - 1) / 2;
    std::uniform_int_distribution<u64> coeff(0, p - 1);
    for (;;) {
      ModPoly a(static_cast<std::size_t>(deg(g)));
      for (auto& c : a) c = coeff(rng);
      trim(a);
      if (deg(a) < 1) continue;
      ModPoly b = sub(powmod(a, e, g), ModPoly{1});
      ModPoly c = gcd(b, g);
      if (deg(c) > 0 && deg(c) < deg(g)) {
        equal_degree(c, d, rng, out);
        equal_degree(quo(g, c), d, rng, out);
        return;
      }
    }
  }
};

// ---------------------------------------------------------------- integer polynomials

using IntPoly = std::vector<Integer>;  // lowest degree first

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

IntPoly reduce(IntPoly f, const Integer& m) {
  for (auto& c : f) c = mod_floor(c, m);
  trim(f);
  return f;
}

ModPoly to_mod(const IntPoly& f, u64 p) {
  ModPoly r(f.size());
  const Integer pp(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = mod_floor(f[i], pp).get_ui();
  Field::trim(r);
  return r;
}

IntPoly from_mod(const ModPoly& f) {
  IntPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = static_cast<unsigned long>(f[i]);
  return r;
}

IntPoly primitive_part(IntPoly f) {
  trim(f);
  if (f.empty()) return f;
  Integer g = 0;
  for (const auto& c : f) g = gcd(g, c);
  if (f.back() < 0) g = -g;
  for (auto& c : f) c /= g;
  return f;
}

IntPoly integer_primitive(const RatPolynomial& p) {
  Integer l = 1;
  for (const auto& c : p.coefficients()) l = lcm(l, Integer(c.get_den()));
  IntPoly f;
  for (const auto& c : p.coefficients()) f.push_back(Integer(c * l));
  return primitive_part(f);
}

RatPolynomial to_rational(const IntPoly& f) { return RatPolynomial(std::vector<Rational>(f.begin(), f.end())); }

// F = G*H mod p^k from a coprime monic split mod p.
void hensel_pair(const IntPoly& f, const ModPoly& g, const ModPoly& h, const Field& fp, unsigned k, IntPoly& big_g,
                 IntPoly& big_h) {
  ModPoly s, t;
  fp.bezout(g, h, s, t);
  big_g = from_mod(g);
  big_h = from_mod(h);
  Integer pj(static_cast<unsigned long>(fp.p));
  for (unsigned j = 1; j < k; ++j) {
    IntPoly prod = mul(big_g, big_h);
    IntPoly diff(std::max(f.size(), prod.size()));
    for (std::size_t i = 0; i < diff.size(); ++i) {
      diff[i] = (i < f.size() ? f[i] : Integer(0)) - (i < prod.size() ? prod[i] : Integer(0));
      if (!mpz_divisible_p(diff[i].get_mpz_t(), pj.get_mpz_t())) throw Error(ErrorCode::Internal, "Hensel step lost congruence");
      diff[i] /= pj;
    }
    trim(diff);
    ModPoly e = to_mod(diff, fp.p);
    ModPoly tau = fp.rem(fp.mul(t, e), g);
    ModPoly sigma = fp.quo(fp.sub(e, fp.mul(tau, h)), g);
    for (std::size_t i = 0; i < tau.size(); ++i) big_g[i] += pj * static_cast<unsigned long>(tau[i]);
    if (big_h.size() < sigma.size()) big_h.resize(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) big_h[i] += pj * static_cast<unsigned long>(sigma[i]);
    pj *= static_cast<unsigned long>(fp.p);
  }
}

std::vector<IntPoly> hensel_lift(const IntPoly& monic_f, const std::vector<ModPoly>& factors, const Field& fp, unsigned k,
                                 const Integer& modulus) {
  std::vector<IntPoly> lifted;
  IntPoly current = monic_f;
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    ModPoly rest{1};
    for (std::size_t j = i + 1; j < factors.size(); ++j) rest = fp.mul(rest, factors[j]);
    IntPoly g, h;
    hensel_pair(current, factors[i], rest, fp, k, g, h);
    lifted.push_back(reduce(g, modulus));
    current = reduce(h, modulus);
  }
  lifted.push_back(current);
  return lifted;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Irreducible factors of a primitive squarefree integer polynomial with positive leading coefficient.
std::vector<IntPoly> factor_squarefree(IntPoly f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {f};

  u64 p = 3;
  for (;; p += 2) {
    if (!is_prime(p)) continue;
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) continue;
    Field fp{p};
    ModPoly fm = to_mod(f, p);
    if (Field::deg(fp.gcd(fm, fp.derivative(fm))) == 0) break;
  }
  const Field fp{p};
  std::mt19937_64 rng(0x5eedULL ^ p);
  std::vector<ModPoly> mod_factors = fp.factor(fp.monic(to_mod(f, p)), rng);
  if (mod_factors.size() == 1) return {f};

  // Coefficient bound for lc * (factor / lc(factor)).
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer norm = sqrt(norm2) + 1;
  Integer bound = 2 * abs(f.back()) * norm;
  bound <<= static_cast<unsigned long>(n);
  unsigned k = 1;
  Integer modulus(static_cast<unsigned long>(p));
  while (modulus <= bound) {
    modulus *= static_cast<unsigned long>(p);
    ++k;
  }

  Integer lc_inv;
  mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), modulus.get_mpz_t());
  IntPoly monic_f = f;
  for (auto& c : monic_f) c = mod_floor(c * lc_inv, modulus);
  std::vector<IntPoly> lifted = hensel_lift(monic_f, mod_factors, fp, k, modulus);

  const Integer half = modulus / 2;
  std::vector<IntPoly> result;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> pick(s);
    for (std::size_t i = 0; i < s; ++i) pick[i] = i;
    for (;;) {
      IntPoly g{f.back()};
      for (std::size_t i : pick) g = reduce(mul(g, lifted[i]), modulus);
      for (auto& c : g)
        if (c > half) c -= modulus;
      g = primitive_part(g);
      RatPolynomial q, r;
      to_rational(f).divmod(to_rational(g), q, r);
      if (r.is_zero()) {
        result.push_back(g);
        f = integer_primitive(q);
        for (std::size_t i = s; i-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(pick[i]));
        found = true;
        break;
      }
      // next combination in lexicographic order
      std::size_t i = s;
      while (i > 0 && pick[i - 1] == lifted.size() - s + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (f.size() > 1) result.push_back(f);
  return result;
}

bool factor_less(const FactorPower& a, const FactorPower& b) {
  if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
  const auto& ca = a.factor.coefficients();
  const auto& cb = b.factor.coefficients();
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (ca[i] != cb[i]) return ca[i] < cb[i];
  return a.multiplicity < b.multiplicity;
}

}  // namespace

std::vector<FactorPower> squarefree_decomposition(const RatPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::Usage, "cannot decompose the zero polynomial");
  std::vector<FactorPower> out;
  RatPolynomial f = p.monic();
  if (f.degree() == 0) return out;
  // Yun's algorithm.
  RatPolynomial a0 = gcd(f, f.derivative());
  RatPolynomial b = f / a0;
  RatPolynomial c = f.derivative() / a0;
  RatPolynomial d = c - b.derivative();
  for (unsigned i = 1; b.degree() > 0; ++i) {
    RatPolynomial a = gcd(b, d);
    RatPolynomial b_next = b / a;
    c = d / a;
    b = b_next;
    d = c - b.derivative();
    if (a.degree() > 0) out.push_back(FactorPower{a, i});
  }
  return out;
}

Factorization factor_over_rationals(const RatPolynomial& p, int degree_cap) {
  if (p.is_zero()) throw Error(ErrorCode::Usage, "cannot factor the zero polynomial");
  if (p.degree() > degree_cap) {
    throw Error(ErrorCode::Unsupported, "degree " + std::to_string(p.degree()) + " exceeds the factorization cap of " +
                                            std::to_string(degree_cap));
  }
  Factorization out;
  out.unit = p.leading();
  for (const auto& part : squarefree_decomposition(p)) {
    for (const auto& g : factor_squarefree(integer_primitive(part.factor))) {
      out.factors.push_back(FactorPower{to_rational(g).monic(), part.multiplicity});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), factor_less);
  return out;
}

RatPolynomial Factorization::product() const {
  RatPolynomial r = RatPolynomial::constant(unit);
  for (const auto& f : factors)
    for (unsigned i = 0; i < f.multiplicity; ++i) r = r * f.factor;
  return r;
}

std::string Factorization::to_string() const {
  std::string out;
  if (unit != 1 || factors.empty()) out += unit.get_str() + (factors.empty() ? "" : "*");
  for (const auto& f : factors) {
    out += "(" + f.factor.to_string() + ")";
    if (f.multiplicity > 1) out += "^" + std::to_string(f.multiplicity);
  }
  return out;
}

}  // namespace selfsim

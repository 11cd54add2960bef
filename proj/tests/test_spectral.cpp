#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <random>

#include "oracle.hpp"
#include "selfsim/error.hpp"
#include "selfsim/spectral.hpp"

using namespace selfsim;

namespace {

long uni(std::mt19937_64& rng, long lo, long hi) { return static_cast<long>(oracle::uniform(rng, lo, hi)); }

RatPolynomial poly(std::vector<long> low_first) {
  std::vector<Rational> c;
  for (long v : low_first) c.emplace_back(v);
  return RatPolynomial(c);
}

RatPolynomial x_minus(const Rational& r) { return RatPolynomial::linear(r); }

// Largest root modulus from the companion matrix, in floating point.
double max_root_modulus(const RatPolynomial& p) {
  const int n = p.degree();
  if (n < 1) return 0.0;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  const double lead = p.leading().get_d();
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.coefficient(static_cast<std::size_t>(i)).get_d() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  double best = 0.0;
  for (int i = 0; i < n; ++i) best = std::max(best, std::abs(es.eigenvalues()(i)));
  return best;
}

Rational random_rational(std::mt19937_64& rng, long num, long den) {
  Rational r(uni(rng, -num, num), uni(rng, 1, den));
  r.canonicalize();
  return r;
}

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long num, long den) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng, num, den);
  return m;
}

RatMatrix unimodular(std::mt19937_64& rng, std::size_t n) {
  RatMatrix p = RatMatrix::identity(n);
  for (int step = 0; step < 6; ++step) {
    auto i = static_cast<std::size_t>(uni(rng, 0, static_cast<long long>(n) - 1));
    auto j = static_cast<std::size_t>(uni(rng, 0, static_cast<long long>(n) - 1));
    if (i == j) continue;
    RatMatrix e = RatMatrix::identity(n);
    e(i, j) = uni(rng, -2, 2);
    p = p * e;
  }
  return p;
}

}  // namespace

TEST_CASE("characteristic and minimal polynomials") {
  const RatMatrix d = RatMatrix::diagonal({Rational(1), Rational(1, 2), Rational(1, 2)});
  CHECK(char_poly(d) == x_minus(1) * x_minus(Rational(1, 2)) * x_minus(Rational(1, 2)));
  CHECK(min_poly(d) == x_minus(1) * x_minus(Rational(1, 2)));
  const RatMatrix shear = RatMatrix::from_rows({{Rational(1), Rational(1)}, {Rational(0), Rational(1)}});
  CHECK(min_poly(shear) == x_minus(1) * x_minus(1));
  CHECK(char_poly(RatMatrix::from_rows({{Rational(0), Rational(-1)}, {Rational(1), Rational(0)}})) == poly({1, 0, 1}));
  CHECK(char_poly(d).to_string() == "x^3 - 2*x^2 + 5/4*x - 1/4");
}

TEST_CASE("Cayley-Hamilton, divisibility and similarity invariance") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
    RatMatrix m = random_matrix(rng, n, 3, trial % 3 == 0 ? 1 : 4);
    if (trial % 4 == 1) {
      // Repeated eigenvalues make the minimal polynomial a proper divisor.
      m = RatMatrix::diagonal(RatVector(n, random_rational(rng, 2, 2)));
      if (n > 1) m(0, 1) = 1;
    }
    RatPolynomial chi = char_poly(m);
    RatPolynomial mu = min_poly(m);
    CHECK(chi.degree() == static_cast<int>(n));
    CHECK(chi.is_monic());
    CHECK(mu.is_monic());
    CHECK(chi.evaluate(m) == RatMatrix(n, n));
    CHECK(mu.evaluate(m) == RatMatrix(n, n));
    CHECK(chi.divisible_by(mu));
    // Minimality: removing any irreducible factor stops it annihilating m.
    for (const auto& f : factor_over_rationals(mu).factors) {
      CHECK_FALSE((mu / f.factor).evaluate(m) == RatMatrix(n, n));
    }
    // Same roots: every irreducible factor of chi divides mu.
    for (const auto& f : factor_over_rationals(chi).factors) CHECK(mu.divisible_by(f.factor));
    RatMatrix p = unimodular(rng, n);
    RatMatrix conj = p * m * *p.inverse();
    CHECK(char_poly(conj) == chi);
    CHECK(min_poly(conj) == mu);
  }
}

TEST_CASE("Schur-Cohn agrees with companion eigenvalues") {
  std::mt19937_64 rng(42);
  int decided = 0, inside = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    RatPolynomial p = RatPolynomial::constant(1);
    if (trial % 2 == 0) {
      // Built from roots so that both outcomes are common.
      const int deg = 1 + trial % 6;
      for (int i = 0; i < deg; ++i) {
        if (i + 1 < deg && uni(rng, 0, 1) == 0) {
          Rational s = random_rational(rng, 6, 4), q(uni(rng, 1, 12), uni(rng, 1, 12));
          q.canonicalize();
          p = p * RatPolynomial({q, -s, Rational(1)});
          ++i;
        } else {
          p = p * x_minus(random_rational(rng, 5, 5));
        }
      }
    } else {
      std::vector<Rational> c(static_cast<std::size_t>(2 + trial % 6));
      for (auto& v : c) v = Rational(uni(rng, -9, 9));
      c.back() = Rational(uni(rng, 1, 30));
      p = RatPolynomial(c);
    }
    if (p.degree() < 1) continue;
    const double r = max_root_modulus(p);
    if (std::abs(r - 1.0) < 1e-6) continue;
    ++decided;
    const bool exact = strictly_inside_unit_disk(p);
    CHECK_MESSAGE(exact == (r < 1.0), p.to_string());
    if (exact) ++inside;
  }
  CHECK(decided > 900);
  CHECK(inside > 100);
}

TEST_CASE("unit circle boundary cases") {
  CHECK_FALSE(strictly_inside_unit_disk(x_minus(1)));
  CHECK_FALSE(strictly_inside_unit_disk(poly({1, 0, 1})));
  CHECK_FALSE(strictly_inside_unit_disk(x_minus(1) * x_minus(Rational(1, 3))));
  CHECK(strictly_inside_unit_disk(x_minus(Rational(-999, 1000))));
  CHECK(strictly_inside_unit_disk(RatPolynomial({Rational(1, 2), Rational(0), Rational(1)})));
  CHECK(strictly_inside_unit_disk(RatPolynomial::constant(3)));
  CHECK(strictly_inside_unit_disk(RatPolynomial::monomial(1, 3)));
  CHECK_FALSE(strictly_inside_unit_disk(x_minus(2) * x_minus(Rational(1, 2))));
}

TEST_CASE("factorization over the rationals") {
  const RatPolynomial x2m2 = poly({-2, 0, 1}), phi3 = poly({1, 1, 1});
  Factorization f = factor_over_rationals(x2m2 * x_minus(1) * x_minus(1) * phi3);
  CHECK(f.product() == x2m2 * x_minus(1) * x_minus(1) * phi3);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0].factor == x_minus(1));
  CHECK(f.factors[0].multiplicity == 2);

  CHECK(factor_over_rationals(poly({1, 0, 0, 0, 1})).factors.size() == 1);
  // Splits modulo every prime yet irreducible over the rationals.
  CHECK(factor_over_rationals(poly({1, 0, -10, 0, 1})).factors.size() == 1);
  Factorization sg = factor_over_rationals(poly({4, 0, 0, 0, 1}));
  REQUIRE(sg.factors.size() == 2);
  CHECK(sg.factors[0].factor * sg.factors[1].factor == poly({4, 0, 0, 0, 1}));

  Factorization scaled = factor_over_rationals(x_minus(Rational(1, 2)).scaled(6) * x_minus(Rational(1, 2)));
  CHECK(scaled.unit == 6);
  CHECK(scaled.to_string() == "6*(x - 1/2)^2");
  CHECK(factor_over_rationals(x_minus(1) * x_minus(Rational(1, 2)) * x_minus(Rational(1, 2))).to_string() ==
        "(x - 1)(x - 1/2)^2");
  CHECK_THROWS_AS(factor_over_rationals(RatPolynomial::monomial(1, 30) + RatPolynomial::constant(1)), Error);

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    RatPolynomial p = RatPolynomial::constant(random_rational(rng, 4, 3));
    if (p.is_zero()) p = RatPolynomial::constant(1);
    int linear = 0;
    const int parts = 1 + trial % 4;
    for (int i = 0; i < parts; ++i) {
      if (uni(rng, 0, 2) == 0) {
        p = p * x_minus(random_rational(rng, 4, 3));
        ++linear;
      } else {
        std::vector<Rational> c(static_cast<std::size_t>(uni(rng, 3, 5)));
        for (auto& v : c) v = Rational(uni(rng, -6, 6));
        c.back() = 1;
        p = p * RatPolynomial(c);
      }
    }
    Factorization fac = factor_over_rationals(p);
    CHECK(fac.product() == p);
    int roots = 0;
    for (const auto& fp : fac.factors) {
      CHECK(fp.factor.is_monic());
      CHECK(fp.factor.degree() >= 1);
      if (fp.factor.degree() == 1) roots += static_cast<int>(fp.multiplicity);
    }
    CHECK(roots >= linear);
    // Distinct factors are coprime.
    for (std::size_t i = 0; i < fac.factors.size(); ++i)
      for (std::size_t j = i + 1; j < fac.factors.size(); ++j)
        CHECK(gcd(fac.factors[i].factor, fac.factors[j].factor) == RatPolynomial::constant(1));
  }
}

TEST_CASE("cyclotomic polynomials and splitting") {
  CHECK(cyclotomic(1) == x_minus(1));
  CHECK(cyclotomic(2) == poly({1, 1}));
  CHECK(cyclotomic(4) == poly({1, 0, 1}));
  CHECK(cyclotomic(6) == poly({1, -1, 1}));
  CHECK(cyclotomic(12) == poly({1, 0, -1, 0, 1}));
  CHECK(totient(12) == 4);
  CHECK(totient(1) == 1);
  for (unsigned m = 1; m <= 30; ++m) CHECK(cyclotomic(m).degree() == static_cast<int>(totient(m)));

  const RatPolynomial chi = x_minus(1) * x_minus(1) * poly({1, 1}) * x_minus(Rational(1, 2));
  const RatPolynomial mu = x_minus(1) * poly({1, 1}) * x_minus(Rational(1, 2));
  CyclotomicSplit s = cyclotomic_split(chi, mu);
  REQUIRE(s.unit_root_part.size() == 2);
  CHECK(s.unit_root_part[0].order == 1);
  CHECK(s.unit_root_part[0].char_multiplicity == 2);
  CHECK(s.unit_root_part[0].min_multiplicity == 1);
  CHECK(s.unit_root_part[1].order == 2);
  CHECK(s.remainder == x_minus(Rational(1, 2)));
  CHECK(s.lcm_order == 2);
  CHECK(semisimple_on_unit_circle(chi, mu));
  CHECK_FALSE(semisimple_on_unit_circle(chi, chi));
}

TEST_CASE("spectral verdicts") {
  const GroupModel ut3 = GroupModel::unitriangular(3);
  const VirtualEndomorphism heis(ut3, SubgroupSpec::congruence({1, 2, 2}),
                                 RatMatrix::diagonal({Rational(1), Rational(1, 2), Rational(1, 2)}));
  SpectralClassification c = classify(heis);
  CHECK(c.verdict == Verdict::MixedFiniteStateCapable);
  CHECK(c.lie_matrix == RatMatrix::diagonal({Rational(1), Rational(1, 2), Rational(1, 2)}));
  CHECK(c.remainder_strictly_inside);
  CHECK(c.semisimple);

  const VirtualEndomorphism odo(GroupModel::abelian(1), SubgroupSpec::lattice({{2}}), RatMatrix::diagonal({Rational(1, 2)}));
  CHECK(classify(odo).verdict == Verdict::StrictlyContracting);

  CHECK(classify_matrix(RatMatrix::from_rows({{Rational(1), Rational(1)}, {Rational(0), Rational(1)}})).verdict ==
        Verdict::NoFiniteStateAction);
  CHECK(classify_matrix(RatMatrix::from_rows({{Rational(0), Rational(-1)}, {Rational(1), Rational(0)}})).verdict ==
        Verdict::MixedFiniteStateCapable);
  CHECK(classify_matrix(RatMatrix::diagonal({Rational(2), Rational(1, 3)})).verdict == Verdict::NoFiniteStateAction);
  CHECK(classify_matrix(RatMatrix::diagonal({Rational(-1), Rational(1, 3)})).verdict == Verdict::MixedFiniteStateCapable);
  // |root| = 1 but not a root of unity: (x^2 - 6/5 x + 1).
  CHECK(classify_matrix(RatMatrix::from_rows({{Rational(0), Rational(-1)}, {Rational(1), Rational(6, 5)}})).verdict ==
        Verdict::NoFiniteStateAction);
  CHECK(std::string(verdict_name(Verdict::StrictlyContracting)) == "StrictlyContracting");
}

TEST_CASE("verdicts are similarity invariant") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    RatMatrix m = random_matrix(rng, n, 2, 3);
    if (trial % 3 == 0) m(0, 0) = 1;
    RatMatrix p = unimodular(rng, n);
    CHECK(classify_matrix(m).verdict == classify_matrix(p * m * *p.inverse()).verdict);
  }
}

TEST_CASE("centre restriction and core triviality") {
  const GroupModel ut3 = GroupModel::unitriangular(3);
  const VirtualEndomorphism heis(ut3, SubgroupSpec::congruence({1, 2, 2}),
                                 RatMatrix::diagonal({Rational(1), Rational(1, 2), Rational(1, 2)}));
  CHECK(center_restriction(heis) == RatMatrix::diagonal({Rational(1, 2)}));
  CoreTriviality t = core_is_trivial(heis);
  CHECK(t.trivial);
  CHECK(t.center_char_poly == x_minus(Rational(1, 2)));

  const VirtualEndomorphism flip(ut3, SubgroupSpec::congruence({1, 1, 1}),
                                 RatMatrix::diagonal({Rational(1), Rational(-1), Rational(-1)}));
  CHECK(center_restriction(flip) == RatMatrix::diagonal({Rational(-1)}));
  CoreTriviality ft = core_is_trivial(flip);
  CHECK_FALSE(ft.trivial);
  REQUIRE(ft.integral_factor.has_value());
  CHECK(*ft.integral_factor == poly({1, 1}));

  const VirtualEndomorphism ab(GroupModel::abelian(2), SubgroupSpec::lattice({{1, 0}, {0, 2}}),
                               RatMatrix::diagonal({Rational(1), Rational(1, 2)}));
  CoreTriviality at = core_is_trivial(ab);
  CHECK_FALSE(at.trivial);
  CHECK(*at.integral_factor == x_minus(1));
  CHECK(core_is_trivial_matrix(RatMatrix::from_rows({{Rational(0), Rational(1, 2)}, {Rational(1), Rational(0)}})).trivial);
  // x^2 - 2 is integral and monic.
  CHECK_FALSE(core_is_trivial_matrix(RatMatrix::from_rows({{Rational(0), Rational(2)}, {Rational(1), Rational(0)}})).trivial);
}

TEST_CASE("small reference cases") {
  const RatPolynomial one = x_minus(1), half = x_minus(Rational(1, 2));
  CHECK(char_poly(RatMatrix::identity(2)) == one * one);
  CHECK(min_poly(RatMatrix::identity(2)) == one);
  const RatMatrix jordan = RatMatrix::from_rows({{Rational(1), Rational(1)}, {Rational(0), Rational(1)}});
  CHECK(char_poly(jordan) == one * one);
  CHECK(min_poly(jordan) == one * one);

  CHECK(strictly_inside_unit_disk(half));
  CHECK_FALSE(strictly_inside_unit_disk(one * half * half));
  CHECK(strictly_inside_unit_disk(RatPolynomial({Rational(1, 8), Rational(-1, 4), Rational(1)})));

  CyclotomicSplit s = cyclotomic_split(one * half * half, one * half);
  REQUIRE(s.unit_root_part.size() == 1);
  CHECK(s.unit_root_part[0].order == 1);
  CHECK(s.unit_root_part[0].char_multiplicity == 1);
  CHECK(s.unit_root_part[0].min_multiplicity == 1);
  CHECK(s.remainder == half * half);
  CHECK(s.lcm_order == 1);
  CyclotomicSplit none = cyclotomic_split(half, half);
  CHECK(none.unit_root_part.empty());
  CHECK(none.remainder == half);
  const RatPolynomial third = x_minus(Rational(1, 3));
  CyclotomicSplit three = cyclotomic_split(poly({1, 1, 1}) * third, poly({1, 1, 1}) * third);
  REQUIRE(three.unit_root_part.size() == 1);
  CHECK(three.unit_root_part[0].order == 3);
  CHECK(three.remainder == third);
  CHECK(three.lcm_order == 3);

  CHECK(semisimple_on_unit_circle(one * half * half, one * half));
  CHECK_FALSE(semisimple_on_unit_circle(one * one, one * one));
  CHECK(semisimple_on_unit_circle(one * one, one));

  Factorization f = factor_over_rationals(one * half * half);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].factor == one);
  CHECK(f.factors[0].multiplicity == 1);
  CHECK(f.factors[1].factor == half);
  CHECK(f.factors[1].multiplicity == 2);
  Factorization d = factor_over_rationals(poly({-1, 0, 1}));
  REQUIRE(d.factors.size() == 2);
  CHECK(d.factors[0].factor == one);
  CHECK(d.factors[1].factor == poly({1, 1}));
  CHECK(factor_over_rationals(poly({1, 1, 1})).factors.size() == 1);

  const VirtualEndomorphism ab(GroupModel::abelian(2), SubgroupSpec::lattice({{1, 0}, {0, 2}}),
                               RatMatrix::diagonal({Rational(1), Rational(1, 2)}));
  CHECK(center_restriction(ab) == RatMatrix::diagonal({Rational(1), Rational(1, 2)}));
  CHECK_FALSE(core_is_trivial_matrix(RatMatrix::diagonal({Rational(2)})).trivial);
  CHECK_FALSE(core_is_trivial_matrix(RatMatrix::diagonal({Rational(1)})).trivial);
  CHECK(core_is_trivial_matrix(RatMatrix::diagonal({Rational(1, 2)})).trivial);
}

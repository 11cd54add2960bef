// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "oracle.hpp"
#include "selfsim/commands.hpp"
#include "selfsim/digit_search.hpp"
#include "selfsim/schreier.hpp"
#include "selfsim/spectral.hpp"

using namespace selfsim;

namespace {

struct Result {
  bool passed;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

struct Heisenberg {
  ProblemSpec spec = bundled_problem("heisenberg");
  GroupModel m = spec.model;
  GroupElement a = spec.resolve_element("a"), b = spec.resolve_element("b"), c = spec.resolve_element("c");
  DigitSet d_prime{{m.element({1, 0, 0}), m.element({0, 1, 0}), m.element({0, 0, 1}), m.element({0, 1, 1})}};
};

std::vector<std::string> rules(const SelfSimilarAction& act, const std::vector<std::pair<std::string, GroupElement>>& els,
                               const ElementNamer& namer) {
  std::vector<std::string> out;
  for (const auto& r : recursion_table(act, els, namer)) out.push_back(r.text);
  return out;
}

Result compare_rules(const std::string& label, const std::vector<std::string>& got, const std::vector<std::string>& want) {
  if (got == want) return {true, label + " ok"};
  std::vector<std::string> diffs;
  for (std::size_t i = 0; i < std::max(got.size(), want.size()); ++i) {
    const std::string g = i < got.size() ? got[i] : "-", w = i < want.size() ? want[i] : "-";
    if (g != w) diffs.push_back(g + " vs " + w);
  }
  return {false, label + ": " + join(diffs, "; ")};
}

Result criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  Heisenberg h;
  const ElementNamer namer = h.spec.namer();
  const SelfSimilarAction d = h.spec.action();
  const SelfSimilarAction dp = h.spec.action_with(h.d_prime);
  Result r1 = compare_rules("D", rules(d, {{"a", h.a}, {"b", h.b}}, namer),
                            {"a(1v)=1a(v)", "a(2v)=4a(v)", "a(3v)=3a(v)", "a(4v)=2(b^{-1}ab)(v)", "b(1v)=2v",
                             "b(2v)=1b(v)", "b(3v)=4v", "b(4v)=3b(v)"});
  Result r2 = compare_rules("D'", rules(dp, {{"a", h.a}, {"b", h.b}}, namer),
                            {"a(1v)=1a(v)", "a(2v)=4a(v)", "a(3v)=3a(v)", "a(4v)=2(b^{-1}ab)(v)", "b(1v)=2a(v)",
                             "b(2v)=1(a^{-1}b)(v)", "b(3v)=4v", "b(4v)=3b(v)"});
  Result r3 = compare_rules("c under D'", rules(dp, {{"c", h.c}}, namer),
                            {"c(1v)=3(a^2b^{-1}a^{-1}b)(v)", "c(2v)=4c(v)", "c(3v)=1a^{-1}(v)", "c(4v)=2c^2(v)"});
  const double t = seconds_since(t0);
  return {r1.passed && r2.passed && r3.passed && t < 1.0,
          r1.detail + " | " + r2.detail + " | " + r3.detail + " | " + std::to_string(t) + " s"};
}

std::string state_list(const ExplorationOutcome& o) {
  if (!o.finite()) return "bound exceeded";
  std::set<GroupElement> s(o.automaton().states.begin(), o.automaton().states.end());
  std::vector<std::string> items;
  for (const auto& g : s) items.push_back(g.to_string());
  return "{" + join(items, " ") + "}";
}

Result criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  Heisenberg h;
  const SelfSimilarAction d = h.spec.action();
  const ExplorationOutcome oa = explore(d, {h.a});
  const ExplorationOutcome ob = explore(d, {h.b});
  const std::set<GroupElement> want_a{h.m.element({1, 0, 0}), h.m.element({1, 0, 1}), h.m.element({1, 0, 2})};
  const std::set<GroupElement> want_b{h.m.identity(), h.b};
  bool ok = oa.finite() && ob.finite();
  if (ok) {
    ok = std::set<GroupElement>(oa.automaton().states.begin(), oa.automaton().states.end()) == want_a &&
         std::set<GroupElement>(ob.automaton().states.begin(), ob.automaton().states.end()) == want_b;
  }
  const double t = seconds_since(t0);
  return {ok && t < 1.0, "states of a " + state_list(oa) + ", of b " + state_list(ob) + " | " + std::to_string(t) + " s"};
}

Result criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  Heisenberg h;
  const SelfSimilarAction dp = h.spec.action_with(h.d_prime);
  bool increasing = true;
  std::vector<std::string> seq;
  Integer last;
  for (std::size_t n = 1; n <= 10; ++n) {
    const GroupElement s = dp.state(h.c, Word(n, 3));
    seq.push_back(s.to_string());
    if (s.coords[0] != 0 || s.coords[1] != 0) {
      increasing = false;
      continue;
    }
    if (n > 1 && s.coords[2] <= last) increasing = false;
    last = s.coords[2];
  }
  const ExplorationOutcome o = explore(dp, {h.c}, ExplorationBounds{100, 1000});
  const double t = seconds_since(t0);
  return {increasing && !o.finite() && t < 5.0,
          "state(c,4^n) = " + join(seq, " ") + "; explore(c) " +
              (o.finite() ? "finite with " + std::to_string(o.automaton().states.size()) + " states" : "bound exceeded") +
              " | " + std::to_string(t) + " s"};
}

Result criterion4() {
  Heisenberg h;
  auto t0 = std::chrono::steady_clock::now();
  const VirtualEndomorphism phi = h.spec.endomorphism();
  const SpectralClassification cl = classify(phi);
  const CoreTriviality core = core_is_trivial(phi);
  const RatPolynomial half = RatPolynomial::linear(Rational(1, 2)), one = RatPolynomial::linear(1);
  const bool heis_ok = cl.verdict == Verdict::MixedFiniteStateCapable && cl.chi == one * half * half &&
                       cl.mu == one * half && cl.split.lcm_order == 1 && core.trivial && core.center_char_poly == half;
  const double t1 = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const Verdict odo = classify(bundled_problem("odometer").endomorphism()).verdict;
  const double t2 = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const Verdict expanding = classify_matrix(RatMatrix::diagonal({Rational(2), Rational(1, 3)})).verdict;
  const double t3 = seconds_since(t0);
  const bool ok = heis_ok && odo == Verdict::StrictlyContracting && expanding == Verdict::NoFiniteStateAction &&
                  t1 < 1.0 && t2 < 1.0 && t3 < 1.0;
  return {ok, std::string("Heisenberg ") + verdict_name(cl.verdict) + " chi " + factor_over_rationals(cl.chi).to_string() +
                  " mu " + factor_over_rationals(cl.mu).to_string() + " lcm " + std::to_string(cl.split.lcm_order) +
                  (core.trivial ? " core trivial" : " core not trivial") + "; odometer " + verdict_name(odo) +
                  "; diag(2,1/3) " + verdict_name(expanding)};
}

Result criterion5() {
  const VirtualEndomorphism h = bundled_problem("heisenberg").endomorphism();
  const VirtualEndomorphism o = bundled_problem("odometer").endomorphism();
  const Integer ih = index(h.subgroup(), h), io = index(o.subgroup(), o);
  const Rational dh = 1 / abs(h.lie_matrix().determinant()), dou = 1 / abs(o.lie_matrix().determinant());
  const bool ok = ih == 4 && dh == 4 && h.subgroup().index() == 4 && io == 2 && dou == 2 && o.subgroup().index() == 2;
  return {ok, "Heisenberg " + ih.get_str() + " (1/det " + dh.get_str() + "), odometer " + io.get_str() + " (1/det " +
                  dou.get_str() + ")"};
}

Result criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  Heisenberg h;
  const VirtualEndomorphism phi = h.spec.endomorphism();
  const DigitSet fs = finite_state_digits(phi);
  const ContractingSubspace sub = contracting_subspace(phi);
  bool inside = true;
  for (const auto& g : fs.reps) inside = inside && in_contracting_subgroup(h.m, sub, g);
  const bool valid = validate_transversal(h.m, fs, phi.subgroup()).valid;
  const SelfSimilarAction act(phi, fs);
  bool finite = true;
  for (const auto& g : {h.a, h.b}) finite = finite && explore(act, {g}).finite();
  const DigitSet nf = non_finite_state_digits(phi, *h.spec.digits, 1);
  const double t = seconds_since(t0);
  const bool ok = inside && valid && finite && nf == h.d_prime && t < 5.0;
  return {ok, std::string("finite-state digits ") + (valid ? "valid" : "invalid") + (inside ? ", inside G_c" : ", outside G_c") +
                  (finite ? ", explorations finite" : ", exploration unbounded") + "; nonfinite " +
                  (nf == h.d_prime ? "= D'" : "!= D'") + " | " + std::to_string(t) + " s"};
}

Result criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  Heisenberg h;
  const SelfSimilarAction d = h.spec.action();
  const LevelGraph g = level_graph(d, {h.a, h.b}, 9);
  const GrowthEstimate g1 = ball_growth(g, word_index(Word(9, 0), 4));
  const GrowthEstimate g2 = ball_growth(g, word_index(Word(9, 1), 4));
  const double t = seconds_since(t0);
  const bool ok = g1.fitted_degree >= 2.5 && g1.fitted_degree <= 3.5 && g2.fitted_degree >= 3.5 &&
                  g2.fitted_degree <= 4.5 && t < 60.0;
  return {ok, "from 1^9: " + std::to_string(g1.fitted_degree) + " (radius " + std::to_string(g1.ball_sizes.size() - 1) +
                  "), from 2^9: " + std::to_string(g2.fitted_degree) + " (radius " +
                  std::to_string(g2.ball_sizes.size() - 1) + ") | " + std::to_string(t) + " s"};
}

Result criterion8() {
  const ProblemSpec o = bundled_problem("odometer");
  const SelfSimilarAction act = o.action();
  bool ok = true;
  std::size_t checked = 0;
  auto check = [&](long long k, std::size_t n) {
    const Word img = act.act(o.model.element({Integer(static_cast<long>(k))}), Word(n, 0));
    const std::vector<int> want = oracle::odometer(k, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) ok = ok && static_cast<int>(img[i]) == want[i];
    ++checked;
  };
  for (std::size_t n = 1; n <= 16; ++n) {
    Word one(n, 0);
    one[0] = 1;
    ok = ok && act.act(o.model.element({1}), Word(n, 0)) == one;
  }
  for (std::size_t n = 1; n <= 10; ++n)
    for (long long k = 0; k < (1LL << n); ++k) check(k, n);
  std::mt19937_64 rng(8);
  for (std::size_t n = 11; n <= 16; ++n)
    for (int i = 0; i < 500; ++i) check(oracle::uniform(rng, 0, (1LL << n) - 1), n);
  return {ok, std::to_string(checked) + " expansions checked"};
}

// Compact versions of the module property suites.
Result criterion9() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(9);
  std::vector<std::string> failures;
  auto rnd = [&](long long b) { return Integer(static_cast<long>(oracle::uniform(rng, -b, b))); };

  for (std::size_t n : {3, 4, 5}) {
    const GroupModel m = GroupModel::unitriangular(n);
    bool ok = true;
    for (int i = 0; i < 300; ++i) {
      std::vector<Integer> x(m.coordinate_count()), y(x.size()), z(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] = rnd(1000);
        y[k] = rnd(1000);
        z[k] = rnd(1000);
      }
      const GroupElement g = m.element(x), h = m.element(y), k = m.element(z);
      ok = ok && m.mul(m.mul(g, h), k) == m.mul(g, m.mul(h, k)) && m.mul(g, m.inverse(g)) == m.identity() &&
           m.mul(m.identity(), g) == g;
      const auto prod = oracle::unitri_coords(oracle::matmul(oracle::unitri(n, x), oracle::unitri(n, y)));
      ok = ok && m.mul(g, h).coords == prod;
    }
    if (!ok) failures.push_back("group axioms UT" + std::to_string(n));
  }

  Heisenberg h;
  for (const DigitSet& digits : {*h.spec.digits, h.d_prime}) {
    const SelfSimilarAction act = h.spec.action_with(digits);
    bool cocycle = true, closed = true, bij = true;
    for (int i = 0; i < 300; ++i) {
      const GroupElement g1 = h.m.element({rnd(50), rnd(50), rnd(50)}), g2 = h.m.element({rnd(50), rnd(50), rnd(50)});
      Word w(static_cast<std::size_t>(oracle::uniform(rng, 0, 10)));
      for (auto& x : w) x = static_cast<Letter>(oracle::uniform(rng, 0, 3));
      cocycle = cocycle && act.state(h.m.mul(g1, g2), w) == h.m.mul(act.state(g1, act.act(g2, w)), act.state(g2, w)) &&
                act.act(h.m.mul(g1, g2), w) == act.act(g1, act.act(g2, w));
      closed = closed && act.state_closed_form(g1, w) == act.state(g1, w);
    }
    for (int i = 0; i < 5; ++i) {
      const GroupElement g = h.m.element({rnd(20), rnd(20), rnd(20)});
      const auto perm = level_permutation(act, g, 6);
      bij = bij && std::set<std::uint32_t>(perm.begin(), perm.end()).size() == perm.size();
    }
    if (!cocycle) failures.push_back("cocycle");
    if (!closed) failures.push_back("closed-form state");
    if (!bij) failures.push_back("level bijectivity");
  }

  {
    int disagreements = 0;
    for (int i = 0; i < 1000; ++i) {
      std::vector<Rational> cf(static_cast<std::size_t>(2 + i % 6));
      for (auto& v : cf) {
        v = Rational(static_cast<long>(oracle::uniform(rng, -9, 9)), static_cast<long>(oracle::uniform(rng, 1, 9)));
        v.canonicalize();
      }
      cf.back() = Rational(static_cast<long>(oracle::uniform(rng, 1, 30)));
      const RatPolynomial p(cf);
      const int deg = p.degree();
      Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
      for (int r = 1; r < deg; ++r) comp(r, r - 1) = 1.0;
      for (int r = 0; r < deg; ++r) comp(r, deg - 1) = -cf[static_cast<std::size_t>(r)].get_d() / cf.back().get_d();
      Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
      double radius = 0;
      for (int r = 0; r < deg; ++r) radius = std::max(radius, std::abs(es.eigenvalues()(r)));
      if (std::abs(radius - 1.0) < 1e-6) continue;
      if (strictly_inside_unit_disk(p) != (radius < 1.0)) ++disagreements;
    }
    if (disagreements) failures.push_back("Schur-Cohn (" + std::to_string(disagreements) + " disagreements)");
  }

  {
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = 1 + static_cast<std::size_t>(i % 5);
      RatMatrix mtx(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          mtx(r, c) = Rational(static_cast<long>(oracle::uniform(rng, -4, 4)), static_cast<long>(oracle::uniform(rng, 1, 4)));
          mtx(r, c).canonicalize();
        }
      ok = ok && char_poly(mtx).evaluate(mtx) == RatMatrix(n, n) && min_poly(mtx).evaluate(mtx) == RatMatrix(n, n) &&
           char_poly(mtx).divisible_by(min_poly(mtx));
    }
    if (!ok) failures.push_back("Cayley-Hamilton");
  }

  const double t = seconds_since(t0);
  return {failures.empty() && t < 300.0,
          (failures.empty() ? std::string("all properties hold") : "failed: " + join(failures, ", ")) + " | " +
              std::to_string(t) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"1 recursion tables", criterion1},        {"2 finite-state certification", criterion2},
      {"3 non-finite-state witness", criterion3}, {"4 spectral classification", criterion4},
      {"5 index identity", criterion5},           {"6 digit constructions", criterion6},
      {"7 Schreier growth", criterion7},          {"8 odometer semantics", criterion8},
      {"9 property suites", criterion9}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Result r{false, ""};
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.passed) ++failed;
    std::printf("%s criterion %s: %s\n", r.passed ? "PASS" : "FAIL", name.c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}

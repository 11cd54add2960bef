#include "selfsim/commands.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fixtures_embedded.hpp"
#include "selfsim/digit_search.hpp"
#include "selfsim/error.hpp"
#include "selfsim/schreier.hpp"
#include "selfsim/spectral.hpp"

namespace selfsim {

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string describe(const GroupElement& g, const ElementNamer& namer) {
  std::string n = namer.name(g);
  return n == g.to_string() ? n : g.to_string() + " = " + n;
}

}  // namespace

CommandOutput run_act(const ProblemSpec& spec, std::string_view element, std::string_view word) {
  const SelfSimilarAction a = spec.action();
  const Word w = a.alphabet().parse(word);
  return CommandOutput{0, a.alphabet().format(a.act(spec.resolve_element(element), w)) + "\n", "", ""};
}

CommandOutput run_state(const ProblemSpec& spec, std::string_view element, std::string_view word) {
  const SelfSimilarAction a = spec.action();
  const ElementNamer namer = spec.namer();
  const Word w = a.alphabet().parse(word);
  const GroupElement g = spec.resolve_element(element);
  auto [image, section] = a.act_and_state(g, w);
  const GroupElement closed = a.state_closed_form(g, w);
  std::ostringstream os;
  os << "image " << a.alphabet().format(image) << "\n";
  os << "state " << describe(section, namer) << "\n";
  os << "closed form " << closed.to_string() << (closed == section ? " (agrees)" : " (DISAGREES)") << "\n";
  return CommandOutput{closed == section ? 0 : 1, os.str(), "", ""};
}

CommandOutput run_automaton(const ProblemSpec& spec, const std::vector<std::string>& seeds, ExplorationBounds bounds) {
  const SelfSimilarAction a = spec.action();
  const ElementNamer namer = spec.namer();
  std::vector<GroupElement> elements;
  for (const auto& s : seeds) elements.push_back(spec.resolve_element(s));
  const ExplorationOutcome o = explore(a, elements, bounds);
  CommandOutput out;
  std::ostringstream os;
  if (o.finite()) {
    const MealyAutomaton& m = o.automaton();
    os << "Finite: " << m.states.size() << " states, " << m.edge_count() << " edges\n";
    os << automaton_to_table(m, a.alphabet(), &namer);
    out.dot = automaton_to_dot(m, a.alphabet(), &namer);
  } else {
    const BoundExceeded& b = o.exceeded();
    os << "BoundExceeded: " << b.states_found << " states found, frontier depth " << b.frontier_depth << "\n";
    os << "witness chain (growing l1 norm):\n";
    for (const auto& link : b.witness_chain)
      os << "  [" << a.alphabet().format(link.word) << "] " << describe(link.state, namer) << "\n";
  }
  out.text = os.str();
  return out;
}

CommandOutput run_recursion(const ProblemSpec& spec, const std::vector<std::string>& names) {
  const SelfSimilarAction a = spec.action();
  const ElementNamer namer = spec.namer();
  std::vector<std::pair<std::string, GroupElement>> elements;
  if (names.empty()) {
    elements = spec.elements;
  } else {
    for (const auto& n : names) elements.emplace_back(n, spec.resolve_element(n));
  }
  std::ostringstream os;
  for (const auto& row : recursion_table(a, elements, namer)) os << row.text << "\n";
  return CommandOutput{0, os.str(), "", ""};
}

CommandOutput run_classify(const ProblemSpec& spec, bool json) {
  const VirtualEndomorphism phi = spec.endomorphism();
  const ValidationReport report = validate_endomorphism(phi);
  const SpectralClassification c = classify(phi);
  const CoreTriviality core = core_is_trivial(phi);
  const Factorization chi_factors = factor_over_rationals(c.chi);

  std::string index_detail;
  bool index_ok = true;
  try {
    index_detail = index(phi.subgroup(), phi).get_str();
  } catch (const Error& e) {
    index_ok = false;
    index_detail = e.what();
  }
  const int status = report.ok() && index_ok ? 0 : 1;

  if (json) {
    nlohmann::ordered_json j;
    j["verdict"] = verdict_name(c.verdict);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < c.lie_matrix.rows(); ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t col = 0; col < c.lie_matrix.cols(); ++col) row.push_back(c.lie_matrix(r, col).get_str());
      rows.push_back(row);
    }
    j["lie_matrix"] = rows;
    j["chi"] = c.chi.to_string();
    j["chi_factored"] = chi_factors.to_string();
    j["mu"] = c.mu.to_string();
    j["schur_cohn"] = {{"chi_strictly_inside", c.chi_strictly_inside},
                       {"remainder_strictly_inside", c.remainder_strictly_inside}};
    nlohmann::ordered_json cyc = nlohmann::ordered_json::array();
    for (const auto& f : c.split.unit_root_part)
      cyc.push_back({{"order", f.order}, {"chi_multiplicity", f.char_multiplicity}, {"mu_multiplicity", f.min_multiplicity}});
    j["cyclotomic"] = cyc;
    j["lcm_order"] = c.split.lcm_order;
    j["remainder"] = c.split.remainder.to_string();
    j["semisimple"] = c.semisimple;
    j["core_trivial"] = core.trivial;
    j["center_char_poly"] = core.center_char_poly.to_string();
    j["integral_factor"] = core.integral_factor ? nlohmann::ordered_json(core.integral_factor->to_string()) : nullptr;
    j["index"] = index_detail;
    j["index_consistent"] = index_ok;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& ch : report.checks)
      checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"exact", ch.exact}, {"detail", ch.detail}});
    j["validation"] = checks;
    return CommandOutput{status, j.dump(2) + "\n", "", ""};
  }

  std::ostringstream os;
  os << "verdict: " << verdict_name(c.verdict) << "\n";
  os << "lie matrix: " << c.lie_matrix.to_string() << "\n";
  os << "chi: " << c.chi.to_string() << " = " << chi_factors.to_string() << "\n";
  os << "mu: " << c.mu.to_string() << "\n";
  os << "chi strictly inside unit disk: " << (c.chi_strictly_inside ? "yes" : "no") << "\n";
  std::vector<std::string> orders;
  for (const auto& f : c.split.unit_root_part) {
    orders.push_back("m=" + std::to_string(f.order) + " (chi " + std::to_string(f.char_multiplicity) + ", mu " +
                     std::to_string(f.min_multiplicity) + ")");
  }
  os << "cyclotomic factors: " << (orders.empty() ? "none" : join(orders, ", ")) << "; lcm order "
     << c.split.lcm_order << "\n";
  os << "remainder: " << c.split.remainder.to_string() << " strictly inside: " << (c.remainder_strictly_inside ? "yes" : "no")
     << "\n";
  os << "semisimple on unit circle: " << (c.semisimple ? "yes" : "no") << "\n";
  os << "core trivial: " << (core.trivial ? "yes" : "no") << " (centre: " << core.factorization.to_string() << ")";
  if (core.integral_factor) os << ", integral factor " << core.integral_factor->to_string();
  os << "\n";
  os << "index: " << index_detail << "\n";
  os << report.to_string();
  return CommandOutput{status, os.str(), "", ""};
}

CommandOutput run_digits(const ProblemSpec& spec, std::string_view mode, long k) {
  const VirtualEndomorphism phi = spec.endomorphism();
  if (mode == "finite") return CommandOutput{0, digits_to_json(finite_state_digits(phi)), "", ""};
  if (mode == "nonfinite") {
    const DigitSet base = spec.digits ? *spec.digits : finite_state_digits(phi);
    return CommandOutput{0, digits_to_json(non_finite_state_digits(phi, base, k)), "", ""};
  }
  throw Error(ErrorCode::Usage, "mode must be 'finite' or 'nonfinite'");
}

CommandOutput run_schreier(const ProblemSpec& spec, std::size_t level, std::string_view basepoint, bool want_dot) {
  const SelfSimilarAction a = spec.action();
  std::vector<GroupElement> gens;
  for (const auto& [_, g] : spec.generator_elements()) gens.push_back(g);
  if (gens.empty()) throw Error(ErrorCode::Usage, "the problem lists no generators");
  const Word base = basepoint.empty() ? Word(level, 0) : a.alphabet().parse(basepoint);
  if (base.size() != level) throw Error(ErrorCode::Usage, "basepoint length must equal the level");
  const LevelGraph g = level_graph(a, gens, level);
  CommandOutput out;
  std::ostringstream os;
  os << "level " << level << ": " << g.vertex_count << " vertices, " << g.edge_count() << " edges\n";
  os << "basepoint " << a.alphabet().format(base) << "\n";
  if (want_dot) out.dot = level_graph_to_dot(g, a.alphabet());
  const GrowthEstimate est = ball_growth(g, word_index(base, a.degree()));
  os << "radius " << est.ball_sizes.size() - 1 << ", component size " << est.ball_sizes.back() << "\n";
  os << "fitted degree " << est.fitted_degree << " over r in [" << est.window_min << ", " << est.window_max
     << "], rms residual " << est.residual << "\n";
  out.csv = growth_to_csv(est);
  out.text = os.str();
  return out;
}

// ---------------------------------------------------------------- bundled reproduction

ProblemSpec bundled_problem(std::string_view name) {
  if (name == "heisenberg") return parse_problem(fixtures::kHeisenbergJson);
  if (name == "odometer") return parse_problem(fixtures::kOdometerJson);
  throw Error(ErrorCode::Usage, "unknown bundled problem '" + std::string(name) + "'");
}

namespace {

ReproductionCheck rules_check(const std::string& name, const SelfSimilarAction& a,
                       const std::vector<std::pair<std::string, GroupElement>>& elements, const ElementNamer& namer,
                       const std::vector<std::string>& expected) {
  std::vector<std::string> got;
  for (const auto& row : recursion_table(a, elements, namer)) got.push_back(row.text);
  std::vector<std::string> mismatches;
  for (std::size_t i = 0; i < std::max(got.size(), expected.size()); ++i) {
    const std::string g = i < got.size() ? got[i] : "-";
    const std::string e = i < expected.size() ? expected[i] : "-";
    if (g != e) mismatches.push_back(g + " (expected " + e + ")");
  }
  return ReproductionCheck{name, mismatches.empty(), mismatches.empty() ? join(got, " ") : join(mismatches, "; ")};
}

ReproductionCheck state_set_check(const std::string& name, const SelfSimilarAction& a, const GroupElement& seed,
                           std::set<GroupElement> expected) {
  const ExplorationOutcome o = explore(a, {seed});
  if (!o.finite()) return ReproductionCheck{name, false, "exploration exceeded its bounds"};
  std::set<GroupElement> got(o.automaton().states.begin(), o.automaton().states.end());
  std::vector<std::string> listed;
  for (const auto& g : got) listed.push_back(g.to_string());
  return ReproductionCheck{name, got == expected, "states " + join(listed, " ")};
}

}  // namespace

std::vector<ReproductionCheck> reproduction_checks() {
  std::vector<ReproductionCheck> out;
  const ProblemSpec h = bundled_problem("heisenberg");
  const ElementNamer namer = h.namer();
  const GroupElement a = h.resolve_element("a"), b = h.resolve_element("b"), c = h.resolve_element("c");
  const SelfSimilarAction act_d = h.action();
  const VirtualEndomorphism phi = h.endomorphism();

  out.push_back(rules_check("recursion table for D", act_d, {{"a", a}, {"b", b}}, namer,
                            {"a(1v)=1a(v)", "a(2v)=4a(v)", "a(3v)=3a(v)", "a(4v)=2(b^{-1}ab)(v)", "b(1v)=2v",
                             "b(2v)=1b(v)", "b(3v)=4v", "b(4v)=3b(v)"}));

  const DigitSet d_prime = non_finite_state_digits(phi, *h.digits, 1);
  const SelfSimilarAction act_dp = h.action_with(d_prime);
  out.push_back(rules_check("recursion table for D'", act_dp, {{"a", a}, {"b", b}}, namer,
                            {"a(1v)=1a(v)", "a(2v)=4a(v)", "a(3v)=3a(v)", "a(4v)=2(b^{-1}ab)(v)", "b(1v)=2a(v)",
                             "b(2v)=1(a^{-1}b)(v)", "b(3v)=4v", "b(4v)=3b(v)"}));
  out.push_back(rules_check("c-rules for D'", act_dp, {{"c", c}}, namer,
                            {"c(1v)=3(a^2b^{-1}a^{-1}b)(v)", "c(2v)=4c(v)", "c(3v)=1a^{-1}(v)", "c(4v)=2c^2(v)"}));

  const GroupModel& m = h.model;
  out.push_back(state_set_check("states of a under D", act_d, a,
                                {a, m.mul(m.mul(m.inverse(b), a), b), m.mul(m.mul(m.power(b, -2), a), m.power(b, 2))}));
  out.push_back(state_set_check("states of b under D", act_d, b, {m.identity(), b}));

  {
    const ExplorationOutcome o = explore(act_dp, {c}, ExplorationBounds{100, 1000});
    out.push_back(ReproductionCheck{"c is not finite-state under D'", !o.finite(),
                             o.finite() ? "closure finished with " + std::to_string(o.automaton().states.size()) + " states"
                                        : "bound exceeded after " + std::to_string(o.exceeded().states_found) + " states"});
  }
  {
    bool increasing = true;
    std::vector<std::string> exps;
    Integer last = 0;
    for (std::size_t n = 1; n <= 10; ++n) {
      const GroupElement s = act_dp.state(c, Word(n, 3));
      if (s.coords[0] != 0 || s.coords[1] != 0) {
        increasing = false;
        exps.push_back(s.to_string());
        continue;
      }
      exps.push_back(s.coords[2].get_str());
      if (n > 1 && s.coords[2] <= last) increasing = false;
      last = s.coords[2];
    }
    out.push_back(ReproductionCheck{"exponents of state(c, 4^n) strictly increase", increasing, "e_n = " + join(exps, ", ")});
  }

  {
    const SpectralClassification cl = classify(phi);
    const bool ok = cl.verdict == Verdict::MixedFiniteStateCapable &&
                    cl.chi == RatPolynomial::linear(1) * RatPolynomial::linear(Rational(1, 2)) *
                                  RatPolynomial::linear(Rational(1, 2)) &&
                    cl.mu == RatPolynomial::linear(1) * RatPolynomial::linear(Rational(1, 2)) && cl.split.lcm_order == 1;
    out.push_back(ReproductionCheck{"Heisenberg classification", ok,
                             std::string(verdict_name(cl.verdict)) + ", chi " + factor_over_rationals(cl.chi).to_string() +
                                 ", mu " + factor_over_rationals(cl.mu).to_string()});
    const CoreTriviality core = core_is_trivial(phi);
    out.push_back(ReproductionCheck{"Heisenberg core is trivial", core.trivial, "centre " + core.factorization.to_string()});
    const Integer idx = index(phi.subgroup(), phi);
    out.push_back(ReproductionCheck{"Heisenberg index", idx == 4, idx.get_str()});
  }
  {
    const DigitSet fs = finite_state_digits(phi);
    std::string listed = digits_to_json(fs);
    while (!listed.empty() && listed.back() == '\n') listed.pop_back();
    out.push_back(ReproductionCheck{"finite-state digits reproduce D", fs == *h.digits, listed});
    const DigitSet expected{{m.element({1, 0, 0}), m.element({0, 1, 0}), m.element({0, 0, 1}), m.element({0, 1, 1})}};
    out.push_back(ReproductionCheck{"non-finite-state digits reproduce D'", d_prime == expected, ""});
  }

  {
    const ProblemSpec o = bundled_problem("odometer");
    const VirtualEndomorphism po = o.endomorphism();
    const SpectralClassification cl = classify(po);
    const CoreTriviality core = core_is_trivial(po);
    out.push_back(ReproductionCheck{"odometer classification", cl.verdict == Verdict::StrictlyContracting && core.trivial,
                             std::string(verdict_name(cl.verdict)) + (core.trivial ? ", core trivial" : ", core not trivial")});
    const SelfSimilarAction ao = o.action();
    bool ok = true;
    for (unsigned long k = 0; k < 1024 && ok; ++k) {
      const Word w = ao.act(o.model.element({Integer(k)}), Word(10, 0));
      for (std::size_t i = 0; i < 10; ++i) ok = ok && w[i] == ((k >> i) & 1UL);
    }
    out.push_back(ReproductionCheck{"odometer spells binary expansions", ok, "k < 2^10, words of length 10"});
  }

  {
    const LevelGraph g = level_graph(act_d, {a, b}, 9);
    const GrowthEstimate g1 = ball_growth(g, word_index(Word(9, 0), 4));
    const GrowthEstimate g2 = ball_growth(g, word_index(Word(9, 1), 4));
    out.push_back(ReproductionCheck{"growth degree near 3 from 1^9", g1.fitted_degree >= 2.5 && g1.fitted_degree <= 3.5,
                             "fitted " + std::to_string(g1.fitted_degree)});
    out.push_back(ReproductionCheck{"growth degree near 4 from 2^9", g2.fitted_degree >= 3.5 && g2.fitted_degree <= 4.5,
                             "fitted " + std::to_string(g2.fitted_degree)});
  }
  return out;
}

CommandOutput run_reproduction_suite() {
  CommandOutput out;
  std::ostringstream os;
  int failed = 0;
  for (const auto& c : reproduction_checks()) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
    failed += c.passed ? 0 : 1;
  }
  os << failed << " failed\n";
  out.text = os.str();
  out.exit_code = failed ? 1 : 0;
  return out;
}

}  // namespace selfsim

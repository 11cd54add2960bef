#include "selfsim/digit_search.hpp"

#include <sstream>

#include "selfsim/error.hpp"

namespace selfsim {

ContractingSubspace contracting_subspace(const VirtualEndomorphism& phi) {
  ContractingSubspace out;
  out.classification = classify(phi);
  if (out.classification.verdict == Verdict::NoFiniteStateAction) {
    throw Error(ErrorCode::Unsupported, "phi admits no finite-state self-similar action");
  }
  const RatPolynomial& mu = out.classification.mu;
  out.contracting_factor = cyclotomic_split(mu, mu).remainder;
  out.basis = out.contracting_factor.evaluate(phi.lie_matrix()).kernel_basis();
  return out;
}

bool in_contracting_subgroup(const GroupModel& model, const ContractingSubspace& sub, const GroupElement& g) {
  return in_span(sub.basis, model.log_map(g).coords);
}

namespace {

// 0, 1, -1, 2, -2, ...
Integer value_of_key(long key) { return key % 2 ? Integer((key + 1) / 2) : Integer(-key / 2); }

}  // namespace

DigitSet finite_state_digits(const VirtualEndomorphism& phi, long max_radius) {
  const ContractingSubspace sub = contracting_subspace(phi);
  const auto& model = phi.model();
  const auto& h = phi.subgroup();
  const Integer index = h.index();
  if (!index.fits_ulong_p() || index > 1000000) throw Error(ErrorCode::ResourceCap, "index " + index.get_str() + " is too large");
  const std::size_t d = index.get_ui();
  const std::size_t dim = model.coordinate_count();

  DigitSet out;
  std::vector<GroupElement> inverses;
  auto consider = [&](const GroupElement& g) {
    if (!in_contracting_subgroup(model, sub, g)) return;
    for (const auto& inv : inverses)
      if (h.contains(model.mul(inv, g))) return;
    out.reps.push_back(g);
    inverses.push_back(model.inverse(g));
  };

  consider(model.identity());
  for (long r = 1; r <= max_radius && out.size() < d; ++r) {
    // Every vector with keys in [0, 2r], first coordinate varying fastest; keep the shell |v|_inf = r.
    std::vector<long> keys(dim, 0);
    for (;;) {
      bool on_shell = false;
      for (long k : keys) on_shell = on_shell || k >= 2 * r - 1;
      if (on_shell) {
        GroupElement g = model.identity();
        for (std::size_t i = 0; i < dim; ++i) g.coords[i] = value_of_key(keys[i]);
        consider(g);
        if (out.size() == d) break;
      }
      std::size_t i = 0;
      while (i < dim && keys[i] == 2 * r) keys[i++] = 0;
      if (i == dim) break;
      ++keys[i];
    }
  }
  if (out.size() < d) {
    throw Error(ErrorCode::SearchExhausted, "found " + std::to_string(out.size()) + " of " + std::to_string(d) +
                                                " representatives within radius " + std::to_string(max_radius));
  }
  return out;
}

GroupElement fixed_element(const VirtualEndomorphism& phi, long cap) {
  const auto& model = phi.model();
  const RatMatrix& m = phi.lie_matrix();
  const auto kernel = (m - RatMatrix::identity(m.rows())).kernel_basis();
  if (kernel.empty()) throw Error(ErrorCode::NoFixedElement, "1 is not an eigenvalue of phi");

  RatVector v = kernel.front();
  Integer den = 1;
  for (const auto& c : v) den = lcm(den, Integer(c.get_den()));
  Integer num = 0;
  for (auto& c : v) {
    c *= den;
    num = gcd(num, Integer(c.get_num()));
  }
  for (auto& c : v) c /= num;

  for (long t = 1; t <= cap; ++t) {
    RatVector scaled = v;
    for (auto& c : scaled) c *= t;
    RatVector g = model.exp_rational(LieVector{scaled});
    bool integral = true;
    for (const auto& c : g) integral = integral && is_integral(c);
    if (!integral) continue;
    GroupElement e = model.identity();
    for (std::size_t i = 0; i < g.size(); ++i) e.coords[i] = g[i].get_num();
    if (!phi.subgroup().contains(e)) continue;
    if (!(phi.apply(e) == e)) throw Error(ErrorCode::Internal, "kernel vector of M - I is not fixed by phi");
    return e;
  }
  throw Error(ErrorCode::SearchExhausted, "no multiple up to " + std::to_string(cap) + " of the fixed direction lies in H");
}

DigitSet non_finite_state_digits(const VirtualEndomorphism& phi, const DigitSet& digits, long k) {
  const auto& model = phi.model();
  const TransversalCheck tc = validate_transversal(model, digits, phi.subgroup());
  if (!tc.valid) throw Error(ErrorCode::InvalidTransversal, tc.reason);
  if (k < 1) throw Error(ErrorCode::InvalidK, "k must be a positive integer");
  std::size_t identity_at = digits.size();
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (digits.reps[i].is_identity()) identity_at = i;
  if (identity_at == digits.size()) throw Error(ErrorCode::Usage, "the digit set must contain the identity");

  DigitSet out;
  for (const auto& r : digits.reps) out.reps.push_back(model.power(r, k));
  const TransversalCheck powered = validate_transversal(model, out, phi.subgroup());
  if (!powered.valid) throw Error(ErrorCode::InvalidK, "k = " + std::to_string(k) + ": " + powered.reason);

  out.reps[identity_at] = fixed_element(phi);
  const TransversalCheck final_check = validate_transversal(model, out, phi.subgroup());
  if (!final_check.valid) throw Error(ErrorCode::Internal, final_check.reason);
  return out;
}

DigitSearchReport empirical_classify(const VirtualEndomorphism& phi, const DigitSet& digits,
                                     const std::vector<GroupElement>& seeds, ExplorationBounds bounds, long first_label) {
  DigitSearchReport report;
  report.digits = digits;
  report.seeds = seeds;
  SelfSimilarAction action(phi, digits, first_label);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    report.outcomes.push_back(explore(action, {seeds[i]}, bounds));
    if (!report.outcomes.back().finite() && report.all_finite) {
      report.all_finite = false;
      report.unbounded_seed = i;
    }
  }
  return report;
}

std::string DigitSearchReport::to_string(const Alphabet& alphabet) const {
  std::ostringstream os;
  os << (all_finite ? "AllSeedsFinite" : "WitnessUnbounded") << "\n";
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto& o = outcomes[i];
    os << "  seed " << seeds[i].to_string() << ": ";
    if (o.finite()) {
      os << "finite, " << o.automaton().states.size() << " states\n";
      continue;
    }
    const auto& b = o.exceeded();
    os << "bound exceeded after " << b.states_found << " states at depth " << b.frontier_depth << "\n";
    for (const auto& link : b.witness_chain)
      os << "    [" << alphabet.format(link.word) << "] " << link.state.to_string() << "\n";
  }
  return os.str();
}

}  // namespace selfsim

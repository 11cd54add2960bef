#include "selfsim/action.hpp"

#include <cctype>
#include <charconv>

#include "selfsim/error.hpp"

namespace selfsim {

std::string Alphabet::format(const Word& w) const {
  const bool single_digit = first_label >= 0 && first_label + static_cast<long>(size) - 1 <= 9;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single_digit && i > 0) out += ',';
    out += std::to_string(label(w[i]));
  }
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  const bool single_digit = first_label >= 0 && first_label + static_cast<long>(size) - 1 <= 9;
  std::vector<long> labels;
  if (single_digit && text.find(',') == std::string_view::npos) {
    for (char ch : text) {
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw Error(ErrorCode::Parse, "bad letter '" + std::string(1, ch) + "'");
      labels.push_back(ch - '0');
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size() && !text.empty()) {
      std::size_t end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view item = text.substr(pos, end - pos);
      while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
      while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
      long v = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
        throw Error(ErrorCode::Parse, "bad letter '" + std::string(item) + "'");
      }
      labels.push_back(v);
      pos = end + 1;
      if (end == text.size()) break;
    }
  }
  Word w;
  w.reserve(labels.size());
  for (long v : labels) {
    if (v < first_label || v >= first_label + static_cast<long>(size)) {
      throw Error(ErrorCode::Parse, "letter " + std::to_string(v) + " outside the alphabet");
    }
    w.push_back(static_cast<Letter>(v - first_label));
  }
  return w;
}

SelfSimilarAction::SelfSimilarAction(VirtualEndomorphism phi, DigitSet digits, long first_label)
    : phi_(std::move(phi)), digits_(std::move(digits)) {
  const ValidationReport report = validate_endomorphism(phi_);
  for (const char* name : {"integrality", "homomorphism", "lie-linearity", "injectivity"}) {
    const ValidationCheck* c = report.find(name);
    if (!c->passed) throw Error(ErrorCode::NotAnAutomorphism, std::string(name) + " check failed: " + c->detail);
  }
  if (!report.find("index")->passed) throw Error(ErrorCode::InconsistentEndomorphism, report.find("index")->detail);
  const TransversalCheck tc = validate_transversal(model(), digits_, phi_.subgroup());
  if (!tc.valid) throw Error(ErrorCode::InvalidTransversal, tc.reason);
  for (const auto& r : digits_.reps) inverse_reps_.push_back(model().inverse(r));
  alphabet_ = Alphabet{digits_.size(), first_label};
}

void SelfSimilarAction::check_letter(Letter x) const {
  if (x >= degree()) throw Error(ErrorCode::Usage, "letter index " + std::to_string(x) + " outside the alphabet");
}

LetterStep SelfSimilarAction::step(const GroupElement& g, Letter x) const {
  check_letter(x);
  const GroupElement gx = model().mul(g, digits_.reps[x]);
  std::optional<LetterStep> found;
  for (Letter y = 0; y < degree(); ++y) {
    GroupElement h = model().mul(inverse_reps_[y], gx);
    if (!phi_.subgroup().contains(h)) continue;
    if (found) throw Error(ErrorCode::InvalidTransversal, "two output letters for one step");
    found = LetterStep{y, phi_.apply(h)};
  }
  if (!found) throw Error(ErrorCode::InvalidTransversal, "no output letter for " + g.to_string());
  return *found;
}

std::pair<Word, GroupElement> SelfSimilarAction::act_and_state(const GroupElement& g, const Word& w) const {
  model().check(g);
  Word out;
  out.reserve(w.size());
  GroupElement current = g;
  for (Letter x : w) {
    LetterStep s = step(current, x);
    out.push_back(s.output);
    current = std::move(s.state);
  }
  return {std::move(out), std::move(current)};
}

Word SelfSimilarAction::act(const GroupElement& g, const Word& w) const { return act_and_state(g, w).first; }

GroupElement SelfSimilarAction::state(const GroupElement& g, const Word& w) const { return act_and_state(g, w).second; }

GroupElement SelfSimilarAction::state_closed_form(const GroupElement& g, const Word& w) const {
  model().check(g);
  const Word y = act(g, w);
  const std::size_t n = w.size();
  const auto& m = model();
  auto rat = [](const GroupElement& e) { return RatVector(e.coords.begin(), e.coords.end()); };

  // powers[j] = P^j
  std::vector<RatMatrix> powers{RatMatrix::identity(m.coordinate_count())};
  for (std::size_t j = 1; j <= n; ++j) powers.push_back(phi_.phi_coords() * powers.back());

  // phi(h_{y_n}^-1) phi^2(h_{y_{n-1}}^-1) ... phi^n(h_{y_1}^-1) phi^n(g) phi^n(h_{x_1}) ... phi(h_{x_n})
  RatVector acc(m.coordinate_count());
  for (std::size_t i = n; i >= 1; --i) acc = m.mul(acc, powers[n - i + 1] * rat(inverse_reps_[y[i - 1]]));
  acc = m.mul(acc, powers[n] * rat(g));
  for (std::size_t i = 1; i <= n; ++i) acc = m.mul(acc, powers[n - i + 1] * rat(digits_.reps[w[i - 1]]));

  GroupElement out = m.identity();
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (!is_integral(acc[i])) throw Error(ErrorCode::NotInLattice, "closed-form section is not integral: (" + join_coords(acc) + ")");
    out.coords[i] = acc[i].get_num();
  }
  return out;
}

WreathRecursion SelfSimilarAction::wreath_recursion(const GroupElement& g) const {
  WreathRecursion r;
  for (Letter x = 0; x < degree(); ++x) {
    LetterStep s = step(g, x);
    r.permutation.push_back(s.output);
    r.states.push_back(std::move(s.state));
  }
  return r;
}

}  // namespace selfsim

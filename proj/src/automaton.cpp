#include "selfsim/automaton.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "selfsim/error.hpp"

namespace selfsim {

std::optional<std::size_t> MealyAutomaton::find(const GroupElement& g) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == g) return i;
  return std::nullopt;
}

std::pair<Word, std::size_t> MealyAutomaton::run(std::size_t state, const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    const Transition& t = transitions.at(state).at(x);
    out.push_back(t.output);
    state = t.target;
  }
  return {std::move(out), state};
}

namespace {

Integer l1_norm(const GroupElement& g) {
  Integer n = 0;
  for (const auto& c : g.coords) n += abs(c);
  return n;
}

struct Parent {
  std::size_t state;
  Letter letter;
};

BoundExceeded make_witness(const std::vector<GroupElement>& states, const std::vector<std::optional<Parent>>& parents,
                           std::size_t frontier_depth) {
  BoundExceeded out;
  out.states_found = states.size();
  out.frontier_depth = frontier_depth;
  if (states.empty()) return out;
  std::size_t best = 0;
  Integer best_norm = l1_norm(states[0]);
  for (std::size_t i = 1; i < states.size(); ++i) {
    Integer n = l1_norm(states[i]);
    if (n > best_norm) {
      best = i;
      best_norm = n;
    }
  }
  std::vector<std::size_t> path{best};
  Word letters;
  while (parents[path.back()]) {
    letters.push_back(parents[path.back()]->letter);
    path.push_back(parents[path.back()]->state);
  }
  std::reverse(path.begin(), path.end());
  std::reverse(letters.begin(), letters.end());
  Integer last = -1;
  for (std::size_t i = 0; i < path.size(); ++i) {
    Integer n = l1_norm(states[path[i]]);
    if (n <= last) continue;
    last = n;
    out.witness_chain.push_back(WitnessLink{Word(letters.begin(), letters.begin() + static_cast<long>(i)), states[path[i]]});
  }
  return out;
}

}  // namespace

ExplorationOutcome explore(const SelfSimilarAction& action, const std::vector<GroupElement>& seeds, ExplorationBounds bounds) {
  if (bounds.max_states == 0 || bounds.max_depth == 0) throw Error(ErrorCode::Usage, "exploration bounds must be positive");
  MealyAutomaton m;
  m.degree = action.degree();
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index;
  std::vector<std::optional<Parent>> parents;
  std::vector<std::size_t> depth;

  for (const auto& s : seeds) {
    action.model().check(s);
    auto it = index.find(s);
    if (it != index.end()) {
      m.seeds.push_back(it->second);
      continue;
    }
    if (m.states.size() >= bounds.max_states) return {make_witness(m.states, parents, 0)};
    index.emplace(s, m.states.size());
    m.seeds.push_back(m.states.size());
    m.states.push_back(s);
    parents.emplace_back();
    depth.push_back(0);
  }

  for (std::size_t i = 0; i < m.states.size(); ++i) {
    std::vector<Transition> row;
    row.reserve(m.degree);
    for (Letter x = 0; x < m.degree; ++x) {
      LetterStep st = action.step(m.states[i], x);
      auto it = index.find(st.state);
      std::size_t target;
      if (it != index.end()) {
        target = it->second;
      } else {
        const std::size_t d = depth[i] + 1;
        if (m.states.size() >= bounds.max_states || d > bounds.max_depth) {
          return {make_witness(m.states, parents, d)};
        }
        target = m.states.size();
        index.emplace(st.state, target);
        m.states.push_back(std::move(st.state));
        parents.push_back(Parent{i, x});
        depth.push_back(d);
      }
      row.push_back(Transition{st.output, target});
    }
    m.transitions.push_back(std::move(row));
  }
  return {std::move(m)};
}

// ---------------------------------------------------------------- naming

std::string render_syllables(const std::vector<std::pair<std::string, long>>& letters) {
  std::string out;
  std::size_t i = 0;
  while (i < letters.size()) {
    long e = 0;
    std::size_t j = i;
    while (j < letters.size() && letters[j].first == letters[i].first) e += letters[j++].second;
    if (e != 0) {
      out += letters[i].first;
      if (e >= 2 && e <= 9) {
        out += "^" + std::to_string(e);
      } else if (e != 1) {
        out += "^{" + std::to_string(e) + "}";
      }
    }
    i = j;
  }
  return out;
}

ElementNamer::ElementNamer(const GroupModel& model, std::vector<std::pair<std::string, GroupElement>> named,
                           std::vector<std::string> generators, std::size_t max_word_length)
    : model_(model) {
  for (const auto& [n, g] : named) {
    model_.check(g);
    by_name_.emplace(n, g);
  }
  names_.emplace(model_.identity(), Name{"e", false});
  for (long k = 1; k <= 8; ++k) {
    for (long sign : {1L, -1L}) {
      for (const auto& [n, g] : named) names_.emplace(model_.power(g, sign * k), Name{render_syllables({{n, sign * k}}), false});
    }
  }

  struct Partial {
    std::vector<std::pair<std::size_t, long>> symbols;
    GroupElement value;
  };
  std::vector<GroupElement> gens;
  for (const auto& gname : generators) {
    auto it = by_name_.find(gname);
    if (it == by_name_.end()) throw Error(ErrorCode::Parse, "generator '" + gname + "' is not a named element");
    gens.push_back(it->second);
  }
  std::vector<Partial> layer{Partial{{}, model_.identity()}};
  for (std::size_t len = 1; len <= max_word_length && !gens.empty(); ++len) {
    std::vector<Partial> next;
    for (const auto& p : layer) {
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        for (long sign : {1L, -1L}) {
          if (!p.symbols.empty() && p.symbols.back().first == gi && p.symbols.back().second == -sign) continue;
          Partial q = p;
          q.symbols.emplace_back(gi, sign);
          q.value = model_.mul(p.value, sign > 0 ? gens[gi] : model_.inverse(gens[gi]));
          if (!names_.count(q.value)) {
            std::vector<std::pair<std::string, long>> letters;
            for (auto [i, s] : q.symbols) letters.emplace_back(generators[i], s);
            bool compound = false;
            for (const auto& l : letters) compound = compound || l.first != letters.front().first;
            names_.emplace(q.value, Name{render_syllables(letters), compound});
          }
          next.push_back(std::move(q));
        }
      }
    }
    layer = std::move(next);
  }
}

std::string ElementNamer::name(const GroupElement& g) const {
  auto it = names_.find(g);
  return it != names_.end() ? it->second.text : g.to_string();
}

std::string ElementNamer::operator_form(const GroupElement& g) const {
  auto it = names_.find(g);
  if (it == names_.end()) return g.to_string();
  return it->second.compound ? "(" + it->second.text + ")" : it->second.text;
}

std::optional<GroupElement> ElementNamer::lookup(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::vector<RecursionRule> recursion_table(const SelfSimilarAction& action,
                                           const std::vector<std::pair<std::string, GroupElement>>& elements,
                                           const ElementNamer& namer) {
  std::vector<RecursionRule> rows;
  const Alphabet& abc = action.alphabet();
  for (const auto& [name, g] : elements) {
    for (Letter x = 0; x < action.degree(); ++x) {
      LetterStep st = action.step(g, x);
      std::string text = name + "(" + abc.format(x) + "v)=" + abc.format(st.output);
      text += st.state.is_identity() ? "v" : namer.operator_form(st.state) + "(v)";
      rows.push_back(RecursionRule{name, x, st.output, std::move(st.state), std::move(text)});
    }
  }
  return rows;
}

namespace {

std::string state_label(const MealyAutomaton& a, std::size_t i, const ElementNamer* namer) {
  return namer ? namer->name(a.states[i]) : a.states[i].to_string();
}

}  // namespace

std::string automaton_to_dot(const MealyAutomaton& a, const Alphabet& alphabet, const ElementNamer* namer) {
  std::ostringstream os;
  os << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    bool seed = std::find(a.seeds.begin(), a.seeds.end(), i) != a.seeds.end();
    os << "  s" << i << " [label=\"" << state_label(a, i, namer) << "\"" << (seed ? ", shape=doublecircle" : "") << "];\n";
  }
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    for (Letter x = 0; x < a.degree; ++x) {
      const Transition& t = a.transitions[i][x];
      os << "  s" << i << " -> s" << t.target << " [label=\"" << alphabet.format(x) << "|" << alphabet.format(t.output)
         << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string automaton_to_table(const MealyAutomaton& a, const Alphabet& alphabet, const ElementNamer* namer) {
  std::ostringstream os;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    os << "s" << i << " " << state_label(a, i, namer) << " " << a.states[i].to_string() << "\n";
    for (Letter x = 0; x < a.degree; ++x) {
      const Transition& t = a.transitions[i][x];
      os << "  " << alphabet.format(x) << "|" << alphabet.format(t.output) << " -> s" << t.target << "\n";
    }
  }
  return os.str();
}

}  // namespace selfsim

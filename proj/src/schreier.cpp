#include "selfsim/schreier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "selfsim/automaton.hpp"
#include "selfsim/error.hpp"

namespace selfsim {

std::size_t word_index(const Word& w, std::size_t degree) {
  std::size_t idx = 0;
  for (Letter x : w) idx = idx * degree + x;
  return idx;
}

Word index_word(std::size_t index, std::size_t degree, std::size_t level) {
  Word w(level);
  for (std::size_t i = level; i-- > 0;) {
    w[i] = static_cast<Letter>(index % degree);
    index /= degree;
  }
  return w;
}

namespace {

using Perm = std::vector<std::uint32_t>;

class PermutationCache {
 public:
  explicit PermutationCache(const SelfSimilarAction& action) : action_(action) {}

  std::shared_ptr<const Perm> get(const GroupElement& g, std::size_t level) {
    auto key = std::make_pair(g, level);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    auto perm = std::make_shared<Perm>();
    if (level == 0) {
      perm->push_back(0);
    } else {
      const std::size_t d = action_.degree();
      std::size_t block = 1;
      for (std::size_t i = 1; i < level; ++i) block *= d;
      perm->resize(block * d);
      const WreathRecursion rec = action_.wreath_recursion(g);
      for (Letter x = 0; x < d; ++x) {
        auto sub = get(rec.states[x], level - 1);
        for (std::size_t i = 0; i < block; ++i)
          (*perm)[x * block + i] = static_cast<std::uint32_t>(rec.permutation[x] * block + (*sub)[i]);
      }
    }
    memo_.emplace(std::move(key), perm);
    return perm;
  }

 private:
  const SelfSimilarAction& action_;
  std::map<std::pair<GroupElement, std::size_t>, std::shared_ptr<const Perm>> memo_;
};

std::size_t checked_vertex_count(std::size_t degree, std::size_t level, std::size_t cap) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < level; ++i) {
    if (count > cap / degree) throw Error(ErrorCode::ResourceCap, "level " + std::to_string(level) + " exceeds the vertex cap");
    count *= degree;
  }
  if (count > cap) throw Error(ErrorCode::ResourceCap, "level " + std::to_string(level) + " exceeds the vertex cap");
  return count;
}

}  // namespace

std::vector<std::uint32_t> level_permutation(const SelfSimilarAction& action, const GroupElement& g, std::size_t level) {
  checked_vertex_count(action.degree(), level, std::size_t{1} << 20);
  PermutationCache cache(action);
  return *cache.get(g, level);
}

LevelGraph level_graph(const SelfSimilarAction& action, const std::vector<GroupElement>& generators, std::size_t level,
                       std::size_t max_vertices) {
  LevelGraph graph;
  graph.degree = action.degree();
  graph.level = level;
  graph.vertex_count = checked_vertex_count(graph.degree, level, max_vertices);
  PermutationCache cache(action);
  for (const auto& s : generators) graph.generator_permutations.push_back(*cache.get(s, level));

  std::vector<std::vector<std::uint32_t>> adj(graph.vertex_count);
  for (const auto& perm : graph.generator_permutations) {
    for (std::size_t v = 0; v < graph.vertex_count; ++v) {
      const std::uint32_t u = perm[v];
      if (u == v) continue;
      adj[v].push_back(u);
      adj[u].push_back(static_cast<std::uint32_t>(v));
    }
  }
  graph.offsets.assign(1, 0);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    graph.neighbors.insert(graph.neighbors.end(), list.begin(), list.end());
    graph.offsets.push_back(graph.neighbors.size());
  }
  return graph;
}

std::pair<double, double> loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = std::log(y[i]) - (intercept + slope * std::log(x[i]));
    ss += e * e;
  }
  return {slope, std::sqrt(ss / n)};
}

GrowthEstimate ball_growth(const LevelGraph& graph, std::size_t basepoint) {
  if (basepoint >= graph.vertex_count) throw Error(ErrorCode::Usage, "basepoint outside the graph");
  std::vector<std::uint32_t> dist(graph.vertex_count, UINT32_MAX);
  std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(basepoint)};
  dist[basepoint] = 0;
  std::vector<std::uint64_t> shell{1};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t v = queue[head];
    for (std::size_t e = graph.offsets[v]; e < graph.offsets[v + 1]; ++e) {
      const std::uint32_t u = graph.neighbors[e];
      if (dist[u] != UINT32_MAX) continue;
      dist[u] = dist[v] + 1;
      if (shell.size() <= dist[u]) shell.push_back(0);
      ++shell[dist[u]];
      queue.push_back(u);
    }
  }
  GrowthEstimate g;
  std::uint64_t total = 0;
  for (auto s : shell) g.ball_sizes.push_back(total += s);
  const std::size_t radius = g.ball_sizes.size() - 1;
  if (radius < 8) {
    throw Error(ErrorCode::InsufficientRange, "component radius " + std::to_string(radius) + " is below 8");
  }
  g.window_min = std::max<std::size_t>(1, radius / 4);
  g.window_max = 3 * radius / 4;
  std::vector<double> xs, ys;
  for (std::size_t r = g.window_min; r <= g.window_max; ++r) {
    xs.push_back(static_cast<double>(r));
    ys.push_back(static_cast<double>(g.ball_sizes[r]));
  }
  std::tie(g.fitted_degree, g.residual) = loglog_fit(xs, ys);
  return g;
}

std::vector<StabilizerEntry> stabilizer_probe(const SelfSimilarAction& action,
                                              const std::vector<std::pair<std::string, GroupElement>>& generators,
                                              const Word& w, std::size_t radius) {
  const auto& model = action.model();
  struct Partial {
    std::vector<std::pair<std::size_t, long>> symbols;
    GroupElement value;
  };
  std::vector<StabilizerEntry> out{StabilizerEntry{"e", model.identity()}};
  std::set<GroupElement> seen{model.identity()};
  std::vector<GroupElement> inverses;
  for (const auto& [_, g] : generators) inverses.push_back(model.inverse(g));

  std::vector<Partial> layer{Partial{{}, model.identity()}};
  for (std::size_t len = 1; len <= radius; ++len) {
    std::vector<Partial> next;
    for (const auto& p : layer) {
      for (std::size_t gi = 0; gi < generators.size(); ++gi) {
        for (long sign : {1L, -1L}) {
          if (!p.symbols.empty() && p.symbols.back().first == gi && p.symbols.back().second == -sign) continue;
          Partial q{p.symbols, model.mul(p.value, sign > 0 ? generators[gi].second : inverses[gi])};
          q.symbols.emplace_back(gi, sign);
          if (!seen.count(q.value) && action.act(q.value, w) == w) {
            seen.insert(q.value);
            std::vector<std::pair<std::string, long>> letters;
            for (auto [i, s] : q.symbols) letters.emplace_back(generators[i].first, s);
            out.push_back(StabilizerEntry{render_syllables(letters), q.value});
          }
          next.push_back(std::move(q));
        }
      }
    }
    layer = std::move(next);
  }
  return out;
}

std::string level_graph_to_dot(const LevelGraph& graph, const Alphabet& alphabet) {
  std::ostringstream os;
  os << "graph level" << graph.level << " {\n";
  for (std::size_t v = 0; v < graph.vertex_count; ++v) {
    os << "  v" << v << " [label=\"" << alphabet.format(index_word(v, graph.degree, graph.level)) << "\"];\n";
  }
  for (std::size_t v = 0; v < graph.vertex_count; ++v) {
    for (std::size_t e = graph.offsets[v]; e < graph.offsets[v + 1]; ++e)
      if (graph.neighbors[e] > v) os << "  v" << v << " -- v" << graph.neighbors[e] << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string growth_to_csv(const GrowthEstimate& growth) {
  std::ostringstream os;
  os << "r,ball_size\n";
  for (std::size_t r = 0; r < growth.ball_sizes.size(); ++r) os << r << "," << growth.ball_sizes[r] << "\n";
  return os.str();
}

}  // namespace selfsim

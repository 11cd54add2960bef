#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "selfsim/action.hpp"

namespace selfsim {

/// Vertex index of a word of length n: first letter most significant.
std::size_t word_index(const Word& w, std::size_t degree);
Word index_word(std::size_t index, std::size_t degree, std::size_t level);

/// Permutation of the d^n vertices induced by g.
std::vector<std::uint32_t> level_permutation(const SelfSimilarAction& action, const GroupElement& g, std::size_t level);

/// Simple undirected graph on X^n with edges {v, s(v)}, stored as CSR.
struct LevelGraph {
  std::size_t degree = 0;
  std::size_t level = 0;
  std::size_t vertex_count = 0;
  std::vector<std::size_t> offsets;  // vertex_count + 1 entries
  std::vector<std::uint32_t> neighbors;
  std::vector<std::vector<std::uint32_t>> generator_permutations;

  std::size_t edge_count() const { return neighbors.size() / 2; }
};

LevelGraph level_graph(const SelfSimilarAction& action, const std::vector<GroupElement>& generators, std::size_t level,
                       std::size_t max_vertices = std::size_t{1} << 20);

struct GrowthEstimate {
  std::vector<std::uint64_t> ball_sizes;  // |B(r)| for r = 0..R
  double fitted_degree = 0;
  std::size_t window_min = 0;
  std::size_t window_max = 0;
  double residual = 0;  // RMS of the log-log fit
};

/// BFS balls from `basepoint`, slope of log|B(r)| against log r over [R/4, 3R/4].
/// Throws InsufficientRange when R < 8.
GrowthEstimate ball_growth(const LevelGraph& graph, std::size_t basepoint);

/// Least-squares slope of log y against log x; returns {slope, rms residual}.
std::pair<double, double> loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

struct StabilizerEntry {
  std::string word;  // over the generator names, "e" for the empty word
  GroupElement element;
};

/// Distinct elements given by reduced words of length <= radius over S and S^-1 that fix w.
std::vector<StabilizerEntry> stabilizer_probe(const SelfSimilarAction& action,
                                              const std::vector<std::pair<std::string, GroupElement>>& generators,
                                              const Word& w, std::size_t radius = 4);

std::string level_graph_to_dot(const LevelGraph& graph, const Alphabet& alphabet);
std::string growth_to_csv(const GrowthEstimate& growth);

}  // namespace selfsim

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace chromlc {

using VertexPair = std::pair<int, int>;

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double weight = 0;
};

// Undirected simple graph on vertices 0..n-1 with strictly positive edge
// weights. Edges are kept in lexicographic (u, v) order with u < v.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(int n_vertices, std::vector<WeightedEdge> edges = {});

  int vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }

  std::vector<int> degrees() const;
  int max_degree() const;

 private:
  int n_ = 0;
  std::vector<WeightedEdge> edges_;
};

// A partition of edges into matchings; classes[c] holds the pairs of color c.
struct EdgeColoring {
  std::vector<std::vector<VertexPair>> classes;

  std::size_t color_count() const noexcept { return classes.size(); }
};

// Every edge of g in exactly one class, classes pairwise vertex-disjoint
// inside, and nothing that is not an edge of g.
bool is_valid_coloring(const WeightedGraph& g, const EdgeColoring& coloring);

// Edges with weight strictly greater than r.
WeightedGraph threshold_subgraph(const WeightedGraph& g, double r);

struct ChromaticResult {
  int index = 0;
  EdgeColoring coloring;
  bool exact = true;  // false: Misra-Gries upper bound, search was skipped
};

inline constexpr std::size_t kExactSearchEdgeCap = 64;

// Minimum number of matchings covering g, with a witnessing coloring.
// Throws TooLarge when g has more than `edge_cap` edges.
ChromaticResult chromatic_index_exact(const WeightedGraph& g,
                                      std::size_t edge_cap = kExactSearchEdgeCap);

// Exact below the cap, Misra-Gries (flagged inexact) above it.
ChromaticResult chromatic_index(const WeightedGraph& g,
                                std::size_t edge_cap = kExactSearchEdgeCap);

// Misra-Gries constructive Vizing coloring: at most max_degree + 1 classes.
EdgeColoring edge_color_vizing(const WeightedGraph& g);

struct Level {
  double threshold = 0;  // r_j
  int chromatic_index = 0;
  EdgeColoring coloring;  // coloring of the edges with weight >= r_j
  bool exact = true;
};

// Thresholds are the distinct edge weights in ascending order; weights within
// this distance of the previous one are merged into the same level.
inline constexpr double kLevelMergeTolerance = 1e-12;

struct LevelDecomposition {
  std::vector<Level> levels;

  // sum_j n_j (r_j - r_{j-1}) with r_0 = 0
  double weighted_sum() const;
};

LevelDecomposition level_decompose(const WeightedGraph& g);

}  // namespace chromlc

#include "chromlc/graphs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>

#include "chromlc/error.hpp"

namespace chromlc {

WeightedGraph::WeightedGraph(int n_vertices, std::vector<WeightedEdge> edges)
    : n_(n_vertices), edges_(std::move(edges)) {
  if (n_ < 0) throw Error(ErrorKind::InvalidGraph, "negative vertex count");
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) throw Error(ErrorKind::InvalidGraph, "self-loop on vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v >= n_)
      throw Error(ErrorKind::InvalidGraph,
                  "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
    if (!(e.weight > 0) || !std::isfinite(e.weight))
      throw Error(ErrorKind::InvalidGraph, "edge weights must be finite and positive");
  }
  std::sort(edges_.begin(), edges_.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
      throw Error(ErrorKind::InvalidGraph, "duplicate edge (" + std::to_string(edges_[i].u) + "," +
                                               std::to_string(edges_[i].v) + ")");
  }
}

std::vector<int> WeightedGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_), 0);
  for (const auto& e : edges_) {
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  return deg;
}

int WeightedGraph::max_degree() const {
  const auto deg = degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

bool is_valid_coloring(const WeightedGraph& g, const EdgeColoring& coloring) {
  std::set<VertexPair> expected;
  for (const auto& e : g.edges()) expected.emplace(e.u, e.v);
  std::set<VertexPair> seen;
  for (const auto& cls : coloring.classes) {
    std::set<int> touched;
    for (auto [u, v] : cls) {
      if (u > v) std::swap(u, v);
      if (!expected.contains({u, v})) return false;
      if (!seen.emplace(u, v).second) return false;
      if (!touched.insert(u).second || !touched.insert(v).second) return false;
    }
  }
  return seen.size() == expected.size();
}

WeightedGraph threshold_subgraph(const WeightedGraph& g, double r) {
  std::vector<WeightedEdge> kept;
  for (const auto& e : g.edges())
    if (e.weight > r) kept.push_back(e);
  return WeightedGraph(g.vertex_count(), std::move(kept));
}

namespace {

EdgeColoring classes_from_colors(const WeightedGraph& g, const std::vector<int>& color, int n_colors) {
  std::vector<std::vector<VertexPair>> by_color(static_cast<std::size_t>(n_colors));
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i)
    by_color[static_cast<std::size_t>(color[i])].emplace_back(edges[i].u, edges[i].v);
  EdgeColoring out;
  for (auto& cls : by_color) {
    if (cls.empty()) continue;
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

// A connected component with max degree d is overfull when it has more than
// d * floor(V/2) edges: no d matchings can cover it.
bool has_overfull_component(const WeightedGraph& g, int delta) {
  const int n = g.vertex_count();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& e : g.edges()) parent[static_cast<std::size_t>(find(e.u))] = find(e.v);

  const auto deg = g.degrees();
  std::vector<int> vertices(static_cast<std::size_t>(n), 0), edges(static_cast<std::size_t>(n), 0),
      comp_delta(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    if (deg[static_cast<std::size_t>(v)] == 0) continue;
    const auto root = static_cast<std::size_t>(find(v));
    ++vertices[root];
    comp_delta[root] = std::max(comp_delta[root], deg[static_cast<std::size_t>(v)]);
  }
  for (const auto& e : g.edges()) ++edges[static_cast<std::size_t>(find(e.u))];
  for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) {
    if (comp_delta[r] == delta && edges[r] > delta * (vertices[r] / 2)) return true;
  }
  return false;
}

// Backtracking search for a proper coloring with `k` colors (k <= 64).
class ColoringSearch {
 public:
  ColoringSearch(const WeightedGraph& g, int k)
      : g_(g), k_(k), full_(k == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1)),
        used_(static_cast<std::size_t>(g.vertex_count()), 0),
        color_(g.edge_count(), -1), degree_sum_(g.edge_count(), 0) {
    const auto deg = g.degrees();
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      const auto& e = g.edges()[i];
      degree_sum_[i] = deg[static_cast<std::size_t>(e.u)] + deg[static_cast<std::size_t>(e.v)];
    }
  }

  bool run() {
    // Colors are interchangeable: fix the edges at one max-degree vertex.
    const auto deg = g_.degrees();
    const int hub = static_cast<int>(std::max_element(deg.begin(), deg.end()) - deg.begin());
    int next = 0;
    for (std::size_t i = 0; i < g_.edge_count(); ++i) {
      const auto& e = g_.edges()[i];
      if (e.u == hub || e.v == hub) assign(i, next++);
    }
    return search(next);
  }

  const std::vector<int>& colors() const { return color_; }

 private:
  std::uint64_t available(std::size_t i) const {
    const auto& e = g_.edges()[i];
    return full_ & ~(used_[static_cast<std::size_t>(e.u)] | used_[static_cast<std::size_t>(e.v)]);
  }

  void assign(std::size_t i, int c) {
    const auto& e = g_.edges()[i];
    color_[i] = c;
    used_[static_cast<std::size_t>(e.u)] |= std::uint64_t{1} << c;
    used_[static_cast<std::size_t>(e.v)] |= std::uint64_t{1} << c;
  }

  void unassign(std::size_t i) {
    const auto& e = g_.edges()[i];
    const auto bit = std::uint64_t{1} << color_[i];
    used_[static_cast<std::size_t>(e.u)] &= ~bit;
    used_[static_cast<std::size_t>(e.v)] &= ~bit;
    color_[i] = -1;
  }

  // `colors_opened`: colors 0..colors_opened-1 have been used somewhere; any
  // higher color is equivalent to the lowest unopened one.
  bool search(int colors_opened) {
    std::size_t pick = g_.edge_count();
    int best_avail = 65;
    for (std::size_t i = 0; i < g_.edge_count(); ++i) {
      if (color_[i] >= 0) continue;
      const int avail = std::popcount(available(i));
      if (avail == 0) return false;
      if (avail < best_avail || (avail == best_avail && degree_sum_[i] > degree_sum_[pick])) {
        best_avail = avail;
        pick = i;
      }
    }
    if (pick == g_.edge_count()) return true;

    const auto avail = available(pick);
    for (int c = 0; c < k_; ++c) {
      if (!(avail & (std::uint64_t{1} << c))) continue;
      if (c > colors_opened) break;
      assign(pick, c);
      if (search(std::max(colors_opened, c + 1))) return true;
      unassign(pick);
    }
    return false;
  }

  const WeightedGraph& g_;
  int k_;
  std::uint64_t full_;
  std::vector<std::uint64_t> used_;
  std::vector<int> color_;
  std::vector<int> degree_sum_;
};

}  // namespace

ChromaticResult chromatic_index_exact(const WeightedGraph& g, std::size_t edge_cap) {
  if (g.edge_count() > edge_cap)
    throw Error(ErrorKind::TooLarge, "exact chromatic index limited to " + std::to_string(edge_cap) +
                                         " edges, graph has " + std::to_string(g.edge_count()));
  ChromaticResult out;
  if (g.edge_count() == 0) return out;

  const int delta = g.max_degree();
  if (delta <= 64 && !has_overfull_component(g, delta)) {
    ColoringSearch search(g, delta);
    if (search.run()) {
      out.index = delta;
      out.coloring = classes_from_colors(g, search.colors(), delta);
      return out;
    }
  }
  // Vizing: delta colors are impossible, so Misra-Gries is optimal here.
  out.coloring = edge_color_vizing(g);
  out.index = static_cast<int>(out.coloring.color_count());
  return out;
}

ChromaticResult chromatic_index(const WeightedGraph& g, std::size_t edge_cap) {
  if (g.edge_count() <= edge_cap) return chromatic_index_exact(g, edge_cap);
  ChromaticResult out;
  out.coloring = edge_color_vizing(g);
  out.index = static_cast<int>(out.coloring.color_count());
  out.exact = false;
  return out;
}

EdgeColoring edge_color_vizing(const WeightedGraph& g) {
  const int n = g.vertex_count();
  const int delta = g.max_degree();
  if (g.edge_count() == 0) return {};
  const int n_colors = delta + 1;
  const auto un = static_cast<std::size_t>(n);

  std::vector<std::vector<int>> neighbors(un);
  for (const auto& e : g.edges()) {
    neighbors[static_cast<std::size_t>(e.u)].push_back(e.v);
    neighbors[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (auto& nb : neighbors) std::sort(nb.begin(), nb.end());

  // at[v][c]: the neighbor joined to v by an edge of color c, or -1.
  std::vector<std::vector<int>> at(un, std::vector<int>(static_cast<std::size_t>(n_colors), -1));
  std::vector<int> color(un * un, -1);
  auto col = [&](int u, int v) -> int& { return color[static_cast<std::size_t>(u) * un + static_cast<std::size_t>(v)]; };
  auto is_free = [&](int v, int c) { return at[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] < 0; };
  auto set_color = [&](int u, int v, int c) {
    col(u, v) = col(v, u) = c;
    at[static_cast<std::size_t>(u)][static_cast<std::size_t>(c)] = v;
    at[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] = u;
  };
  auto clear_color = [&](int u, int v) {
    const int c = col(u, v);
    if (c < 0) return;
    at[static_cast<std::size_t>(u)][static_cast<std::size_t>(c)] = -1;
    at[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] = -1;
    col(u, v) = col(v, u) = -1;
  };
  auto first_free = [&](int v) {
    for (int c = 0; c < n_colors; ++c)
      if (is_free(v, c)) return c;
    throw Error(ErrorKind::InvalidGraph, "misra-gries: no free color (degree bound violated)");
  };

  for (const auto& e : g.edges()) {
    const int x = e.u;

    std::vector<int> fan{e.v};
    for (;;) {
      const int last = fan.back();
      bool grown = false;
      for (int w : neighbors[static_cast<std::size_t>(x)]) {
        const int c = col(x, w);
        if (c < 0 || !is_free(last, c)) continue;
        if (std::find(fan.begin(), fan.end(), w) != fan.end()) continue;
        fan.push_back(w);
        grown = true;
        break;
      }
      if (!grown) break;
    }

    const int c = first_free(x);
    const int d = first_free(fan.back());

    if (c != d) {
      // Invert the cd-path leaving x (its first edge has color d).
      std::vector<VertexPair> path;
      std::vector<int> path_colors;
      int cur = x;
      int want = d;
      while (!is_free(cur, want)) {
        const int nxt = at[static_cast<std::size_t>(cur)][static_cast<std::size_t>(want)];
        path.emplace_back(cur, nxt);
        path_colors.push_back(want);
        cur = nxt;
        want = (want == d) ? c : d;
      }
      for (auto [a, b] : path) clear_color(a, b);
      for (std::size_t i = 0; i < path.size(); ++i)
        set_color(path[i].first, path[i].second, path_colors[i] == d ? c : d);
    }

    std::size_t w = fan.size();
    for (std::size_t i = 0; i < fan.size(); ++i) {
      if (is_free(fan[i], d)) {
        w = i;
        break;
      }
      if (i + 1 < fan.size()) {
        const int nc = col(x, fan[i + 1]);
        if (nc < 0 || !is_free(fan[i], nc)) break;
      }
    }
    if (w == fan.size()) throw Error(ErrorKind::InvalidGraph, "misra-gries: fan rotation failed");

    std::vector<int> shifted(w);
    for (std::size_t i = 0; i < w; ++i) shifted[i] = col(x, fan[i + 1]);
    for (std::size_t i = 0; i <= w; ++i) clear_color(x, fan[i]);
    for (std::size_t i = 0; i < w; ++i) set_color(x, fan[i], shifted[i]);
    set_color(x, fan[w], d);
  }

  std::vector<int> flat;
  flat.reserve(g.edge_count());
  for (const auto& e : g.edges()) flat.push_back(col(e.u, e.v));
  return classes_from_colors(g, flat, n_colors);
}

double LevelDecomposition::weighted_sum() const {
  double sum = 0;
  double prev = 0;
  for (const auto& level : levels) {
    sum += level.chromatic_index * (level.threshold - prev);
    prev = level.threshold;
  }
  return sum;
}

LevelDecomposition level_decompose(const WeightedGraph& g) {
  LevelDecomposition out;
  if (g.edge_count() == 0) return out;

  std::vector<double> weights;
  for (const auto& e : g.edges()) weights.push_back(e.weight);
  std::sort(weights.begin(), weights.end());

  // Cluster thresholds: each level is represented by the largest weight of
  // its cluster so that every edge in it satisfies weight <= threshold.
  std::vector<double> thresholds;
  double cluster_top = weights.front();
  for (double w : weights) {
    if (w - cluster_top > kLevelMergeTolerance) {
      thresholds.push_back(cluster_top);
    }
    cluster_top = w;
  }
  thresholds.push_back(cluster_top);

  double prev = 0;
  for (double r : thresholds) {
    std::vector<WeightedEdge> kept;
    for (const auto& e : g.edges())
      if (e.weight > prev + (prev > 0 ? kLevelMergeTolerance : 0.0)) kept.push_back(e);
    const WeightedGraph sub(g.vertex_count(), std::move(kept));
    auto chrom = chromatic_index(sub);
    out.levels.push_back(Level{r, chrom.index, std::move(chrom.coloring), chrom.exact});
    prev = r;
  }
  return out;
}

}  // namespace chromlc

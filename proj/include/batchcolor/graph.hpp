#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "batchcolor/errors.hpp"

namespace batchcolor {

using Vertex = int;
using Color = int;  // 0 means "not colored yet"
using Cost = std::int64_t;
using Coloring = std::vector<Color>;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph on dense vertex ids 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}

  int size() const { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const { return edges_; }

  Vertex add_vertex() {
    adj_.emplace_back();
    return size() - 1;
  }

  // Adds {u,v}; duplicate edges are ignored, self-loops rejected.
  void add_edge(Vertex u, Vertex v) {
    if (u < 0 || v < 0 || u >= size() || v >= size())
      throw InconsistentInstance("edge endpoint out of range");
    if (u == v) throw InconsistentInstance("self-loop on vertex " + std::to_string(u));
    if (has_edge(u, v)) return;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++edges_;
  }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    const Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::find(a.begin(), a.end(), other) != a.end();
  }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edges_);
    for (Vertex u = 0; u < size(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edges_ = 0;
};

// Subgraph induced by `vertices`; vertex k of the result is vertices[k].
inline Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices) {
  std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
  for (std::size_t k = 0; k < vertices.size(); ++k) local[vertices[k]] = static_cast<int>(k);
  Graph h(static_cast<int>(vertices.size()));
  for (std::size_t k = 0; k < vertices.size(); ++k)
    for (Vertex w : g.neighbors(vertices[k]))
      if (local[w] > static_cast<int>(k)) h.add_edge(static_cast<int>(k), local[w]);
  return h;
}

// Connected components, each listed in increasing vertex order.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.size()), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<Vertex> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      out[id].push_back(u);
      for (Vertex w : g.neighbors(u))
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

inline bool is_forest(const Graph& g) {
  return g.edge_count() + connected_components(g).size() == static_cast<std::size_t>(g.size());
}

// Proper 2-coloring with colors {1,2} (each component's smallest vertex gets 1),
// or an empty vector when the graph has an odd cycle.
inline Coloring two_coloring(const Graph& g) {
  Coloring c(static_cast<std::size_t>(g.size()), 0);
  for (Vertex s = 0; s < g.size(); ++s) {
    if (c[s] != 0) continue;
    c[s] = 1;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop();
      for (Vertex w : g.neighbors(u)) {
        if (c[w] == 0) {
          c[w] = 3 - c[u];
          q.push(w);
        } else if (c[w] == c[u]) {
          return {};
        }
      }
    }
  }
  return c;
}

struct ValidationResult {
  bool ok = true;
  std::vector<Edge> monochromatic_edges;
  std::vector<Vertex> uncolored_vertices;  // color missing or < 1
};

inline ValidationResult validate_coloring(const Graph& g, const Coloring& c) {
  ValidationResult r;
  for (Vertex v = 0; v < g.size(); ++v)
    if (static_cast<std::size_t>(v) >= c.size() || c[v] < 1) r.uncolored_vertices.push_back(v);
  if (c.size() > static_cast<std::size_t>(g.size())) r.ok = false;
  for (const auto& [u, v] : g.edges())
    if (static_cast<std::size_t>(v) < c.size() && c[u] >= 1 && c[u] == c[v]) r.monochromatic_edges.emplace_back(u, v);
  r.ok = r.ok && r.monochromatic_edges.empty() && r.uncolored_vertices.empty();
  return r;
}

inline Color max_color(const Coloring& c) {
  Color m = 0;
  for (Color x : c) m = std::max(m, x);
  return m;
}

inline Cost color_sum(const Coloring& c) {
  Cost s = 0;
  for (Color x : c) s += x;
  return s;
}

inline int distinct_colors(const Coloring& c) {
  std::vector<Color> v;
  for (Color x : c)
    if (x > 0) v.push_back(x);
  std::sort(v.begin(), v.end());
  return static_cast<int>(std::unique(v.begin(), v.end()) - v.begin());
}

// Least positive color absent from the colored neighbors of v.
inline Color least_free_color(const Graph& g, const Coloring& c, Vertex v) {
  std::vector<char> used(static_cast<std::size_t>(g.degree(v)) + 2, 0);
  for (Vertex w : g.neighbors(v)) {
    const Color x = c[w];
    if (x > 0 && x < static_cast<Color>(used.size())) used[x] = 1;
  }
  Color col = 1;
  while (used[col]) ++col;
  return col;
}

// Greedy coloring in the given order: every vertex gets the least color not
// used by an already colored neighbor.
inline Coloring first_fit(const Graph& g, const std::vector<Vertex>& order) {
  Coloring c(static_cast<std::size_t>(g.size()), 0);
  for (Vertex v : order) c[v] = least_free_color(g, c, v);
  return c;
}

}  // namespace batchcolor

#pragma once

// Exact offline oracles for the chromatic number and the minimum color sum.
//
// Both oracles split the graph into connected components. Components that
// are trivially solvable (single vertices, and bipartite components for the
// chromatic number) never count against the size limit; every other component
// is solved by a saturation-ordered branch and bound and must not exceed the
// configured limit.

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "batchcolor/errors.hpp"
#include "batchcolor/graph.hpp"

namespace batchcolor {

struct OracleLimits {
  int chromatic = 30;
  int sum = 16;

  // Defaults, with BATCHCOLOR_ORACLE_LIMIT (a positive integer) overriding both caps.
  static OracleLimits from_env() {
    OracleLimits l;
    if (const char* s = std::getenv("BATCHCOLOR_ORACLE_LIMIT"); s != nullptr && *s != '\0') {
      char* end = nullptr;
      const long v = std::strtol(s, &end, 10);
      if (end != nullptr && *end == '\0' && v > 0) {
        l.chromatic = static_cast<int>(v);
        l.sum = static_cast<int>(v);
      }
    }
    return l;
  }
};

struct OracleResult {
  Cost value = 0;
  Coloring witness;
};

namespace detail {

class ChromaticSearch {
 public:
  explicit ChromaticSearch(const Graph& g) : g_(g), n_(g.size()) {}

  Coloring run() {
    color_.assign(n_, 0);
    sat_count_.assign(static_cast<std::size_t>(n_) * (n_ + 2), 0);
    saturation_.assign(n_, 0);
    best_ = greedy_dsatur();
    best_k_ = max_color(best_);
    lower_ = greedy_clique_size();
    if (best_k_ > lower_) search(0, 0);
    return best_;
  }

 private:
  int& cnt(Vertex v, Color c) { return sat_count_[static_cast<std::size_t>(v) * (n_ + 2) + c]; }

  Coloring greedy_dsatur() const {
    Coloring c(n_, 0);
    std::vector<std::vector<char>> seen(n_, std::vector<char>(n_ + 2, 0));
    std::vector<int> sat(n_, 0);
    for (int step = 0; step < n_; ++step) {
      Vertex pick = -1;
      for (Vertex v = 0; v < n_; ++v)
        if (c[v] == 0 && (pick < 0 || sat[v] > sat[pick] || (sat[v] == sat[pick] && g_.degree(v) > g_.degree(pick))))
          pick = v;
      Color col = 1;
      while (seen[pick][col]) ++col;
      c[pick] = col;
      for (Vertex w : g_.neighbors(pick))
        if (!seen[w][col]) {
          seen[w][col] = 1;
          ++sat[w];
        }
    }
    return c;
  }

  int greedy_clique_size() const {
    int best = n_ > 0 ? 1 : 0;
    for (Vertex s = 0; s < n_; ++s) {
      std::vector<Vertex> clique{s};
      std::vector<Vertex> cand(g_.neighbors(s).begin(), g_.neighbors(s).end());
      std::sort(cand.begin(), cand.end(), [&](Vertex a, Vertex b) { return g_.degree(a) > g_.degree(b); });
      for (Vertex v : cand) {
        bool ok = true;
        for (Vertex u : clique) ok = ok && g_.has_edge(u, v);
        if (ok) clique.push_back(v);
      }
      best = std::max(best, static_cast<int>(clique.size()));
    }
    return best;
  }

  void assign(Vertex v, Color c, int delta) {
    for (Vertex w : g_.neighbors(v)) {
      int& k = cnt(w, c);
      if (delta > 0 && k++ == 0) ++saturation_[w];
      if (delta < 0 && --k == 0) --saturation_[w];
    }
  }

  void search(int colored, Color used) {
    if (best_k_ <= lower_) return;
    if (colored == n_) {
      best_ = color_;
      best_k_ = used;
      return;
    }
    Vertex pick = -1;
    for (Vertex v = 0; v < n_; ++v)
      if (color_[v] == 0 &&
          (pick < 0 || saturation_[v] > saturation_[pick] ||
           (saturation_[v] == saturation_[pick] && g_.degree(v) > g_.degree(pick))))
        pick = v;
    const Color limit = std::min(used + 1, best_k_ - 1);
    for (Color c = 1; c <= limit; ++c) {
      if (cnt(pick, c) != 0) continue;
      color_[pick] = c;
      assign(pick, c, +1);
      search(colored + 1, std::max(used, c));
      assign(pick, c, -1);
      color_[pick] = 0;
      if (best_k_ <= lower_) return;
    }
  }

  const Graph& g_;
  int n_;
  Coloring color_;
  std::vector<int> sat_count_;
  std::vector<int> saturation_;
  Coloring best_;
  Color best_k_ = 0;
  int lower_ = 0;
};

class SumSearch {
 public:
  explicit SumSearch(const Graph& g) : g_(g), n_(g.size()), width_(static_cast<std::size_t>(n_) + 2) {}

  Coloring run() {
    color_.assign(n_, 0);
    forbidden_.assign(static_cast<std::size_t>(n_) * width_, 0);
    saturation_.assign(n_, 0);
    std::vector<Vertex> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g_.degree(a) > g_.degree(b); });
    best_ = first_fit(g_, order);
    best_sum_ = color_sum(best_);
    std::reverse(order.begin(), order.end());
    const Coloring alt = first_fit(g_, order);
    if (color_sum(alt) < best_sum_) {
      best_ = alt;
      best_sum_ = color_sum(alt);
    }
    search(0, 0);
    return best_;
  }

 private:
  bool blocked(Vertex v, std::size_t c) const { return forbidden_[static_cast<std::size_t>(v) * width_ + c] > 0; }

  void assign(Vertex v, Color c) {
    color_[v] = c;
    for (Vertex w : g_.neighbors(v))
      if (forbidden_[static_cast<std::size_t>(w) * width_ + c]++ == 0) ++saturation_[w];
  }

  void unassign(Vertex v) {
    const Color c = color_[v];
    color_[v] = 0;
    for (Vertex w : g_.neighbors(v))
      if (--forbidden_[static_cast<std::size_t>(w) * width_ + c] == 0) --saturation_[w];
  }

  // Greedy clique cover of the uncolored vertices; a clique's members take
  // distinct colors, each free for at least one of them.
  Cost open_bound(const std::vector<Vertex>& open) const {
    cover_.clear();
    for (Vertex v : open) {
      auto it = std::find_if(cover_.begin(), cover_.end(), [&](const std::vector<Vertex>& k) {
        return std::all_of(k.begin(), k.end(), [&](Vertex w) { return g_.has_edge(v, w); });
      });
      if (it == cover_.end()) {
        cover_.push_back({v});
      } else {
        it->push_back(v);
      }
    }
    Cost total = 0;
    for (const auto& k : cover_) {
      std::size_t need = k.size();
      for (std::size_t c = 1; need > 0; ++c) {
        const bool usable =
            c >= width_ || std::any_of(k.begin(), k.end(), [&](Vertex v) { return !blocked(v, c); });
        if (usable) {
          total += static_cast<Cost>(c);
          --need;
        }
      }
    }
    return total;
  }

  void search(int colored, Cost partial) {
    if (colored == n_) {
      if (partial < best_sum_) {
        best_sum_ = partial;
        best_ = color_;
      }
      return;
    }
    Vertex pick = -1;
    std::vector<Vertex> open;
    for (Vertex v = 0; v < n_; ++v) {
      if (color_[v] != 0) continue;
      open.push_back(v);
      if (pick < 0 || saturation_[v] > saturation_[pick] ||
          (saturation_[v] == saturation_[pick] && g_.degree(v) > g_.degree(pick)))
        pick = v;
    }
    std::sort(open.begin(), open.end(), [&](Vertex a, Vertex b) { return g_.degree(a) > g_.degree(b); });
    if (partial + open_bound(open) >= best_sum_) return;
    open.erase(std::find(open.begin(), open.end(), pick));
    const Cost rest = open_bound(open);
    // an optimal coloring never gives v a color above deg(v)+1
    const Color limit = g_.degree(pick) + 1;
    for (Color c = 1; c <= limit && partial + c + rest < best_sum_; ++c) {
      if (blocked(pick, static_cast<std::size_t>(c))) continue;
      assign(pick, c);
      search(colored + 1, partial + c);
      unassign(pick);
    }
  }

  const Graph& g_;
  int n_;
  std::size_t width_;
  Coloring color_;
  std::vector<int> forbidden_;
  std::vector<int> saturation_;
  mutable std::vector<std::vector<Vertex>> cover_;
  Coloring best_;
  Cost best_sum_ = 0;
};

}  // namespace detail

namespace detail {

inline bool is_complete(const std::vector<Vertex>& comp, const Graph& g) {
  for (Vertex v : comp)
    if (g.degree(v) != static_cast<int>(comp.size()) - 1) return false;
  return true;
}

}  // namespace detail

// Chromatic number with an optimal witness coloring using colors 1..chi.
// Size limits apply only to components that are neither bipartite nor complete.
inline OracleResult chromatic_number_exact(const Graph& g, const OracleLimits& limits = OracleLimits::from_env()) {
  OracleResult r;
  r.witness.assign(static_cast<std::size_t>(g.size()), 0);
  const auto comps = connected_components(g);
  std::vector<Graph> hard;
  std::vector<const std::vector<Vertex>*> hard_vertices;
  for (const auto& comp : comps) {
    if (detail::is_complete(comp, g)) {
      for (std::size_t k = 0; k < comp.size(); ++k) r.witness[comp[k]] = static_cast<Color>(k) + 1;
      continue;
    }
    const Graph h = induced_subgraph(g, comp);
    Coloring local = two_coloring(h);
    if (local.empty()) {
      if (static_cast<int>(comp.size()) > limits.chromatic)
        throw SizeLimitExceeded("chromatic oracle: component of " + std::to_string(comp.size()) +
                                " vertices exceeds limit " + std::to_string(limits.chromatic));
      hard.push_back(h);
      hard_vertices.push_back(&comp);
      continue;
    }
    for (std::size_t k = 0; k < comp.size(); ++k) r.witness[comp[k]] = local[k];
  }
  for (std::size_t t = 0; t < hard.size(); ++t) {
    const Coloring local = detail::ChromaticSearch(hard[t]).run();
    const auto& comp = *hard_vertices[t];
    for (std::size_t k = 0; k < comp.size(); ++k) r.witness[comp[k]] = local[k];
  }
  r.value = max_color(r.witness);
  return r;
}

// Minimum color sum with an optimal witness coloring. Size limits apply only
// to components that are not complete graphs.
inline OracleResult min_sum_coloring_exact(const Graph& g, const OracleLimits& limits = OracleLimits::from_env()) {
  OracleResult r;
  r.witness.assign(static_cast<std::size_t>(g.size()), 0);
  const auto comps = connected_components(g);
  for (const auto& comp : comps)
    if (!detail::is_complete(comp, g) && static_cast<int>(comp.size()) > limits.sum)
      throw SizeLimitExceeded("sum oracle: component of " + std::to_string(comp.size()) +
                              " vertices exceeds limit " + std::to_string(limits.sum));
  for (const auto& comp : comps) {
    if (detail::is_complete(comp, g)) {
      for (std::size_t k = 0; k < comp.size(); ++k) r.witness[comp[k]] = static_cast<Color>(k) + 1;
      continue;
    }
    const Coloring local = detail::SumSearch(induced_subgraph(g, comp)).run();
    for (std::size_t k = 0; k < comp.size(); ++k) r.witness[comp[k]] = local[k];
  }
  r.value = color_sum(r.witness);
  return r;
}

}  // namespace batchcolor

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "batchcolor/graph.hpp"
#include "batchcolor/interval.hpp"

namespace testsupport {

using namespace batchcolor;

// Calls f on every function V -> {1..k}.
template <typename F>
void for_each_assignment(int n, int k, F&& f) {
  Coloring c(static_cast<std::size_t>(n), 1);
  if (n == 0) {
    f(c);
    return;
  }
  while (true) {
    f(c);
    int pos = 0;
    while (pos < n && c[pos] == k) c[pos++] = 1;
    if (pos == n) return;
    ++c[pos];
  }
}

inline bool proper(const Graph& g, const Coloring& c) {
  for (const auto& [u, v] : g.edges())
    if (c[u] == c[v]) return false;
  return true;
}

inline int brute_chromatic(const Graph& g) {
  for (int k = 1; k <= std::max(1, g.size()); ++k) {
    bool found = false;
    for_each_assignment(g.size(), k, [&](const Coloring& c) { found = found || proper(g, c); });
    if (found) return g.size() == 0 ? 0 : k;
  }
  return g.size();
}

inline Cost brute_min_sum(const Graph& g) {
  Cost best = -1;
  for_each_assignment(g.size(), std::max(1, g.size()), [&](const Coloring& c) {
    if (!proper(g, c)) return;
    const Cost s = color_sum(c);
    if (best < 0 || s < best) best = s;
  });
  return std::max<Cost>(best, 0);
}

// Maximal cliques of a graph, each sorted, via subset enumeration (n <= 16).
inline std::vector<std::vector<int>> brute_maximal_cliques(const Graph& g) {
  const int n = g.size();
  std::vector<std::uint32_t> cliques;
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = a + 1; b < n && ok; ++b)
        if ((m >> a & 1) && (m >> b & 1) && !g.has_edge(a, b)) ok = false;
    if (ok) cliques.push_back(m);
  }
  std::vector<std::vector<int>> out;
  for (std::uint32_t m : cliques) {
    bool maximal = true;
    for (int v = 0; v < n && maximal; ++v) {
      if (m >> v & 1) continue;
      const std::uint32_t bigger = m | (1u << v);
      maximal = !std::binary_search(cliques.begin(), cliques.end(), bigger);
    }
    if (!maximal) continue;
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (m >> v & 1) members.push_back(v);
    out.push_back(members);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testsupport

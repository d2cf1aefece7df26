#pragma once

// Adaptive lower-bound constructions. Each adversary decides its next batch
// from the colors committed so far, and exposes its wiring, an explicit
// witness coloring and a pass/fail guarantee check once the run is over.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "batchcolor/engine.hpp"
#include "batchcolor/errors.hpp"
#include "batchcolor/interval.hpp"
#include "batchcolor/sum_coloring.hpp"

namespace batchcolor {

inline std::int64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::int64_t b = 1;
  for (int t = 1; t <= r; ++t) b = b * (n - r + t) / t;
  return b;
}

inline std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

namespace detail {

inline std::vector<Color> sorted_colors(const RevealedState& s, const std::vector<Vertex>& vs) {
  std::vector<Color> out;
  for (Vertex v : vs) out.push_back(s.colors[v]);
  std::sort(out.begin(), out.end());
  return out;
}

inline void add_clique_edges(std::vector<Edge>& edges, Vertex first, int size) {
  for (int a = 0; a < size; ++a)
    for (int b = a + 1; b < size; ++b) edges.emplace_back(first + a, first + b);
}

}  // namespace detail

// Forces 2k colors on forests presented in k batches.
class TreeAdversary final : public Adversary {
 public:
  explicit TreeAdversary(int k, bool connect = false) : k_(k), connect_(connect) {
    if (k < 1 || k > 3) throw UnsupportedInput("tree adversary supports 1 <= k <= 3");
    pools_.resize(static_cast<std::size_t>(k) + 1);
    cursor_.assign(static_cast<std::size_t>(k) + 1, 0);
  }

  std::int64_t batch_size(int i) const { return 2 * ipow(8 * ipow(k_, 3), k_ - i); }
  const std::vector<std::pair<Color, Color>>& level_pairs() const { return pairs_; }
  bool stopped_early() const { return early_stop_; }

  std::string name() const override { return "tree"; }
  Objective objective() const override { return Objective::colors; }
  bool reveals_intervals() const override { return false; }
  GraphClass declared_class() const override { return GraphClass::forest; }
  int announced_batches() const override { return k_; }

  std::optional<BatchSpec> next_batch(const RevealedState& s) override {
    const int done = s.batch_count();
    if (done >= k_) return std::nullopt;
    if (done > 0 && distinct_colors(s.colors) > 2 * k_) {
      early_stop_ = true;
      return std::nullopt;
    }
    if (done > 0) select_good_trees(s, done);
    const int i = done + 1;
    const Vertex first = s.vertex_count();
    const auto a = static_cast<int>(batch_size(i));
    BatchSpec spec;
    spec.count = a;
    base_.clear();
    for (int t = 0; t < a / 2; ++t) {
      spec.edges.emplace_back(first + 2 * t, first + 2 * t + 1);
      base_.emplace_back(first + 2 * t, first + 2 * t + 1);
    }
    for (int j = 1; j < i; ++j)
      for (Vertex v = first; v < first + a; ++v) {
        spec.edges.emplace_back(v, take(j).first);
        spec.edges.emplace_back(v, take(j).second);
      }
    if (i == k_ && connect_) {
      // One extra vertex joined to one vertex of every tree left after this batch.
      std::vector<int> parent(static_cast<std::size_t>(first + a));
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (const auto& [u, v] : s.graph.edges()) parent[find(u)] = find(v);
      for (const auto& [u, v] : spec.edges) parent[find(u)] = find(v);
      const Vertex hub = first + a;
      std::set<int> roots;
      for (Vertex v = 0; v < first + a; ++v)
        if (roots.insert(find(v)).second) spec.edges.emplace_back(hub, v);
      spec.count = a + 1;
    }
    return spec;
  }

  std::optional<Coloring> witness(const RevealedState& s) const override {
    Coloring c = two_coloring(s.graph);
    if (c.empty()) return std::nullopt;
    return c;
  }

  std::optional<Guarantee> guarantee(const RevealedState& s) const override {
    const int used = distinct_colors(s.colors);
    const int need = early_stop_ ? 2 * k_ + 1 : 2 * k_;
    return Guarantee{"at least " + std::to_string(need) + " distinct colors (used " + std::to_string(used) + ")",
                     used >= need};
  }

  Json details() const override {
    Json pairs = Json::array();
    for (const auto& [a, b] : pairs_) pairs.push_back({a, b});
    Json sizes = Json::array();
    for (int i = 1; i <= k_; ++i) sizes.push_back(batch_size(i));
    Json used = Json::array();
    for (int j = 1; j < k_; ++j)
      used.push_back({{"level", j}, {"good_trees", pools_[j].size()}, {"consumed", cursor_[j]}});
    return {{"k", k_}, {"batch_sizes", sizes}, {"level_pairs", pairs}, {"pools", used}, {"early_stop", early_stop_},
            {"connect", connect_}};
  }

 private:
  // Most frequent unordered color pair among the previous batch's base edges;
  // those edges become the good trees of that level, oriented (smaller, larger).
  void select_good_trees(const RevealedState& s, int level) {
    std::map<std::pair<Color, Color>, std::vector<std::pair<Vertex, Vertex>>> by_pair;
    for (auto [u, v] : base_) {
      Color cu = s.colors[u];
      Color cv = s.colors[v];
      if (cu > cv) {
        std::swap(cu, cv);
        std::swap(u, v);
      }
      by_pair[{cu, cv}].emplace_back(u, v);
    }
    const auto best = std::max_element(by_pair.begin(), by_pair.end(), [](const auto& x, const auto& y) {
      return x.second.size() < y.second.size();
    });
    pairs_.push_back(best->first);
    pools_[level] = best->second;
    std::int64_t needed = 0;
    for (int i = level + 1; i <= k_; ++i) needed += 2 * batch_size(i);
    if (static_cast<std::int64_t>(pools_[level].size()) < needed)
      throw InvariantViolation("tree adversary: only " + std::to_string(pools_[level].size()) + " good level-" +
                               std::to_string(level) + " trees, " + std::to_string(needed) + " needed");
  }

  std::pair<Vertex, Vertex> take(int level) {
    if (cursor_[level] >= pools_[level].size()) throw InvariantViolation("tree adversary: pool exhausted");
    return pools_[level][cursor_[level]++];
  }

  int k_;
  bool connect_;
  bool early_stop_ = false;
  std::vector<std::pair<Vertex, Vertex>> base_;
  std::vector<std::pair<Color, Color>> pairs_;
  std::vector<std::vector<std::pair<Vertex, Vertex>>> pools_;
  std::vector<std::size_t> cursor_;
};

// Two batches on interval graphs whose representation is fixed only after the
// first batch is colored; forces 4q colors against OPT = 2q.
class IntervalNorepAdversary final : public Adversary {
 public:
  explicit IntervalNorepAdversary(int q) : q_(q) {
    if (q < 1 || q > 3) throw UnsupportedInput("interval-norep adversary supports 1 <= q <= 3");
    n1_ = static_cast<int>(binomial(4 * q, q)) + 1;
    n2_ = static_cast<int>(binomial(4 * q, 2 * q)) + 1;
  }

  int small_cliques() const { return n1_; }
  int large_cliques() const { return n2_; }
  const std::vector<Color>& c1() const { return c1_; }
  const std::vector<Color>& c2() const { return c2_; }
  const std::vector<Color>& c2_prime() const { return c2p_; }
  bool stopped_early() const { return early_stop_; }

  std::string name() const override { return "interval-norep"; }
  Objective objective() const override { return Objective::colors; }
  bool reveals_intervals() const override { return false; }
  GraphClass declared_class() const override { return GraphClass::interval; }
  int announced_batches() const override { return 2; }

  std::optional<BatchSpec> next_batch(const RevealedState& s) override {
    if (s.batch_count() == 0) {
      BatchSpec spec;
      Vertex v = 0;
      for (int t = 0; t < n1_ + n2_; ++t) {
        const int size = t < n1_ ? q_ : 2 * q_;
        detail::add_clique_edges(spec.edges, v, size);
        cliques_.push_back({});
        for (int m = 0; m < size; ++m) cliques_.back().push_back(v++);
      }
      spec.count = v;
      place_.assign(static_cast<std::size_t>(v), closed(0, 1));
      for (std::size_t t = 0; t < cliques_.size(); ++t)
        for (Vertex u : cliques_[t]) place_[u] = closed(2 * static_cast<std::int64_t>(t), 2 * static_cast<std::int64_t>(t) + 1);
      return spec;
    }
    if (s.batch_count() >= 2 || finished_) return std::nullopt;
    finished_ = true;
    if (distinct_colors(s.colors) > 4 * q_) {
      early_stop_ = true;
      return std::nullopt;
    }
    const auto [a1, a2] = twins(s, 0, n1_);
    const auto [b1, b2] = twins(s, n1_, n1_ + n2_);
    c1_ = detail::sorted_colors(s, cliques_[a1]);
    c2_ = detail::sorted_colors(s, cliques_[b1]);
    auto in_c1 = [&](Color c) { return std::binary_search(c1_.begin(), c1_.end(), c); };

    std::vector<Interval> place(static_cast<std::size_t>(s.vertex_count()));
    for (Vertex u : cliques_[a1]) place[u] = closed(5, 6);
    for (Vertex u : cliques_[a2]) place[u] = closed(9, 10);
    std::vector<Vertex> short_side;
    std::vector<Vertex> long_side;
    for (Vertex u : cliques_[b1]) (in_c1(s.colors[u]) ? short_side : long_side).push_back(u);
    while (static_cast<int>(short_side.size()) < q_) {
      short_side.push_back(long_side.front());
      long_side.erase(long_side.begin());
    }
    for (Vertex u : short_side) place[u] = closed(0, 1);
    for (Vertex u : long_side) place[u] = closed(0, 3);
    c2p_ = detail::sorted_colors(s, long_side);
    for (Vertex u : cliques_[b2])
      place[u] = std::binary_search(c2p_.begin(), c2p_.end(), s.colors[u]) ? closed(12, 15) : closed(14, 15);
    int slot = 0;
    for (int t = 0; t < n1_ + n2_; ++t) {
      if (t == a1 || t == a2 || t == b1 || t == b2) continue;
      for (Vertex u : cliques_[t]) place[u] = closed(16 + 2 * slot, 17 + 2 * slot);
      ++slot;
    }
    const Vertex first = s.vertex_count();
    for (int m = 0; m < 2 * q_; ++m) place.push_back(m < q_ ? closed(2, 8) : closed(7, 13));
    place_ = place;
    BatchSpec spec;
    spec.count = 2 * q_;
    for (Vertex v = first; v < first + 2 * q_; ++v)
      for (Vertex u = 0; u < v; ++u)
        if (intersects(place_[u], place_[v])) spec.edges.emplace_back(u, v);
    return spec;
  }

  std::optional<std::vector<Interval>> representation(const RevealedState& s) const override {
    if (static_cast<int>(place_.size()) != s.vertex_count()) return std::nullopt;
    std::vector<Interval> out = place_;
    for (std::size_t v = 0; v < out.size(); ++v) out[v].id = s.names[v];
    return out;
  }

  std::optional<Coloring> witness(const RevealedState& s) const override {
    if (static_cast<int>(place_.size()) != s.vertex_count()) return std::nullopt;
    return sweep_color(place_);
  }

  std::optional<Guarantee> guarantee(const RevealedState& s) const override {
    const int used = distinct_colors(s.colors);
    const int need = early_stop_ ? 4 * q_ + 1 : 4 * q_;
    return Guarantee{"at least " + std::to_string(need) + " distinct colors (used " + std::to_string(used) + ")",
                     used >= need};
  }

  Json details() const override {
    return {{"q", q_}, {"N1", n1_}, {"N2", n2_}, {"C1", c1_}, {"C2", c2_}, {"C2_prime", c2p_}, {"early_stop", early_stop_}};
  }

 private:
  std::pair<int, int> twins(const RevealedState& s, int from, int to) const {
    std::map<std::vector<Color>, int> seen;
    for (int t = from; t < to; ++t) {
      auto [it, fresh] = seen.emplace(detail::sorted_colors(s, cliques_[t]), t);
      if (!fresh) return {it->second, t};
    }
    throw InvariantViolation("interval-norep adversary: pigeonhole found no twin cliques");
  }

  int q_;
  int n1_ = 0;
  int n2_ = 0;
  bool finished_ = false;
  bool early_stop_ = false;
  std::vector<std::vector<Vertex>> cliques_;
  std::vector<Interval> place_;
  std::vector<Color> c1_;
  std::vector<Color> c2_;
  std::vector<Color> c2p_;
};

// The two-batch construction with known representation; forces 6q colors
// against OPT = 4q.
class IntervalKTAdversary final : public Adversary {
 public:
  explicit IntervalKTAdversary(int q) : q_(q) {
    if (q < 1 || q > 2) throw UnsupportedInput("interval-kt adversary supports 1 <= q <= 2");
    n_ = static_cast<int>(binomial(3 * q, 2 * q));
  }

  std::pair<int, int> twin_cliques() const { return twins_; }
  bool stopped_early() const { return early_stop_; }

  std::string name() const override { return "interval-kt"; }
  Objective objective() const override { return Objective::colors; }
  bool reveals_intervals() const override { return true; }
  GraphClass declared_class() const override { return GraphClass::interval; }
  int announced_batches() const override { return 2; }

  std::optional<BatchSpec> next_batch(const RevealedState& s) override {
    if (s.batch_count() == 0) {
      BatchSpec spec;
      for (int i = 0; i <= n_; ++i)
        for (int m = 0; m < 2 * q_; ++m)
          spec.intervals.push_back(closed(4 * i, 4 * i + 1, "c" + std::to_string(i) + "_" + std::to_string(m)));
      for (const auto& iv : spec.intervals) spec.names.push_back(iv.id);
      spec.count = static_cast<int>(spec.intervals.size());
      return spec;
    }
    if (s.batch_count() >= 2 || finished_) return std::nullopt;
    finished_ = true;
    if (distinct_colors(s.colors) > 3 * q_) {
      early_stop_ = true;
      return std::nullopt;
    }
    std::map<std::vector<Color>, int> seen;
    for (int i = 0; i <= n_ && twins_.first < 0; ++i) {
      std::vector<Vertex> members;
      for (int m = 0; m < 2 * q_; ++m) members.push_back(i * 2 * q_ + m);
      auto [it, fresh] = seen.emplace(detail::sorted_colors(s, members), i);
      if (!fresh) twins_ = {it->second, i};
    }
    if (twins_.first < 0) throw InvariantViolation("interval-kt adversary: pigeonhole found no twin cliques");
    const auto [k, l] = twins_;
    BatchSpec spec;
    for (int m = 0; m < 2 * q_; ++m) spec.intervals.push_back(closed(4 * k, 4 * k + 3, "x" + std::to_string(m)));
    for (int m = 0; m < 2 * q_; ++m) spec.intervals.push_back(closed(4 * k + 2, 4 * l + 1, "y" + std::to_string(m)));
    for (const auto& iv : spec.intervals) spec.names.push_back(iv.id);
    spec.count = static_cast<int>(spec.intervals.size());
    return spec;
  }

  std::optional<Coloring> witness(const RevealedState& s) const override { return sweep_color(s.intervals); }

  std::optional<Guarantee> guarantee(const RevealedState& s) const override {
    const int used = distinct_colors(s.colors);
    const int need = early_stop_ ? 3 * q_ + 1 : 6 * q_;
    return Guarantee{"at least " + std::to_string(need) + " distinct colors (used " + std::to_string(used) + ")",
                     used >= need};
  }

  Json details() const override {
    return {{"q", q_}, {"N", n_}, {"twins", {twins_.first, twins_.second}}, {"early_stop", early_stop_}};
  }

 private:
  int q_;
  int n_ = 0;
  bool finished_ = false;
  bool early_stop_ = false;
  std::pair<int, int> twins_{-1, -1};
};

// Sum coloring with k known: batch i has M^i vertices joined to the designated
// vertices v_1..v_{i-1}.
class SumKnownAdversary final : public Adversary {
 public:
  SumKnownAdversary(int k, int m, bool connect = false) : k_(k), m_(m), connect_(connect) {
    if (k < 1 || k > 3) throw UnsupportedInput("sum-known adversary supports 1 <= k <= 3");
    if (m <= 2 * k * k) throw UnsupportedInput("sum-known adversary needs M > 2k^2");
    if (ipow(m, k) > 1000000) throw UnsupportedInput("sum-known adversary needs M^k <= 10^6");
  }

  const std::vector<Vertex>& designated() const { return designated_; }
  bool stopped_early() const { return early_stop_; }
  std::optional<Vertex> connector() const { return hub_; }

  std::string name() const override { return "sum-known"; }
  Objective objective() const override { return Objective::sum; }
  bool reveals_intervals() const override { return false; }
  GraphClass declared_class() const override { return k_ <= 2 ? GraphClass::forest : GraphClass::general; }
  int announced_batches() const override { return k_; }

  std::optional<BatchSpec> next_batch(const RevealedState& s) override {
    const int done = s.batch_count();
    if (done >= k_ || early_stop_) return std::nullopt;
    if (done > 0) {
      const auto [first, count] = s.batches[done - 1];
      std::optional<Vertex> pick;
      for (Vertex v = first; v < first + count && !pick; ++v)
        if (s.colors[v] <= k_ - 1) pick = v;
      if (!pick) {
        early_stop_ = true;
        return std::nullopt;
      }
      designated_.push_back(*pick);
    }
    const int i = done + 1;
    const Vertex first = s.vertex_count();
    const auto size = static_cast<int>(ipow(m_, i));
    BatchSpec spec;
    spec.count = size;
    for (Vertex v = first; v < first + size; ++v)
      for (Vertex d : designated_) spec.edges.emplace_back(v, d);
    if (connect_ && i == k_ && k_ >= 2) {
      hub_ = first + size;
      spec.count = size + 1;
      for (int t = 0; t < s.batches[0].second; ++t) spec.edges.emplace_back(*hub_, s.batches[0].first + t);
    }
    return spec;
  }

  std::optional<Coloring> witness(const RevealedState& s) const override {
    Coloring c(static_cast<std::size_t>(s.vertex_count()), 1);
    for (std::size_t t = 0; t < designated_.size(); ++t) c[designated_[t]] = static_cast<Color>(t) + 2;
    if (hub_ && *hub_ < s.vertex_count()) c[*hub_] = least_free_color(s.graph, c, *hub_);
    return c;
  }

  std::optional<Guarantee> guarantee(const RevealedState& s) const override {
    const int j = s.batch_count();
    const Cost need = static_cast<Cost>(k_) * ipow(m_, j);
    const Cost got = color_sum(s.colors);
    bool ok = got >= need;
    std::string text = "algorithm sum " + std::to_string(got) + " >= k*M^j = " + std::to_string(need);
    if (!early_stop_ && j == k_) {
      std::vector<Color> des;
      for (Vertex d : designated_) des.push_back(s.colors[d]);
      std::sort(des.begin(), des.end());
      std::vector<Color> expect(static_cast<std::size_t>(k_ - 1));
      std::iota(expect.begin(), expect.end(), 1);
      ok = ok && des == expect;
      text += "; designated vertices carry colors 1..k-1 once each";
    }
    return Guarantee{text, ok};
  }

  Json details() const override {
    return {{"k", k_}, {"M", m_}, {"designated", designated_}, {"early_stop", early_stop_}, {"connect", connect_}};
  }

 private:
  int k_;
  int m_;
  bool connect_;
  bool early_stop_ = false;
  std::vector<Vertex> designated_;
  std::optional<Vertex> hub_;
};

// Sum coloring with k unknown, at structural scale: batch i consists of
// M^(i-1) cliques of size 3*floor(M/f(i)); a clique with at least M/f(i)
// cheap vertices (color <= 10CM) donates its cheap vertices as specials,
// which every later vertex is joined to.
class SumUnknownAdversary final : public Adversary {
 public:
  SumUnknownAdversary(int k, int m, ScheduleFunction f = schedule_isq(), int c = 10)
      : k_(k), m_(m), c_(c), f_(std::move(f)) {
    if (k < 1 || k > 3) throw UnsupportedInput("sum-unknown adversary supports 1 <= k <= 3");
    if (m < 1 || m > 12) throw UnsupportedInput("sum-unknown adversary supports 1 <= M <= 12");
    if (c < 1) throw UnsupportedInput("sum-unknown adversary needs C >= 1");
  }

  int clique_size(int i) const { return 3 * static_cast<int>((Rational(m_) / f_.f(i)).floor()); }
  Cost small_limit() const { return 10LL * c_ * m_; }
  // Whether M exceeds 130 C^2 f(k)^2, the regime where the witness bound is proven.
  bool bound_regime() const { return Rational(m_) > Rational(130LL * c_ * c_) * f_.f(k_) * f_.f(k_); }
  const std::vector<std::vector<Vertex>>& specials() const { return specials_; }
  const std::vector<std::vector<std::vector<Vertex>>>& cliques() const { return cliques_; }

  std::string name() const override { return "sum-unknown"; }
  Objective objective() const override { return Objective::sum; }
  bool reveals_intervals() const override { return false; }
  GraphClass declared_class() const override { return GraphClass::general; }
  int announced_batches() const override { return k_; }

  std::optional<BatchSpec> next_batch(const RevealedState& s) override {
    const int done = s.batch_count();
    if (done > 0 && static_cast<int>(specials_.size()) < done) select_specials(s, done);
    if (done >= k_) return std::nullopt;
    const int i = done + 1;
    const int size = clique_size(i);
    const auto count = static_cast<int>(ipow(m_, i - 1));
    BatchSpec spec;
    Vertex v = s.vertex_count();
    cliques_.emplace_back();
    for (int t = 0; t < count; ++t) {
      detail::add_clique_edges(spec.edges, v, size);
      cliques_.back().emplace_back();
      for (int x = 0; x < size; ++x) cliques_.back().back().push_back(v++);
    }
    spec.count = v - s.vertex_count();
    for (Vertex u = s.vertex_count(); u < v; ++u)
      for (const auto& batch : specials_)
        for (Vertex sp : batch) spec.edges.emplace_back(u, sp);
    return spec;
  }

  // Proper coloring of the first `prefix` batches: in every clique the
  // vertices that are not specials of an earlier-than-last batch get 1..n_K,
  // such specials get 3M plus the algorithm's color.
  Coloring prefix_witness(const RevealedState& s, int prefix) const {
    Coloring c(static_cast<std::size_t>(s.vertex_count()), 0);
    std::vector<char> special(static_cast<std::size_t>(s.vertex_count()), 0);
    for (int b = 0; b + 1 < prefix && b < static_cast<int>(specials_.size()); ++b)
      for (Vertex v : specials_[b]) special[v] = 1;
    for (int b = 0; b < prefix; ++b)
      for (const auto& clique : cliques_[b]) {
        Color next = 1;
        for (Vertex v : clique) c[v] = special[v] ? 3 * m_ + s.colors[v] : next++;
      }
    c.resize(static_cast<std::size_t>(s.batches[prefix - 1].first + s.batches[prefix - 1].second));
    return c;
  }

  std::optional<Coloring> witness(const RevealedState& s) const override {
    if (s.batch_count() == 0) return Coloring{};
    return prefix_witness(s, s.batch_count());
  }

  struct StructureReport {
    bool clique_sizes = true;
    bool wiring = true;
    bool injective_small_colors = true;
    bool witnesses_proper = true;
    std::vector<bool> bound_checked;  // per prefix
    std::vector<bool> bound_holds;    // per prefix
    std::vector<Cost> witness_sums;

    bool ok() const {
      bool b = clique_sizes && wiring && injective_small_colors && witnesses_proper;
      for (std::size_t i = 0; i < bound_checked.size(); ++i) b = b && (!bound_checked[i] || bound_holds[i]);
      return b;
    }
  };

  StructureReport structure(const RevealedState& s) const {
    StructureReport r;
    std::vector<char> special(static_cast<std::size_t>(s.vertex_count()), 0);
    std::vector<Vertex> earlier;
    std::set<Color> special_colors;
    for (int b = 0; b < s.batch_count(); ++b) {
      const int i = b + 1;
      for (const auto& clique : cliques_[b]) {
        r.clique_sizes = r.clique_sizes && static_cast<int>(clique.size()) == clique_size(i);
        for (Vertex v : clique) {
          std::set<Vertex> expect(clique.begin(), clique.end());
          expect.erase(v);
          expect.insert(earlier.begin(), earlier.end());
          for (Vertex w : s.graph.neighbors(v)) {
            if (w > v && s.batch_of(w) > b) continue;  // later vertices wire themselves
            r.wiring = r.wiring && expect.erase(w) == 1;
          }
          r.wiring = r.wiring && expect.empty();
        }
      }
      r.clique_sizes = r.clique_sizes && static_cast<std::int64_t>(cliques_[b].size()) == ipow(m_, i - 1);
      if (b < static_cast<int>(specials_.size()))
        for (Vertex v : specials_[b]) {
          r.injective_small_colors =
              r.injective_small_colors && s.colors[v] <= small_limit() && special_colors.insert(s.colors[v]).second;
          earlier.push_back(v);
        }
      const RevealedState& st = s;
      Coloring w = prefix_witness(st, i);
      const std::vector<Vertex> keep = [&] {
        std::vector<Vertex> vs(w.size());
        std::iota(vs.begin(), vs.end(), 0);
        return vs;
      }();
      const Graph prefix_graph = induced_subgraph(s.graph, keep);
      r.witnesses_proper = r.witnesses_proper && validate_coloring(prefix_graph, w).ok;
      const Cost sum = color_sum(w);
      r.witness_sums.push_back(sum);
      const Rational fi = f_.f(i);
      const bool holds = Rational(sum) * fi * fi < Rational(19) * Rational(ipow(m_, i + 1));
      r.bound_checked.push_back(i == 1 || bound_regime());
      r.bound_holds.push_back(holds);
    }
    return r;
  }

  std::optional<Guarantee> guarantee(const RevealedState& s) const override {
    const StructureReport r = structure(s);
    std::string text = "clique sizes, special wiring, one special per small color, proper witnesses";
    text += bound_regime() ? ", witness bound for every prefix" : ", witness bound for the first batch only";
    return Guarantee{text, r.ok()};
  }

  Json details() const override {
    Json sp = Json::array();
    for (const auto& b : specials_) sp.push_back(b);
    Json sizes = Json::array();
    for (int i = 1; i <= k_; ++i) sizes.push_back(clique_size(i));
    return {{"k", k_}, {"M", m_}, {"C", c_}, {"schedule", f_.name}, {"clique_sizes", sizes},
            {"specials", sp}, {"bound_regime", bound_regime()}};
  }

  Json structure_json(const RevealedState& s) const {
    const StructureReport r = structure(s);
    Json prefixes = Json::array();
    for (std::size_t i = 0; i < r.witness_sums.size(); ++i)
      prefixes.push_back({{"batch", i + 1}, {"witness_sum", r.witness_sums[i]}, {"bound_checked", r.bound_checked[i]},
                          {"bound_holds", r.bound_holds[i]}});
    return {{"clique_sizes", r.clique_sizes}, {"wiring", r.wiring}, {"injective_small_colors", r.injective_small_colors},
            {"witnesses_proper", r.witnesses_proper}, {"prefixes", prefixes}};
  }

 private:
  void select_specials(const RevealedState& s, int batch) {
    const int i = batch;
    std::vector<Vertex> chosen;
    for (const auto& clique : cliques_[batch - 1]) {
      std::vector<Vertex> cheap;
      for (Vertex v : clique)
        if (s.colors[v] <= small_limit()) cheap.push_back(v);
      if (!clique.empty() && Rational(static_cast<std::int64_t>(cheap.size())) * f_.f(i) >= Rational(m_)) {
        chosen = cheap;
        break;
      }
    }
    specials_.push_back(chosen);
  }

  int k_;
  int m_;
  int c_;
  ScheduleFunction f_;
  std::vector<std::vector<std::vector<Vertex>>> cliques_;
  std::vector<std::vector<Vertex>> specials_;
};

}  // namespace batchcolor

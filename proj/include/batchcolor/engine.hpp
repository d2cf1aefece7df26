#pragma once

// The online batch contract and the measurement harness.
//
// A colorer sees the revealed graph one batch at a time and must return
// colors for exactly the new vertices; earlier colors are owned by the engine
// and cannot change. An adversary produces batches adaptively from the state
// so far and certifies an upper bound on OPT with an explicit coloring.

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "batchcolor/errors.hpp"
#include "batchcolor/graph.hpp"
#include "batchcolor/interval.hpp"
#include "batchcolor/oracles.hpp"
#include "batchcolor/rational.hpp"

namespace batchcolor {

using Json = nlohmann::json;

enum class Objective { colors, sum };
enum class GraphClass { general, forest, interval };

inline std::string to_string(Objective o) { return o == Objective::colors ? "colors" : "sum"; }
inline std::string to_string(GraphClass c) {
  switch (c) {
    case GraphClass::forest:
      return "forest";
    case GraphClass::interval:
      return "interval";
    default:
      return "general";
  }
}

// One batch as emitted by an instance or adversary. New vertices receive the
// next consecutive global ids. In interval mode `intervals` holds one interval
// per new vertex and the edges are derived; in graph mode `edges` uses global
// ids and each edge must touch a new vertex.
struct BatchSpec {
  int count = 0;
  std::vector<std::string> names;
  std::vector<Edge> edges;
  std::vector<Interval> intervals;
};

struct BatchedInstance {
  bool intervals = false;
  std::vector<BatchSpec> batches;
};

struct RevealedState {
  bool interval_mode = false;
  Graph graph;
  Coloring colors;  // 0 on vertices that are not colored yet
  std::vector<std::string> names;
  std::vector<Interval> intervals;  // interval mode only, indexed by vertex
  std::vector<std::pair<Vertex, int>> batches;  // (first vertex, count)
  std::vector<std::vector<Edge>> batch_edges;

  int batch_count() const { return static_cast<int>(batches.size()); }
  int vertex_count() const { return graph.size(); }
  int batch_of(Vertex v) const {
    for (int b = batch_count() - 1; b >= 0; --b)
      if (v >= batches[b].first) return b;
    return -1;
  }
  std::vector<Vertex> batch_vertices(int b) const {
    std::vector<Vertex> out(static_cast<std::size_t>(batches[b].second));
    for (int k = 0; k < batches[b].second; ++k) out[k] = batches[b].first + k;
    return out;
  }
  std::vector<Interval> batch_intervals(int b) const {
    return {intervals.begin() + batches[b].first, intervals.begin() + batches[b].first + batches[b].second};
  }
};

class OnlineColorer {
 public:
  virtual ~OnlineColorer() = default;
  virtual std::string name() const = 0;
  virtual bool k_aware() const { return false; }
  virtual bool needs_intervals() const { return false; }
  // Called once before the first batch; k is provided only to k-aware algorithms.
  virtual void start(std::optional<int> /*k*/) {}
  // Colors for the vertices of batch `batch` (the last one in `state`), in id order.
  virtual std::vector<Color> color_batch(const RevealedState& state, int batch) = 0;
  virtual Json diagnostics() const { return nullptr; }
};

struct Guarantee {
  std::string description;
  bool passed = true;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  virtual Objective objective() const = 0;
  virtual bool reveals_intervals() const = 0;
  virtual GraphClass declared_class() const = 0;
  // Upper bound on the number of batches; told to k-aware algorithms.
  virtual int announced_batches() const = 0;
  virtual std::optional<BatchSpec> next_batch(const RevealedState& state) = 0;
  // A proper coloring of the final graph certifying an upper bound on OPT.
  virtual std::optional<Coloring> witness(const RevealedState& state) const = 0;
  // Interval representation of the final graph, when one exists and the
  // algorithm did not already receive it.
  virtual std::optional<std::vector<Interval>> representation(const RevealedState& /*state*/) const {
    return std::nullopt;
  }
  virtual std::optional<Guarantee> guarantee(const RevealedState& state) const = 0;
  virtual Json details() const { return Json::object(); }
};

struct RunOptions {
  OracleLimits limits = OracleLimits::from_env();
};

struct RatioReport {
  Objective objective = Objective::colors;
  std::string algorithm;
  std::string adversary;
  Cost algorithm_cost = 0;
  Cost opt_cost = 0;
  bool opt_is_bound = false;
  std::string opt_source;  // "oracle", "interval-clique", "witness" or "empty"
  Rational ratio{1};
  int distinct_colors = 0;
  std::optional<Cost> witness_cost;
  std::optional<Coloring> witness;
  std::optional<std::vector<Interval>> representation;
  std::optional<Guarantee> guarantee;
  RevealedState state;
  std::vector<std::vector<Color>> batch_colors;
  Json algorithm_diagnostics;
  Json adversary_details;
};

inline Cost objective_cost(Objective o, const Coloring& c) { return o == Objective::colors ? max_color(c) : color_sum(c); }

namespace detail {

inline void append_batch(RevealedState& s, const BatchSpec& spec) {
  const Vertex first = s.vertex_count();
  const int count = s.interval_mode ? static_cast<int>(spec.intervals.size()) : spec.count;
  if (count < 0) throw InconsistentInstance("negative batch size");
  if (!s.interval_mode && !spec.intervals.empty())
    throw InconsistentInstance("graph-mode batch carries intervals");
  if (!spec.names.empty() && static_cast<int>(spec.names.size()) != count)
    throw InconsistentInstance("batch names do not match the vertex count");
  for (int k = 0; k < count; ++k) {
    s.graph.add_vertex();
    s.colors.push_back(0);
    s.names.push_back(spec.names.empty() ? "v" + std::to_string(first + k) : spec.names[k]);
  }
  s.batches.emplace_back(first, count);
  std::vector<Edge> added;
  if (s.interval_mode) {
    for (const auto& iv : spec.intervals) {
      require_valid(iv);
      s.intervals.push_back(iv);
    }
    for (Vertex v = first; v < first + count; ++v)
      for (Vertex u = 0; u < v; ++u)
        if (intersects(s.intervals[u], s.intervals[v])) {
          s.graph.add_edge(u, v);
          added.emplace_back(u, v);
        }
  } else {
    for (auto [u, v] : spec.edges) {
      if (u < 0 || v < 0 || u >= s.vertex_count() || v >= s.vertex_count())
        throw InconsistentInstance("edge to a vertex that has not been revealed");
      if (u < first && v < first) throw InconsistentInstance("edge between two earlier vertices");
      if (u == v) throw InconsistentInstance("self-loop");
      if (u > v) std::swap(u, v);
      if (s.graph.has_edge(u, v)) continue;
      s.graph.add_edge(u, v);
      added.emplace_back(u, v);
    }
  }
  s.batch_edges.push_back(std::move(added));
}

inline bool same_graph(const Graph& a, const Graph& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
  for (const auto& [u, v] : a.edges())
    if (!b.has_edge(u, v)) return false;
  return true;
}

inline std::string describe_violation(const RevealedState& s, const ValidationResult& r) {
  if (!r.uncolored_vertices.empty()) return "vertex " + s.names[r.uncolored_vertices.front()] + " has no valid color";
  const auto [u, v] = r.monochromatic_edges.front();
  return "edge {" + s.names[u] + "," + s.names[v] + "} is monochromatic with color " + std::to_string(s.colors[u]);
}

}  // namespace detail

// Plays `colorer` against `adversary` until the adversary stops.
inline RatioReport run_duel(OnlineColorer& colorer, Adversary& adversary, const RunOptions& options = {}) {
  if (colorer.needs_intervals() && !adversary.reveals_intervals())
    throw UnsupportedInput(colorer.name() + " needs interval representations, " + adversary.name() +
                           " reveals graphs only");
  RatioReport rep;
  rep.objective = adversary.objective();
  rep.algorithm = colorer.name();
  rep.adversary = adversary.name();
  RevealedState& s = rep.state;
  s.interval_mode = adversary.reveals_intervals();
  colorer.start(colorer.k_aware() ? std::optional<int>(adversary.announced_batches()) : std::nullopt);

  while (auto spec = adversary.next_batch(s)) {
    detail::append_batch(s, *spec);
    const int b = s.batch_count() - 1;
    const auto [first, count] = s.batches[b];
    std::vector<Color> got = colorer.color_batch(s, b);
    if (static_cast<int>(got.size()) != count)
      throw ImproperColoring(colorer.name() + " returned " + std::to_string(got.size()) + " colors for a batch of " +
                             std::to_string(count));
    for (int k = 0; k < count; ++k) s.colors[first + k] = got[k];
    const ValidationResult check = validate_coloring(s.graph, s.colors);
    if (!check.ok)
      throw ImproperColoring(colorer.name() + " after batch " + std::to_string(b + 1) + ": " +
                             detail::describe_violation(s, check));
    rep.batch_colors.push_back(std::move(got));
  }

  const GraphClass cls = adversary.declared_class();
  if (cls == GraphClass::forest && !is_forest(s.graph))
    throw InconsistentInstance(adversary.name() + " declared a forest but emitted a cycle");
  std::optional<std::vector<Interval>> rep_intervals;
  if (s.interval_mode) rep_intervals = s.intervals;
  else if (auto r = adversary.representation(s)) rep_intervals = std::move(r);
  if (rep_intervals) {
    if (static_cast<int>(rep_intervals->size()) != s.vertex_count() ||
        !detail::same_graph(interval_graph(*rep_intervals), s.graph))
      throw InconsistentInstance(adversary.name() + ": representation does not match the emitted graph");
    if (!s.interval_mode) rep.representation = rep_intervals;
  } else if (cls == GraphClass::interval) {
    throw InconsistentInstance(adversary.name() + " declared an interval graph without a representation");
  }

  rep.algorithm_cost = objective_cost(rep.objective, s.colors);
  rep.distinct_colors = distinct_colors(s.colors);
  if (auto w = adversary.witness(s)) {
    const ValidationResult wcheck = validate_coloring(s.graph, *w);
    if (!wcheck.ok) throw InconsistentInstance(adversary.name() + ": witness coloring is not proper");
    rep.witness_cost = objective_cost(rep.objective, *w);
    rep.witness = std::move(w);
  }

  if (s.vertex_count() == 0) {
    rep.opt_cost = 0;
    rep.opt_source = "empty";
  } else if (rep.objective == Objective::colors && rep_intervals) {
    rep.opt_cost = max_clique_size(*rep_intervals);
    rep.opt_source = "interval-clique";
  } else {
    try {
      rep.opt_cost = rep.objective == Objective::colors ? chromatic_number_exact(s.graph, options.limits).value
                                                        : min_sum_coloring_exact(s.graph, options.limits).value;
      rep.opt_source = "oracle";
    } catch (const SizeLimitExceeded&) {
      if (!rep.witness_cost) throw;
      rep.opt_cost = *rep.witness_cost;
      rep.opt_is_bound = true;
      rep.opt_source = "witness";
    }
  }
  if (rep.witness_cost && !rep.opt_is_bound && *rep.witness_cost < rep.opt_cost)
    throw InconsistentInstance("witness cost is below the exact optimum");
  rep.ratio = rep.opt_cost == 0 ? Rational(1) : Rational(rep.algorithm_cost, rep.opt_cost);
  rep.guarantee = adversary.guarantee(s);
  rep.algorithm_diagnostics = colorer.diagnostics();
  rep.adversary_details = adversary.details();
  return rep;
}

// Replays a fixed instance as a non-adaptive adversary.
class InstanceReplay final : public Adversary {
 public:
  InstanceReplay(BatchedInstance instance, Objective objective, std::optional<int> k = std::nullopt)
      : inst_(std::move(instance)), objective_(objective), k_(k) {}

  std::string name() const override { return "instance"; }
  Objective objective() const override { return objective_; }
  bool reveals_intervals() const override { return inst_.intervals; }
  GraphClass declared_class() const override { return inst_.intervals ? GraphClass::interval : GraphClass::general; }
  int announced_batches() const override { return k_.value_or(static_cast<int>(inst_.batches.size())); }
  std::optional<BatchSpec> next_batch(const RevealedState&) override {
    if (next_ >= inst_.batches.size()) return std::nullopt;
    return inst_.batches[next_++];
  }
  // Offline greedy coloring (sweep on intervals, largest degree first on
  // graphs); serves as the OPT bound when the oracle is out of range.
  std::optional<Coloring> witness(const RevealedState& s) const override {
    if (s.interval_mode) return sweep_color(s.intervals);
    std::vector<Vertex> order(static_cast<std::size_t>(s.vertex_count()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return s.graph.degree(a) > s.graph.degree(b); });
    return first_fit(s.graph, order);
  }
  std::optional<Guarantee> guarantee(const RevealedState&) const override { return std::nullopt; }

 private:
  BatchedInstance inst_;
  Objective objective_;
  std::optional<int> k_;
  std::size_t next_ = 0;
};

inline RatioReport run_instance(OnlineColorer& colorer, const BatchedInstance& instance, Objective objective,
                                const RunOptions& options = {}, std::optional<int> k = std::nullopt) {
  InstanceReplay replay(instance, objective, k);
  return run_duel(colorer, replay, options);
}

// Plays an instance without computing OPT; returns the final coloring.
inline Coloring color_instance(OnlineColorer& colorer, const BatchedInstance& instance,
                               std::optional<int> k = std::nullopt) {
  InstanceReplay replay(instance, Objective::colors, k);
  if (colorer.needs_intervals() && !instance.intervals)
    throw UnsupportedInput(colorer.name() + " needs interval representations");
  RevealedState s;
  s.interval_mode = instance.intervals;
  colorer.start(colorer.k_aware() ? std::optional<int>(replay.announced_batches()) : std::nullopt);
  while (auto spec = replay.next_batch(s)) {
    detail::append_batch(s, *spec);
    const int b = s.batch_count() - 1;
    const auto [first, count] = s.batches[b];
    const std::vector<Color> got = colorer.color_batch(s, b);
    if (static_cast<int>(got.size()) != count) throw ImproperColoring(colorer.name() + " returned a wrong number of colors");
    for (int x = 0; x < count; ++x) s.colors[first + x] = got[x];
    const ValidationResult check = validate_coloring(s.graph, s.colors);
    if (!check.ok) throw ImproperColoring(colorer.name() + ": " + detail::describe_violation(s, check));
  }
  return s.colors;
}

}  // namespace batchcolor

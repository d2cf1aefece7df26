#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "batchcolor/engine.hpp"
#include "batchcolor/interval.hpp"
#include "batchcolor/oracles.hpp"

namespace batchcolor {

// Colors one batch's induced subgraph optimally and shifts it above every
// color used by earlier batches. `offset` accumulates the per-batch chromatic
// numbers.
struct GenericBatchStep {
  std::vector<Color> colors;
  Color new_offset = 0;
};

inline GenericBatchStep generic_batch_step(const Graph& batch_subgraph, Color offset,
                                           const OracleLimits& limits = OracleLimits::from_env()) {
  const OracleResult r = chromatic_number_exact(batch_subgraph, limits);
  GenericBatchStep step;
  step.colors = r.witness;
  for (Color& c : step.colors) c += offset;
  step.new_offset = offset + static_cast<Color>(r.value);
  return step;
}

inline GenericBatchStep generic_batch_step(const std::vector<Interval>& batch_intervals, Color offset) {
  GenericBatchStep step;
  step.colors = sweep_color(batch_intervals);
  const Color chi = max_color(step.colors);
  for (Color& c : step.colors) c += offset;
  step.new_offset = offset + chi;
  return step;
}

class GenericBatch final : public OnlineColorer {
 public:
  explicit GenericBatch(OracleLimits limits = OracleLimits::from_env()) : limits_(limits) {}

  std::string name() const override { return "generic-batch"; }
  void start(std::optional<int>) override {
    offset_ = 0;
    per_batch_chi_.clear();
  }
  std::vector<Color> color_batch(const RevealedState& s, int batch) override {
    const Color before = offset_;
    GenericBatchStep step = s.interval_mode
                                ? generic_batch_step(s.batch_intervals(batch), offset_)
                                : generic_batch_step(induced_subgraph(s.graph, s.batch_vertices(batch)), offset_, limits_);
    offset_ = step.new_offset;
    per_batch_chi_.push_back(offset_ - before);
    return std::move(step.colors);
  }
  Json diagnostics() const override { return Json{{"per_batch_chromatic", per_batch_chi_}}; }

 private:
  OracleLimits limits_;
  Color offset_ = 0;
  std::vector<Color> per_batch_chi_;
};

// Online First-Fit: vertices in presentation order, least color free among
// already colored neighbors.
class FirstFit : public OnlineColorer {
 public:
  std::string name() const override { return "first-fit"; }
  std::vector<Color> color_batch(const RevealedState& s, int batch) override {
    Coloring work = s.colors;
    const auto [first, count] = s.batches[batch];
    std::vector<Color> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
      const Vertex v = first + k;
      work[v] = least_free_color(s.graph, work, v);
      out[k] = work[v];
    }
    return out;
  }
};

// Proper but otherwise arbitrary: each vertex picks uniformly among the three
// smallest colors not used by its colored neighbors. Deterministic per seed.
class RandomProper final : public OnlineColorer {
 public:
  explicit RandomProper(std::uint64_t seed = 1) : seed_(seed), rng_(seed) {}

  std::string name() const override { return "random-proper"; }
  void start(std::optional<int>) override { rng_.seed(seed_); }
  std::vector<Color> color_batch(const RevealedState& s, int batch) override {
    Coloring work = s.colors;
    const auto [first, count] = s.batches[batch];
    std::vector<Color> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
      const Vertex v = first + k;
      std::vector<Color> used;
      for (Vertex w : s.graph.neighbors(v))
        if (work[w] > 0) used.push_back(work[w]);
      std::sort(used.begin(), used.end());
      std::vector<Color> options;
      for (Color c = 1; options.size() < 3; ++c)
        if (!std::binary_search(used.begin(), used.end(), c)) options.push_back(c);
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      work[v] = options[pick(rng_)];
      out[k] = work[v];
    }
    return out;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

}  // namespace batchcolor

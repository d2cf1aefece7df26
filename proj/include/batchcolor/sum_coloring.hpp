#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "batchcolor/algorithms.hpp"
#include "batchcolor/engine.hpp"
#include "batchcolor/oracles.hpp"
#include "batchcolor/rational.hpp"

namespace batchcolor {

// Nondecreasing f >= 1 together with a certified bound c_f on sum 1/f(i).
struct ScheduleFunction {
  std::string name;
  std::function<Rational(int)> f;
  Rational c_f;

  // Checks f(1) >= 1, monotonicity and sum_{i<=n} 1/f(i) <= c_f for n = 1..upto.
  // Partial sums are kept exact; if the exact denominator would overflow, the
  // sum is rounded up to a multiple of 1e-12, which keeps the check sound.
  bool certify(int upto) const {
    Rational prev(1);
    Rational sum(0);
    for (int i = 1; i <= upto; ++i) {
      const Rational v = f(i);
      if (v < prev) return false;
      prev = v;
      const Rational term = Rational(1) / v;
      try {
        sum = sum + term;
      } catch (const std::overflow_error&) {
        sum = round_up(sum) + round_up(term);
      }
      if (sum > c_f) return false;
    }
    return true;
  }

 private:
  static Rational round_up(const Rational& r) {
    constexpr std::int64_t den = 1000000000000;
    const __int128 scaled = static_cast<__int128>(r.num()) * den;
    __int128 q = scaled / r.den();
    if (q * r.den() < scaled) ++q;
    return Rational(static_cast<std::int64_t>(q), den);
  }
};

inline ScheduleFunction schedule_isq(Rational c_f = Rational(329, 200)) {
  return {"isq", [](int i) { return Rational(static_cast<std::int64_t>(i) * i); }, c_f};
}

inline ScheduleFunction schedule_icube(Rational c_f = Rational(1203, 1000)) {
  return {"icube", [](int i) { return Rational(static_cast<std::int64_t>(i) * i * i); }, c_f};
}

inline std::optional<ScheduleFunction> schedule_by_name(const std::string& name, std::optional<Rational> c_f) {
  if (name == "isq") return c_f ? schedule_isq(*c_f) : schedule_isq();
  if (name == "icube") return c_f ? schedule_icube(*c_f) : schedule_icube();
  return std::nullopt;
}

// k-BatchColor: optimal sum coloring per batch, color c of batch i mapped to k(c-1)+i.
class KBatchColor final : public OnlineColorer {
 public:
  explicit KBatchColor(OracleLimits limits = OracleLimits::from_env()) : limits_(limits) {}

  std::string name() const override { return "k-batch-color"; }
  bool k_aware() const override { return true; }
  void start(std::optional<int> k) override {
    if (!k || *k < 1) throw UnsupportedInput("k-batch-color needs the number of batches in advance");
    k_ = *k;
  }
  std::vector<Color> color_batch(const RevealedState& s, int batch) override {
    if (batch >= k_) throw UnsupportedInput("more batches than announced");
    const OracleResult r = min_sum_coloring_exact(induced_subgraph(s.graph, s.batch_vertices(batch)), limits_);
    std::vector<Color> out(r.witness.size());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = k_ * (r.witness[v] - 1) + batch + 1;
    return out;
  }

 private:
  OracleLimits limits_;
  int k_ = 0;
};

struct LedgerEntry {
  int batch = 0;  // 1-based
  int j = 0;      // within-batch color
  std::int64_t cap = 0;
  Color assigned = 0;
};

// BatchColor_f: per batch, the class of within-batch color j takes the
// largest available color not above floor(j * c_f * f(i)).
class BatchColorF final : public OnlineColorer {
 public:
  explicit BatchColorF(ScheduleFunction schedule = schedule_isq(), OracleLimits limits = OracleLimits::from_env())
      : schedule_(std::move(schedule)), limits_(limits) {}

  std::string name() const override { return "batch-color-f"; }
  void start(std::optional<int>) override {
    taken_.clear();
    ledger_.clear();
  }
  std::vector<Color> color_batch(const RevealedState& s, int batch) override {
    const int i = batch + 1;
    if (!schedule_.certify(i))
      throw InfeasibleBatch("schedule " + schedule_.name + " fails its certificate at i=" + std::to_string(i));
    const OracleResult r = min_sum_coloring_exact(induced_subgraph(s.graph, s.batch_vertices(batch)), limits_);
    const Color t = max_color(r.witness);
    const Rational scale = schedule_.c_f * schedule_.f(i);
    std::vector<Color> mapped(static_cast<std::size_t>(t) + 1, 0);
    for (Color j = 1; j <= t; ++j) {
      const std::int64_t cap = (scale * j).floor();
      Color pick = 0;
      for (std::int64_t c = cap; c >= 1 && pick == 0; --c)
        if (static_cast<std::size_t>(c) >= taken_.size() || !taken_[c]) pick = static_cast<Color>(c);
      if (pick == 0)
        throw InfeasibleBatch("no available color up to " + std::to_string(cap) + " for batch " + std::to_string(i) +
                              ", class " + std::to_string(j));
      if (static_cast<std::size_t>(pick) >= taken_.size()) taken_.resize(static_cast<std::size_t>(pick) + 1, 0);
      taken_[pick] = 1;
      mapped[j] = pick;
      ledger_.push_back({i, j, cap, pick});
    }
    std::vector<Color> out(r.witness.size());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = mapped[r.witness[v]];
    return out;
  }
  const std::vector<LedgerEntry>& ledger() const { return ledger_; }
  const ScheduleFunction& schedule() const { return schedule_; }
  Json diagnostics() const override {
    Json rows = Json::array();
    for (const auto& e : ledger_) rows.push_back({{"batch", e.batch}, {"j", e.j}, {"cap", e.cap}, {"color", e.assigned}});
    return Json{{"schedule", schedule_.name}, {"c_f", {schedule_.c_f.num(), schedule_.c_f.den()}}, {"ledger", rows}};
  }

 private:
  ScheduleFunction schedule_;
  OracleLimits limits_;
  std::vector<char> taken_;
  std::vector<LedgerEntry> ledger_;
};

// Sum of colors and vertex count per connected component.
struct ComponentSum {
  int vertices = 0;
  Cost sum = 0;
};

inline std::vector<ComponentSum> component_sums(const Graph& g, const Coloring& c) {
  std::vector<ComponentSum> out;
  for (const auto& comp : connected_components(g)) {
    ComponentSum cs;
    cs.vertices = static_cast<int>(comp.size());
    for (Vertex v : comp) cs.sum += c[v];
    out.push_back(cs);
  }
  return out;
}

// First-Fit restricted to forests; every revealed prefix must be acyclic.
class FirstFitSum final : public FirstFit {
 public:
  std::string name() const override { return "first-fit-sum"; }
  std::vector<Color> color_batch(const RevealedState& s, int batch) override {
    if (!is_forest(s.graph)) throw NotAForest("graph revealed up to batch " + std::to_string(batch + 1) + " has a cycle");
    auto out = FirstFit::color_batch(s, batch);
    Coloring all = s.colors;
    for (int k = 0; k < s.batches[batch].second; ++k) all[s.batches[batch].first + k] = out[k];
    sums_ = component_sums(s.graph, all);
    return out;
  }
  Json diagnostics() const override {
    Json rows = Json::array();
    for (const auto& cs : sums_) rows.push_back({{"vertices", cs.vertices}, {"sum", cs.sum}});
    return Json{{"component_sums", rows}};
  }

 private:
  std::vector<ComponentSum> sums_;
};

}  // namespace batchcolor

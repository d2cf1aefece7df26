#pragma once

// TwoBatches: 2-batch interval coloring with known representation using at
// most floor(3*omega/2) colors.
//
// The first batch is colored by a stack discipline. At the second batch the
// line is extended with two dummy cliques of size omega, the second-batch
// intervals are split into omega chains, and chains are colored two per
// iteration, region by region, with one recycled first-batch color and one
// fresh color.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "batchcolor/engine.hpp"
#include "batchcolor/errors.hpp"
#include "batchcolor/interval.hpp"

namespace batchcolor {

// Stack coloring of the selected intervals (all when `subset` is empty): the
// stack starts as stack_size..1 with 1 on top; a left endpoint pops, a right
// endpoint pushes its interval's color back. Unselected intervals get 0.
inline Coloring stack_color(const EventOrder& order, int stack_size, const std::vector<char>& subset = {}) {
  Coloring c(static_cast<std::size_t>(order.interval_count()), 0);
  std::vector<Color> stack;
  for (Color k = stack_size; k >= 1; --k) stack.push_back(k);
  for (const Event& ev : order.events()) {
    if (!subset.empty() && !subset[ev.owner]) continue;
    if (ev.left) {
      if (stack.empty()) throw InvariantViolation("stack coloring popped an empty stack");
      c[ev.owner] = stack.back();
      stack.pop_back();
    } else {
      stack.push_back(c[ev.owner]);
    }
  }
  return c;
}

inline Coloring color_first_batch(const std::vector<Interval>& batch1) {
  return stack_color(EventOrder(batch1), max_clique_size(batch1));
}

// First-Fit over second-batch intervals in left-endpoint order, padded with
// empty chains to exactly `omega`. Chains hold indices into `batch2`.
inline std::vector<std::vector<int>> partition_into_chains(const EventOrder& order, const std::vector<int>& members,
                                                           int omega) {
  std::vector<int> sorted = members;
  std::sort(sorted.begin(), sorted.end(), [&](int x, int y) { return order.left_event(x) < order.left_event(y); });
  std::vector<std::vector<int>> chains;
  for (int x : sorted) {
    std::size_t k = 0;
    while (k < chains.size() && order.hi_rank(chains[k].back()) >= order.lo_rank(x)) ++k;
    if (k == chains.size()) chains.emplace_back();
    chains[k].push_back(x);
  }
  if (static_cast<int>(chains.size()) > omega)
    throw InvariantViolation("second batch needs more than omega chains");
  chains.resize(static_cast<std::size_t>(std::max(omega, 0)));
  return chains;
}

inline std::vector<std::vector<int>> partition_into_chains(const std::vector<Interval>& batch2, int omega) {
  const EventOrder order(batch2);
  std::vector<int> all(batch2.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
  return partition_into_chains(order, all, omega);
}

// The interval family seen by the second-batch algorithm: left dummy clique,
// first batch, second batch, right dummy clique, in this index order.
struct MergedLine {
  enum class Kind { left_dummy, first, second, right_dummy };

  std::vector<Interval> intervals;
  std::vector<Kind> kind;
  std::vector<int> source;  // index within its batch, -1 for dummies
  EventOrder order;
  int omega = 0;

  bool first_kind(int x) const { return kind[x] != Kind::second; }
  std::vector<char> first_mask() const {
    std::vector<char> m(intervals.size());
    for (std::size_t x = 0; x < m.size(); ++x) m[x] = first_kind(static_cast<int>(x)) ? 1 : 0;
    return m;
  }
};

// Places two nested families of omega closed intervals just left and right of
// every real endpoint. Within a family the interval colored j is
// [a + j*eps, b - j*eps], so the stack hands out 1..omega on the left dummies
// and gets them back in the order that restores the initial stack.
inline MergedLine install_dummy_cliques(const std::vector<Interval>& batch1, const std::vector<Interval>& batch2,
                                        int omega) {
  MergedLine line;
  line.omega = omega;
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  for (const auto* batch : {&batch1, &batch2})
    for (const auto& iv : *batch) {
      if (!lo || iv.lo < *lo) lo = iv.lo;
      if (!hi || iv.hi > *hi) hi = iv.hi;
    }
  const Rational left0 = lo.value_or(Rational(0)) - 2;
  const Rational right0 = hi.value_or(Rational(0)) + 1;
  const Rational eps(1, 2 * static_cast<std::int64_t>(omega) + 2);
  auto add = [&](Interval iv, MergedLine::Kind k, int src) {
    line.intervals.push_back(std::move(iv));
    line.kind.push_back(k);
    line.source.push_back(src);
  };
  for (int j = 1; j <= omega; ++j)
    add(closed(left0 + eps * j, left0 + 1 - eps * j, "dummy-left-" + std::to_string(j)), MergedLine::Kind::left_dummy, -1);
  for (std::size_t k = 0; k < batch1.size(); ++k) add(batch1[k], MergedLine::Kind::first, static_cast<int>(k));
  for (std::size_t k = 0; k < batch2.size(); ++k) add(batch2[k], MergedLine::Kind::second, static_cast<int>(k));
  for (int j = 1; j <= omega; ++j)
    add(closed(right0 + eps * j, right0 + 1 - eps * j, "dummy-right-" + std::to_string(j)), MergedLine::Kind::right_dummy,
        -1);
  line.order = EventOrder(line.intervals);
  return line;
}

struct ChainPick {
  int chain1 = -1;
  int chain2 = -1;
  int swaps = 0;
  int crossovers = 0;
};

// CreateChains for one region. `reps` are the region's representative points
// in increasing order; `colored_depth[r]` and `depth[r]` give, per rank, the
// number of already colored second-batch intervals and of all second-batch
// intervals containing r. Chains are modified in place by crossovers.
inline ChainPick create_chains(const EventOrder& order, std::vector<std::vector<int>>& chains,
                               const std::vector<Position>& reps, const std::vector<int>& colored_depth,
                               const std::vector<int>& depth, int i) {
  auto holds = [&](int chain, const Position& p) {
    if (chain < 0) return false;
    for (int x : chains[chain])
      if (order.contains(x, p)) return true;
    return false;
  };
  ChainPick pick;
  int best_lo = -1;
  for (std::size_t c = 0; c < chains.size(); ++c)
    for (int x : chains[c])
      if (best_lo < 0 || order.lo_rank(x) < best_lo) {
        best_lo = order.lo_rank(x);
        pick.chain1 = static_cast<int>(c);
      }
  if (pick.chain1 < 0) throw InvariantViolation("create_chains called on a region without intervals");
  for (std::size_t c = 0; c < chains.size() && pick.chain2 < 0; ++c)
    if (static_cast<int>(c) != pick.chain1) pick.chain2 = static_cast<int>(c);

  auto uncovered = [&](const Position& p) {
    const int have = colored_depth[p.rank] + (holds(pick.chain1, p) ? 1 : 0) + (holds(pick.chain2, p) ? 1 : 0);
    return have < std::min(depth[p.rank], i);
  };
  const std::size_t cap = 4 * (reps.size() + 2) * (chains.size() + 2);
  for (std::size_t guard = 0;; ++guard) {
    if (guard > cap) throw InvariantViolation("create_chains did not converge");
    std::size_t pi = 0;
    while (pi < reps.size() && !uncovered(reps[pi])) ++pi;
    if (pi == reps.size()) break;
    const Position p = reps[pi];
    int chain3 = -1;
    for (std::size_t c = 0; c < chains.size() && chain3 < 0; ++c)
      if (holds(static_cast<int>(c), p)) chain3 = static_cast<int>(c);
    if (chain3 < 0 || chain3 == pick.chain1 || chain3 == pick.chain2)
      throw InvariantViolation("uncovered point at rank " + std::to_string(p.rank) + " has no chain to supply it");
    std::optional<std::size_t> violating;
    for (std::size_t k = 0; k < pi; ++k) {
      const Position& q = reps[k];
      if (!holds(chain3, q) && !(holds(pick.chain1, q) && holds(pick.chain2, q))) violating = k;
    }
    if (!violating) {
      pick.chain2 = chain3;
      ++pick.swaps;
      continue;
    }
    const Position q = reps[*violating];
    const int partner = !holds(pick.chain2, q) ? pick.chain2 : pick.chain1;
    if (partner < 0) throw InvariantViolation("crossover without a partner chain");
    auto split_tail = [&](std::vector<int>& chain) {
      std::vector<int> head;
      std::vector<int> tail;
      for (int x : chain) (order.lo_rank(x) > q.rank ? tail : head).push_back(x);
      chain = std::move(head);
      return tail;
    };
    std::vector<int> tail = split_tail(chains[partner]);
    std::vector<int> tail3 = split_tail(chains[chain3]);
    chains[partner].insert(chains[partner].end(), tail3.begin(), tail3.end());
    chains[chain3].insert(chains[chain3].end(), tail.begin(), tail.end());
    ++pick.crossovers;
  }
  return pick;
}

struct InvariantReport {
  bool ok = true;
  std::string clause;  // "I1".."I4" when violated
  std::string detail;
};

// State of the second-batch algorithm; exposed so tests can inspect and
// perturb it.
class SecondBatchState {
 public:
  struct Region {
    int a = 0;
    int b = 0;  // inclusive rank span
    std::vector<std::vector<int>> chains;
    std::vector<char> processed;  // per merged interval
    bool alive = true;            // processed in every iteration so far
  };

  SecondBatchState(const std::vector<Interval>& batch1, const std::vector<Color>& batch1_colors,
                   const std::vector<Interval>& batch2)
      : batch1_colors_(batch1_colors) {
    std::vector<Interval> all = batch1;
    all.insert(all.end(), batch2.begin(), batch2.end());
    omega_ = max_clique_size(all);
    line_ = install_dummy_cliques(batch1, batch2, omega_);
    const EventOrder& ord = line_.order;
    const int n = ord.interval_count();
    const int top = ord.max_rank();

    color_ = stack_color(ord, omega_, line_.first_mask());
    for (int x = 0; x < n; ++x)
      if (line_.kind[x] == MergedLine::Kind::first && color_[x] != batch1_colors_[line_.source[x]])
        throw InvariantViolation("dummy cliques changed the first-batch stack coloring");

    cliques_ = maximal_cliques(ord, line_.first_mask());
    std::vector<Position> points;
    for (const auto& c : cliques_) points.push_back(c.clique_point);
    reps_ = representative_points(ord, points);
    active_.assign(cliques_.size(), 0);

    depth_.assign(static_cast<std::size_t>(top) + 1, 0);
    colored_depth_.assign(static_cast<std::size_t>(top) + 1, 0);
    std::vector<int> seconds;
    for (int x = 0; x < n; ++x)
      if (!line_.first_kind(x)) {
        seconds.push_back(x);
        for (int r = ord.lo_rank(x); r <= ord.hi_rank(x); ++r) ++depth_[r];
      }
    Region whole;
    whole.a = 0;
    whole.b = top;
    whole.chains = partition_into_chains(ord, seconds, omega_);
    whole.processed.assign(static_cast<std::size_t>(n), 0);
    regions_.push_back(std::move(whole));
  }

  int omega() const { return omega_; }
  int iteration() const { return i_; }
  const MergedLine& line() const { return line_; }
  const std::vector<MaximalClique>& cliques() const { return cliques_; }
  const std::vector<Position>& representatives() const { return reps_; }
  const std::vector<Region>& regions() const { return regions_; }
  std::vector<Region>& regions() { return regions_; }
  const Coloring& colors() const { return color_; }
  Coloring& colors() { return color_; }
  const std::vector<int>& depth() const { return depth_; }
  const std::vector<int>& colored_depth() const { return colored_depth_; }
  bool is_active(std::size_t clique) const { return active_[clique] != 0; }
  const Json& log() const { return log_; }

  // Marks second-batch interval x as colored with c.
  void color_second(int x, Color c) {
    color_[x] = c;
    for (int r = line_.order.lo_rank(x); r <= line_.order.hi_rank(x); ++r) ++colored_depth_[r];
  }

  InvariantReport check_invariant() const {
    const EventOrder& ord = line_.order;
    for (const Position& p : reps_)
      if (colored_depth_[p.rank] < std::min(depth_[p.rank], i_))
        return {false, "I1",
                "rank " + std::to_string(p.rank) + " lies in " + std::to_string(colored_depth_[p.rank]) +
                    " colored second-batch intervals, needs " + std::to_string(std::min(depth_[p.rank], i_))};
    for (const Region& R : regions_) {
      std::map<Color, int> second_colors;
      for (int y = 0; y < ord.interval_count(); ++y)
        if (!line_.first_kind(y) && color_[y] != 0 && ord.meets_span(y, R.a, R.b)) second_colors.emplace(color_[y], y);
      for (int x = 0; x < ord.interval_count(); ++x) {
        if (!line_.first_kind(x) || R.processed[x] || !ord.meets_span(x, R.a, R.b)) continue;
        if (auto it = second_colors.find(color_[x]); it != second_colors.end())
          return {false, "I2",
                  "unprocessed " + line_.intervals[x].to_string() + " and colored " +
                      line_.intervals[it->second].to_string() + " share color " + std::to_string(color_[x]) +
                      " in region [" + std::to_string(R.a) + "," + std::to_string(R.b) + "]"};
      }
      int nonempty = 0;
      for (const auto& ch : R.chains) nonempty += ch.empty() ? 0 : 1;
      if (nonempty > omega_ - 2 * i_)
        return {false, "I4",
                "region [" + std::to_string(R.a) + "," + std::to_string(R.b) + "] holds " + std::to_string(nonempty) +
                    " chains"};
      if (!R.alive) continue;
      for (std::size_t c = 0; c < cliques_.size(); ++c) {
        if (!active_[c]) continue;
        const int point = cliques_[c].clique_point.rank;
        if (point != R.a && point != R.b) continue;
        int unprocessed = 0;
        for (int m : cliques_[c].members) unprocessed += R.processed[m] ? 0 : 1;
        if (unprocessed != omega_ - i_)
          return {false, "I3",
                  "active clique at rank " + std::to_string(point) + " has " + std::to_string(unprocessed) +
                      " unprocessed members, expected " + std::to_string(omega_ - i_)};
      }
    }
    return {};
  }

  // Runs the whole second-batch algorithm; colors of batch-2 intervals are
  // read back with second_batch_colors().
  void run(bool record = false) {
    const EventOrder& ord = line_.order;
    auto checkpoint = [&](const char* where) {
      const InvariantReport rep = check_invariant();
      if (record) log_.push_back({{"i", i_}, {"at", where}, {"ok", rep.ok}, {"clause", rep.clause}, {"detail", rep.detail}});
      if (!rep.ok) throw InvariantViolation("invariant " + rep.clause + " violated at i=" + std::to_string(i_) + ": " + rep.detail);
    };
    while (i_ < omega_ / 2) {
      checkpoint("loop-top");
      ++i_;
      for (std::size_t c = 0; c < cliques_.size(); ++c)
        if (!active_[c] && cliques_[c].size() >= omega_ - i_ + 1) {
          active_[c] = 1;
          split_at(cliques_[c].clique_point.rank);
        }
      int swaps = 0;
      int crossovers = 0;
      for (Region& R : regions_) {
        const bool has_chain = std::any_of(R.chains.begin(), R.chains.end(), [](const auto& ch) { return !ch.empty(); });
        if (!R.alive || !has_chain) {
          R.alive = false;
          continue;
        }
        const ChainPick pick = create_chains(ord, R.chains, region_reps(R), colored_depth_, depth_, i_);
        swaps += pick.swaps;
        crossovers += pick.crossovers;
        const auto [il, ir] = boundary_intervals(R);
        if (il < 0) throw InvariantViolation("region without an unprocessed first-batch interval");
        R.processed[il] = 1;
        R.processed[ir] = 1;
        for (int x : R.chains[pick.chain1]) color_second(x, color_[il]);
        if (pick.chain2 >= 0)
          for (int x : R.chains[pick.chain2]) color_second(x, omega_ + i_);
        const int hi_idx = std::max(pick.chain1, pick.chain2);
        const int lo_idx = std::min(pick.chain1, pick.chain2);
        R.chains.erase(R.chains.begin() + hi_idx);
        if (lo_idx >= 0) R.chains.erase(R.chains.begin() + lo_idx);
      }
      if (record) log_.push_back({{"i", i_}, {"regions", regions_.size()}, {"swaps", swaps}, {"crossovers", crossovers}});
    }
    checkpoint("loop-end");
    // The leftover chain of odd omega is colored like half an iteration i+1:
    // cliques of size omega-i become active first.
    for (std::size_t c = 0; c < cliques_.size(); ++c)
      if (omega_ % 2 == 1 && !active_[c] && cliques_[c].size() >= omega_ - i_) {
        active_[c] = 1;
        split_at(cliques_[c].clique_point.rank);
      }
    for (Region& R : regions_) {
      std::vector<int> left;
      for (std::size_t c = 0; c < R.chains.size(); ++c)
        if (!R.chains[c].empty()) left.push_back(static_cast<int>(c));
      if (left.empty()) continue;
      if (left.size() > 1) throw InvariantViolation("more than one chain left after the loop");
      const int il = boundary_intervals(R).first;
      if (il < 0) throw InvariantViolation("no unprocessed first-batch interval for the last chain");
      for (int x : R.chains[left.front()]) color_second(x, color_[il]);
      R.chains[left.front()].clear();
    }
    for (int x = 0; x < ord.interval_count(); ++x)
      if (!line_.first_kind(x) && color_[x] == 0) throw InvariantViolation("second-batch interval left uncolored");
  }

  std::vector<Color> second_batch_colors() const {
    std::vector<Color> out;
    for (std::size_t x = 0; x < line_.intervals.size(); ++x)
      if (line_.kind[x] == MergedLine::Kind::second) out.push_back(color_[x]);
    return out;
  }

  std::vector<Position> region_reps(const Region& R) const {
    std::vector<Position> out;
    for (const Position& p : reps_)
      if (p.rank >= R.a && p.rank <= R.b) out.push_back(p);
    return out;
  }

  // Unprocessed first-batch intervals owning the earliest and the latest event
  // strictly inside the region, or (-1,-1).
  std::pair<int, int> boundary_intervals(const Region& R) const {
    const EventOrder& ord = line_.order;
    int best_l = -1;
    int best_r = -1;
    int il = -1;
    int ir = -1;
    for (int x = 0; x < ord.interval_count(); ++x) {
      if (!line_.first_kind(x) || R.processed[x] || !ord.meets_span(x, R.a, R.b)) continue;
      for (const Position p : {ord.left_position(x), ord.right_position(x)}) {
        if (p.rank <= R.a || p.rank >= R.b) continue;
        if (best_l < 0 || p.rank < best_l) {
          best_l = p.rank;
          il = x;
        }
        if (best_r < 0 || p.rank > best_r) {
          best_r = p.rank;
          ir = x;
        }
      }
    }
    return {il, ir};
  }

 private:
  void split_at(int s) {
    const EventOrder& ord = line_.order;
    for (std::size_t k = 0; k < regions_.size(); ++k) {
      Region& R = regions_[k];
      if (s <= R.a || s >= R.b) continue;
      Region left = R;
      Region right = R;
      left.b = s;
      right.a = s;
      for (std::size_t c = 0; c < R.chains.size(); ++c) {
        left.chains[c].clear();
        right.chains[c].clear();
        for (int x : R.chains[c]) {
          if (ord.hi_rank(x) < s) left.chains[c].push_back(x);
          else if (ord.lo_rank(x) > s) right.chains[c].push_back(x);
          else throw InvariantViolation("an uncolored interval " + line_.intervals[x].to_string() +
                                        " contains the active clique point at rank " + std::to_string(s));
        }
      }
      regions_[k] = std::move(left);
      regions_.insert(regions_.begin() + static_cast<std::ptrdiff_t>(k) + 1, std::move(right));
      return;
    }
  }

  std::vector<Color> batch1_colors_;
  int omega_ = 0;
  MergedLine line_;
  Coloring color_;
  std::vector<MaximalClique> cliques_;
  std::vector<char> active_;
  std::vector<Position> reps_;
  std::vector<int> depth_;
  std::vector<int> colored_depth_;
  std::vector<Region> regions_;
  int i_ = 0;
  Json log_ = Json::array();
};

inline std::vector<Color> color_second_batch(const std::vector<Interval>& batch1, const std::vector<Color>& batch1_colors,
                                             const std::vector<Interval>& batch2, Json* log = nullptr) {
  if (batch2.empty()) return {};
  SecondBatchState st(batch1, batch1_colors, batch2);
  st.run(log != nullptr);
  if (log != nullptr) *log = st.log();
  return st.second_batch_colors();
}

inline InvariantReport check_invariant_I(const SecondBatchState& state) { return state.check_invariant(); }

class TwoBatches final : public OnlineColorer {
 public:
  explicit TwoBatches(bool diagnostics = false) : record_(diagnostics) {}

  std::string name() const override { return "two-batches"; }
  bool needs_intervals() const override { return true; }
  void start(std::optional<int>) override {
    batch1_.clear();
    batch1_colors_.clear();
    log_ = nullptr;
  }
  std::vector<Color> color_batch(const RevealedState& s, int batch) override {
    if (!s.interval_mode) throw UnsupportedInput("two-batches needs interval representations");
    if (batch == 0) {
      batch1_ = s.batch_intervals(0);
      batch1_colors_ = color_first_batch(batch1_);
      return batch1_colors_;
    }
    if (batch == 1) {
      Json log;
      auto out = color_second_batch(batch1_, batch1_colors_, s.batch_intervals(1), record_ ? &log : nullptr);
      if (record_) log_ = std::move(log);
      return out;
    }
    throw UnsupportedInput("two-batches handles at most two batches");
  }
  Json diagnostics() const override { return record_ ? Json{{"invariant_checks", log_}} : Json(nullptr); }

 private:
  bool record_;
  std::vector<Interval> batch1_;
  std::vector<Color> batch1_colors_;
  Json log_;
};

}  // namespace batchcolor

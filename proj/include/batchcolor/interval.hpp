#pragma once

// Intervals with exact rational endpoints, the total order T on their event
// points, and the discrete model of the real line used by every sweep.
//
// For E events in T-order, positions are the integer ranks 0..2E:
//   rank 2e+1 is event e itself,
//   rank 2g   is the gap strictly between events g-1 and g
//             (rank 0 lies left of everything, rank 2E right of everything).
// An interval with events l < r contains exactly the contiguous rank range
//   lo = lo_closed ? 2l+1 : 2l+2   ..   hi = hi_closed ? 2r+1 : 2r,
// and two intervals share a real point iff their rank ranges overlap.

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "batchcolor/errors.hpp"
#include "batchcolor/graph.hpp"
#include "batchcolor/rational.hpp"

namespace batchcolor {

struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;
  std::string id;

  bool valid() const { return lo < hi || (lo == hi && lo_closed && hi_closed); }

  bool contains(const Rational& x) const {
    const bool left_ok = lo < x || (lo == x && lo_closed);
    const bool right_ok = x < hi || (x == hi && hi_closed);
    return left_ok && right_ok;
  }

  std::string to_string() const {
    return std::string(lo_closed ? "[" : "(") + lo.to_string() + "," + hi.to_string() + (hi_closed ? "]" : ")");
  }
};

inline Interval closed(Rational lo, Rational hi, std::string id = {}) { return {lo, hi, true, true, std::move(id)}; }

inline void require_valid(const Interval& iv) {
  if (!iv.valid()) throw InconsistentInstance("empty interval " + iv.to_string());
}

// Nonempty intersection, decided directly on rationals.
inline bool intersects(const Interval& a, const Interval& b) {
  Rational lo = a.lo;
  bool lo_closed = a.lo_closed;
  if (b.lo > lo) {
    lo = b.lo;
    lo_closed = b.lo_closed;
  } else if (b.lo == lo) {
    lo_closed = lo_closed && b.lo_closed;
  }
  Rational hi = a.hi;
  bool hi_closed = a.hi_closed;
  if (b.hi < hi) {
    hi = b.hi;
    hi_closed = b.hi_closed;
  } else if (b.hi == hi) {
    hi_closed = hi_closed && b.hi_closed;
  }
  return lo < hi || (lo == hi && lo_closed && hi_closed);
}

inline Graph interval_graph(const std::vector<Interval>& intervals) {
  for (const auto& iv : intervals) require_valid(iv);
  Graph g(static_cast<int>(intervals.size()));
  for (std::size_t a = 0; a < intervals.size(); ++a)
    for (std::size_t b = a + 1; b < intervals.size(); ++b)
      if (intersects(intervals[a], intervals[b])) g.add_edge(static_cast<int>(a), static_cast<int>(b));
  return g;
}

struct Event {
  Rational coord;
  bool left = true;
  bool closed = true;  // whether the endpoint belongs to its interval
  int owner = 0;       // index of the interval in the input list

  // Tie class at equal coordinates: open right < closed left < closed right < open left.
  int tie_class() const {
    if (!left) return closed ? 2 : 0;
    return closed ? 1 : 3;
  }
};

struct Position {
  int rank = 0;

  bool is_event() const { return rank % 2 == 1; }
  int event_index() const { return rank / 2; }  // meaningful when is_event()
  friend auto operator<=>(const Position&, const Position&) = default;
};

class EventOrder {
 public:
  EventOrder() = default;

  explicit EventOrder(const std::vector<Interval>& intervals) : intervals_(intervals) {
    const int n = static_cast<int>(intervals.size());
    events_.reserve(2 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      require_valid(intervals[i]);
      events_.push_back({intervals[i].lo, true, intervals[i].lo_closed, i});
      events_.push_back({intervals[i].hi, false, intervals[i].hi_closed, i});
    }
    std::sort(events_.begin(), events_.end(), [](const Event& a, const Event& b) {
      if (a.coord != b.coord) return a.coord < b.coord;
      if (a.tie_class() != b.tie_class()) return a.tie_class() < b.tie_class();
      if (a.owner != b.owner) return a.owner < b.owner;
      return a.left && !b.left;
    });
    left_.assign(n, -1);
    right_.assign(n, -1);
    for (int e = 0; e < static_cast<int>(events_.size()); ++e)
      (events_[e].left ? left_ : right_)[events_[e].owner] = e;
  }

  int interval_count() const { return static_cast<int>(intervals_.size()); }
  const Interval& interval(int i) const { return intervals_[i]; }
  const std::vector<Interval>& intervals() const { return intervals_; }

  int event_count() const { return static_cast<int>(events_.size()); }
  const Event& event(int e) const { return events_[e]; }
  const std::vector<Event>& events() const { return events_; }
  int max_rank() const { return 2 * event_count(); }

  int left_event(int i) const { return left_[i]; }
  int right_event(int i) const { return right_[i]; }
  Position left_position(int i) const { return {2 * left_[i] + 1}; }
  Position right_position(int i) const { return {2 * right_[i] + 1}; }

  int lo_rank(int i) const { return intervals_[i].lo_closed ? 2 * left_[i] + 1 : 2 * left_[i] + 2; }
  int hi_rank(int i) const { return intervals_[i].hi_closed ? 2 * right_[i] + 1 : 2 * right_[i]; }

  bool contains(int i, Position p) const { return lo_rank(i) <= p.rank && p.rank <= hi_rank(i); }
  bool overlaps(int a, int b) const { return std::max(lo_rank(a), lo_rank(b)) <= std::min(hi_rank(a), hi_rank(b)); }

  // Every rank range and event inside [a,b]; convenient for region tests.
  bool meets_span(int i, int a, int b) const { return lo_rank(i) <= b && hi_rank(i) >= a; }

  // The gap position equivalent to the real point x: after every event with a
  // smaller coordinate, and after open right / closed left events at x.
  Position locate(const Rational& x) const {
    int g = 0;
    for (const Event& ev : events_)
      if (ev.coord < x || (ev.coord == x && ev.tie_class() <= 1)) ++g;
    return {2 * g};
  }

 private:
  std::vector<Interval> intervals_;
  std::vector<Event> events_;
  std::vector<int> left_;
  std::vector<int> right_;
};

inline EventOrder build_event_order(const std::vector<Interval>& intervals) { return EventOrder(intervals); }

// Largest number of intervals sharing a point.
inline int max_clique_size(const std::vector<Interval>& intervals) {
  const EventOrder order(intervals);
  int depth = 0;
  int best = 0;
  for (const Event& ev : order.events()) {
    depth += ev.left ? 1 : -1;
    best = std::max(best, depth);
  }
  return best;
}

struct MaximalClique {
  std::vector<int> members;  // interval indices, sorted by left event (lambda_L order)
  Position clique_point;
  std::map<int, int> left_rank;   // lambda_L: 1 = earliest left endpoint in T
  std::map<int, int> right_rank;  // lambda_R: 1 = latest right endpoint in T

  int size() const { return static_cast<int>(members.size()); }
  int lambda_L(int i) const { return left_rank.at(i); }
  int lambda_R(int i) const { return right_rank.at(i); }
  int member_with_lambda_L(int r) const { return members[r - 1]; }
  int member_with_lambda_R(int r) const {
    for (const auto& [i, k] : right_rank)
      if (k == r) return i;
    return -1;
  }
};

// Maximal cliques of the intervals selected by `in_subset` (all when empty),
// left to right. A clique appears wherever a left event is directly followed,
// among the selected events, by a right event; its clique point is the gap
// right after that left event.
inline std::vector<MaximalClique> maximal_cliques(const EventOrder& order, const std::vector<char>& in_subset = {}) {
  auto selected = [&](int i) { return in_subset.empty() || in_subset[i] != 0; };
  std::vector<int> evs;
  for (int e = 0; e < order.event_count(); ++e)
    if (selected(order.event(e).owner)) evs.push_back(e);
  std::vector<MaximalClique> out;
  std::vector<char> active(static_cast<std::size_t>(order.interval_count()), 0);
  std::vector<int> active_list;
  for (std::size_t k = 0; k < evs.size(); ++k) {
    const Event& ev = order.event(evs[k]);
    if (!ev.left) {
      active[ev.owner] = 0;
      active_list.erase(std::find(active_list.begin(), active_list.end(), ev.owner));
      continue;
    }
    active[ev.owner] = 1;
    active_list.push_back(ev.owner);
    if (k + 1 < evs.size() && !order.event(evs[k + 1]).left) {
      MaximalClique c;
      c.members = active_list;
      std::sort(c.members.begin(), c.members.end(),
                [&](int a, int b) { return order.left_event(a) < order.left_event(b); });
      c.clique_point = {2 * evs[k] + 2};
      for (int r = 0; r < c.size(); ++r) c.left_rank[c.members[r]] = r + 1;
      std::vector<int> by_right = c.members;
      std::sort(by_right.begin(), by_right.end(),
                [&](int a, int b) { return order.right_event(a) > order.right_event(b); });
      for (int r = 0; r < c.size(); ++r) c.right_rank[by_right[r]] = r + 1;
      out.push_back(std::move(c));
    }
  }
  return out;
}

inline std::vector<MaximalClique> maximal_cliques(const std::vector<Interval>& intervals) {
  return maximal_cliques(EventOrder(intervals));
}

// One position per class of points that agree on their side of every clique
// point and on their containment/side relation to every interval. Each clique
// point forms its own class; the representative of a class is its leftmost rank.
inline std::vector<Position> representative_points(const EventOrder& order, const std::vector<Position>& clique_points) {
  const int top = order.max_rank();
  std::vector<char> starts(static_cast<std::size_t>(top) + 2, 0);
  starts[0] = 1;
  for (int i = 0; i < order.interval_count(); ++i) {
    starts[order.lo_rank(i)] = 1;
    starts[order.hi_rank(i) + 1] = 1;
  }
  for (const Position& q : clique_points) {
    starts[q.rank] = 1;
    starts[q.rank + 1] = 1;
  }
  std::vector<Position> reps;
  for (int r = 0; r <= top; ++r)
    if (starts[r]) reps.push_back({r});
  return reps;
}

inline std::vector<Position> representative_points(const std::vector<Interval>& intervals,
                                                   const std::vector<Position>& clique_points) {
  return representative_points(EventOrder(intervals), clique_points);
}

// Optimal coloring of an interval family: sweep T, give each left endpoint the
// least released color. Uses exactly max_clique_size colors.
inline Coloring sweep_color(const std::vector<Interval>& intervals) {
  const EventOrder order(intervals);
  Coloring c(intervals.size(), 0);
  std::priority_queue<Color, std::vector<Color>, std::greater<>> free;
  Color next = 1;
  for (const Event& ev : order.events()) {
    if (ev.left) {
      if (free.empty()) {
        c[ev.owner] = next++;
      } else {
        c[ev.owner] = free.top();
        free.pop();
      }
    } else {
      free.push(c[ev.owner]);
    }
  }
  return c;
}

}  // namespace batchcolor

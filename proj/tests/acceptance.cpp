#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "batchcolor/batchcolor.hpp"
#include "batchcolor/cli.hpp"
#include "support/brute_force.hpp"
#include "support/generators.hpp"

using namespace batchcolor;
using namespace testsupport;
using namespace batchcolor::cli;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failures_++ < 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  Outcome finish(std::string summary) const {
    if (failures_ > 0) summary += " | " + std::to_string(failures_) + " failure(s): " + first_;
    return {failures_ == 0, summary};
  }

 private:
  int failures_ = 0;
  std::string first_;
};

using AdversaryFactory = std::function<std::unique_ptr<Adversary>()>;

struct Contender {
  std::string label;
  std::function<std::unique_ptr<OnlineColorer>()> make;
};

// Every suite algorithm, with several seeds of the randomized one.
std::vector<Contender> suite() {
  std::vector<Contender> out;
  for (const std::string& name : algorithm_names()) {
    if (name == "random-proper") {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        AlgorithmOptions o;
        o.seed = seed;
        out.push_back({name + "#" + std::to_string(seed), [name, o] { return make_algorithm(name, o); }});
      }
    } else {
      out.push_back({name, [name] { return make_algorithm(name); }});
    }
  }
  return out;
}

// Runs a duel; nullopt when the algorithm declines the input class.
std::optional<RatioReport> duel(const Contender& c, const AdversaryFactory& make) {
  auto alg = c.make();
  auto adv = make();
  try {
    return run_duel(*alg, *adv);
  } catch (const UnsupportedInput&) {
    return std::nullopt;
  } catch (const NotAForest&) {
    return std::nullopt;
  }
}

std::vector<Interval> random_batch(Rng& rng, int max_count) {
  return random_intervals(rng, uniform(rng, 0, max_count), uniform(rng, 3, 60), uniform(rng, 1, 6),
                          coin(rng) ? 0.15 : 0.4);
}

Outcome trees() {
  Checker ck;
  int runs = 0;
  for (int k = 1; k <= 3; ++k)
    for (const std::string name : {"generic-batch", "first-fit", "random-proper"}) {
      auto alg = make_algorithm(name);
      TreeAdversary adv(k);
      const RatioReport r = run_duel(*alg, adv);
      ++runs;
      const std::string tag = name + " k=" + std::to_string(k);
      ck.require(r.distinct_colors >= 2 * k, tag + " used " + std::to_string(r.distinct_colors) + " colors");
      ck.require(r.opt_source == "oracle" && r.opt_cost == 2 && !r.opt_is_bound, tag + " chromatic number not 2");
      ck.require(r.ratio >= Rational(k), tag + " ratio " + r.ratio.to_string());
    }
  return ck.finish(std::to_string(runs) + " duels, k=1..3");
}

Outcome generic_batch_bound() {
  Checker ck;
  Rng rng(1001);
  for (int t = 0; t < 500; ++t) {
    const int k = uniform(rng, 1, 4);
    const int n = uniform(rng, k, 20);
    const BatchedInstance inst = random_batched_graph(rng, n, k, coin(rng) ? 0.25 : 0.55);
    GenericBatch alg;
    const RatioReport r = run_instance(alg, inst, Objective::colors);
    const int chi = chromatic_number_exact(r.state.graph).value;
    int batch_sum = 0;
    for (int b = 0; b < r.state.batch_count(); ++b)
      batch_sum += chromatic_number_exact(induced_subgraph(r.state.graph, r.state.batch_vertices(b))).value;
    const Color top = max_color(r.state.colors);
    ck.require(top <= k * chi, "instance " + std::to_string(t) + " max color above k*chi");
    ck.require(top == batch_sum, "instance " + std::to_string(t) + " max color differs from batch chromatic sum");
  }
  return ck.finish("500 instances");
}

Outcome interval_norep() {
  Checker ck;
  int runs = 0;
  int declined = 0;
  for (int q = 1; q <= 2; ++q)
    for (const Contender& c : suite()) {
      const auto r = duel(c, [q] { return std::make_unique<IntervalNorepAdversary>(q); });
      if (!r) {
        ++declined;
        continue;
      }
      ++runs;
      const std::string tag = c.label + " q=" + std::to_string(q);
      ck.require(r->distinct_colors >= 4 * q, tag + " used " + std::to_string(r->distinct_colors) + " colors");
      ck.require(r->witness_cost == 2 * q && r->opt_cost <= 2 * q, tag + " witness is not 2q");
      ck.require(Rational(r->distinct_colors, r->opt_cost) >= Rational(2), tag + " ratio below 2");
    }
  ck.require(runs > 0, "no algorithm accepted the instance");
  return ck.finish(std::to_string(runs) + " duels, " + std::to_string(declined) + " declined (input class)");
}

Outcome interval_known() {
  Checker ck;
  {
    TwoBatches alg(true);
    IntervalKTAdversary adv(1);
    const RatioReport r = run_duel(alg, adv);
    ck.require(r.distinct_colors == 6 && max_color(r.state.colors) == 6, "kt q=1 did not force 6 colors");
    ck.require(r.opt_cost == 4, "kt q=1 OPT " + std::to_string(r.opt_cost));
    ck.require(r.ratio == Rational(3, 2), "kt q=1 ratio " + r.ratio.to_string());
  }
  const auto start = std::chrono::steady_clock::now();
  Rng rng(1004);
  long checkpoints = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto b1 = random_batch(rng, 100);
    const auto b2 = random_batch(rng, 100);
    std::vector<Interval> all = b1;
    all.insert(all.end(), b2.begin(), b2.end());
    const int omega = max_clique_size(all);
    TwoBatches alg(true);
    const std::string tag = "instance " + std::to_string(t);
    try {
      const RatioReport r = run_instance(alg, interval_instance({b1, b2}), Objective::colors);
      ck.require(validate_coloring(interval_graph(all), r.state.colors).ok, tag + " improper");
      ck.require(max_color(r.state.colors) <= 3 * omega / 2, tag + " above 3omega/2");
      const Json& log = r.algorithm_diagnostics.at("invariant_checks");
      if (log.is_array())
        for (const Json& e : log)
          if (e.contains("ok")) {
            ++checkpoints;
            ck.require(e.at("ok").get<bool>(), tag + " checkpoint failed");
          }
    } catch (const InvariantViolation& e) {
      ck.require(false, tag + ": " + e.what());
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ck.require(secs <= 60.0, "random instances took " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << "kt q=1 ratio 3/2; 1000 instances, " << checkpoints << " checkpoints, " << static_cast<int>(secs * 1000)
    << " ms";
  return ck.finish(s.str());
}

Outcome first_batch_lemma() {
  Checker ck;
  Rng rng(1005);
  long checks = 0;
  for (int t = 0; t < 500; ++t) {
    const auto b1 = random_batch(rng, 60);
    const int omega = std::max(1, max_clique_size(b1));
    const MergedLine line = install_dummy_cliques(b1, {}, omega);
    const EventOrder& o = line.order;
    const Coloring c = stack_color(o, omega, line.first_mask());
    const auto cliques = maximal_cliques(o, line.first_mask());
    for (std::size_t a = 0; a < cliques.size(); ++a) {
      const MaximalClique& left = cliques[a];
      for (int h = 1; h <= left.size(); ++h) {
        std::set<Color> allowed;
        for (int m : left.members)
          if (left.lambda_R(m) < h) allowed.insert(c[m]);
        std::size_t b = a + 1;
        while (b < cliques.size() && cliques[b].size() < h) ++b;
        if (b == cliques.size()) continue;
        const int p_l = o.right_position(left.member_with_lambda_R(h)).rank;
        const int p_r = o.left_position(cliques[b].member_with_lambda_L(h)).rank;
        if (p_l + 1 > p_r - 1) continue;
        for (int x = 0; x < o.interval_count(); ++x)
          if (line.first_kind(x) && o.meets_span(x, p_l + 1, p_r - 1)) {
            ++checks;
            ck.require(allowed.count(c[x]) == 1, "batch " + std::to_string(t) + " interval " +
                                                     line.intervals[x].to_string() + " color outside the subset");
          }
      }
    }
  }
  return ck.finish("500 batches, " + std::to_string(checks) + " containments");
}

Outcome sum_known() {
  Checker ck;
  Rng rng(1006);
  for (int t = 0; t < 300; ++t) {
    const int k = uniform(rng, 1, 3);
    const BatchedInstance inst = random_batched_graph(rng, uniform(rng, k, 14), k, coin(rng) ? 0.25 : 0.5);
    KBatchColor alg;
    const RatioReport r = run_instance(alg, inst, Objective::sum, {}, k);
    ck.require(r.opt_source == "oracle", "instance " + std::to_string(t) + " without oracle OPT");
    ck.require(r.algorithm_cost <= k * r.opt_cost, "instance " + std::to_string(t) + " above k*OPT");
  }
  int full = 0;
  int early = 0;
  int declined = 0;
  for (const Contender& c : suite()) {
    const auto r = duel(c, [] { return std::make_unique<SumKnownAdversary>(2, 9); });
    if (!r) {
      ++declined;
      continue;
    }
    const bool stopped = r->adversary_details.at("early_stop").get<bool>();
    (stopped ? early : full) += 1;
    const Rational need = stopped ? Rational(2) : Rational(18, 11);
    ck.require(r->ratio >= need, c.label + " ratio " + r->ratio.to_string());
  }
  return ck.finish("300 instances; sum-known k=2 M=9: " + std::to_string(full) + " full runs, " +
                   std::to_string(early) + " early stops, " + std::to_string(declined) + " declined (input class)");
}

Outcome first_fit_trees() {
  Checker ck;
  Rng rng(1007);
  long components = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = uniform(rng, 1, 10000);
    const BatchedInstance inst =
        batched_from_graph(random_forest(rng, n), random_batch_sizes(rng, n, uniform(rng, 1, std::min(n, 10))));
    FirstFitSum alg;
    const Coloring c = color_instance(alg, inst);
    for (const ComponentSum& cs : component_sums(instance_graph(inst), c)) {
      ++components;
      ck.require(cs.sum <= 2 * cs.vertices - 1, "forest " + std::to_string(t) + " component above 2t-1");
    }
  }
  for (int t = 0; t < 200; ++t) {
    const int n = uniform(rng, 1, 14);
    const BatchedInstance inst =
        batched_from_graph(random_forest(rng, n), random_batch_sizes(rng, n, uniform(rng, 1, std::min(n, 4))));
    FirstFitSum alg;
    const RatioReport r = run_instance(alg, inst, Objective::sum);
    ck.require(r.opt_source == "oracle", "small forest without oracle OPT");
    ck.require(r.algorithm_cost <= 2 * r.opt_cost, "small forest " + std::to_string(t) + " above 2*OPT");
  }
  return ck.finish("100 forests, " + std::to_string(components) + " components; 200 small forests");
}

Outcome batch_color_f() {
  Checker ck;
  Rng rng(1008);
  const Rational cf(329, 200);
  int infeasible = 0;
  int with_oracle = 0;
  long entries = 0;
  for (int t = 0; t < 10000; ++t) {
    const int k = uniform(rng, 1, 10);
    const int n = uniform(rng, k, 16);
    const double p = std::vector<double>{0.15, 0.3, 0.5}[uniform(rng, 0, 2)];
    const BatchedInstance inst = random_batched_graph(rng, n, k, p);
    BatchColorF alg(schedule_isq(cf));
    try {
      const RatioReport r = run_instance(alg, inst, Objective::sum);
      for (const LedgerEntry& e : alg.ledger()) {
        ++entries;
        ck.require(e.assigned <= (cf * Rational(static_cast<std::int64_t>(e.batch) * e.batch) * e.j).floor(),
                   "instance " + std::to_string(t) + " ledger cap exceeded");
      }
      if (r.opt_source == "oracle") {
        ++with_oracle;
        const int kk = r.state.batch_count();
        ck.require(Rational(r.algorithm_cost) <= cf * Rational(static_cast<std::int64_t>(kk) * kk) * r.opt_cost,
                   "instance " + std::to_string(t) + " above c_f f(k) OPT");
      }
    } catch (const InfeasibleBatch& e) {
      ++infeasible;
      ck.require(false, "instance " + std::to_string(t) + ": " + e.what());
    }
  }
  return ck.finish("10000 instances, " + std::to_string(infeasible) + " infeasible, " + std::to_string(with_oracle) +
                   " with oracle OPT, " + std::to_string(entries) + " ledger entries");
}

Outcome sum_unknown_structure() {
  Checker ck;
  int runs = 0;
  const std::vector<std::string> names{"generic-batch", "first-fit", "random-proper", "k-batch-color",
                                       "batch-color-f"};
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 12; ++m)
      for (const std::string& name : names) {
        auto alg = make_algorithm(name);
        SumUnknownAdversary adv(k, m);
        const RatioReport r = run_duel(*alg, adv);
        ++runs;
        const auto rep = adv.structure(r.state);
        const std::string tag = name + " k=" + std::to_string(k) + " M=" + std::to_string(m);
        ck.require(rep.ok(), tag + " structure");
        ck.require(r.guarantee && r.guarantee->passed, tag + " guarantee");
      }
  return ck.finish(std::to_string(runs) + " duels, k<=3, M<=12");
}

Outcome oracle_cross_checks() {
  Checker ck;
  Rng rng(1010);
  for (int t = 0; t < 200; ++t) {
    const auto ivs = random_intervals(rng, uniform(rng, 0, 12), uniform(rng, 3, 20), uniform(rng, 1, 4), 0.4);
    const Graph g = interval_graph(ivs);
    ck.require(max_clique_size(ivs) == chromatic_number_exact(g).value, "interval case " + std::to_string(t));
  }
  for (int t = 0; t < 150; ++t) {
    const int n = t < 8 ? t : uniform(rng, 1, 7);
    const Graph g = random_graph(rng, n, std::vector<double>{0.2, 0.4, 0.7}[t % 3]);
    const auto r = min_sum_coloring_exact(g);
    ck.require(r.value == brute_min_sum(g), "min-sum case " + std::to_string(t));
    ck.require(validate_coloring(g, r.witness).ok && color_sum(r.witness) == r.value,
               "min-sum witness case " + std::to_string(t));
  }
  return ck.finish("200 interval graphs; 150 min-sum graphs up to 7 vertices");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"tree-adversary-forces-2k-colors", trees},
      {"generic-batch-upper-bound", generic_batch_bound},
      {"interval-unknown-representation-ratio-2", interval_norep},
      {"interval-known-representation-two-batches", interval_known},
      {"first-batch-color-containment", first_batch_lemma},
      {"sum-coloring-known-k", sum_known},
      {"first-fit-sum-on-forests", first_fit_trees},
      {"batch-color-f-feasible-and-bounded", batch_color_f},
      {"sum-unknown-structure", sum_unknown_structure},
      {"oracle-cross-checks", oracle_cross_checks},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s (%lld ms) %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), static_cast<long long>(ms),
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

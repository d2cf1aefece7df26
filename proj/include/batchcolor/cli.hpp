#pragma once

// Command implementations behind the batchcolor executable. Each command
// writes one JSON document and returns the process exit code.

#include <future>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "batchcolor/adversaries.hpp"
#include "batchcolor/algorithms.hpp"
#include "batchcolor/engine.hpp"
#include "batchcolor/errors.hpp"
#include "batchcolor/io.hpp"
#include "batchcolor/oracles.hpp"
#include "batchcolor/sum_coloring.hpp"
#include "batchcolor/two_batches.hpp"

namespace batchcolor::cli {

enum ExitCode : int { ok = 0, usage = 1, violation = 2, size_limit = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"generic-batch", "first-fit",     "random-proper", "two-batches",
                                                 "k-batch-color", "batch-color-f", "first-fit-sum"};
  return names;
}

inline const std::vector<std::string>& adversary_names() {
  static const std::vector<std::string> names = {"tree", "interval-norep", "interval-kt", "sum-known", "sum-unknown"};
  return names;
}

// "a=1,b=x" -> {a: "1", b: "x"}.
inline std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("parameter \"" + item + "\" is not key=value");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

inline std::int64_t parse_int(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw UsageError(key + " must be an integer, got \"" + text + "\"");
  return v;
}

// "n/d" or "n".
inline Rational parse_rational(const std::string& key, const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(key, text));
  const std::int64_t d = parse_int(key, text.substr(slash + 1));
  if (d == 0) throw UsageError(key + " has a zero denominator");
  return Rational(parse_int(key, text.substr(0, slash)), d);
}

inline bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "1" || text == "true" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "no") return false;
  throw UsageError(key + " must be a boolean, got \"" + text + "\"");
}

// "f=isq,cf=329/200"; an empty string selects the default schedule.
inline ScheduleFunction parse_schedule(const std::string& text) {
  const auto p = parse_params(text);
  std::string name = "isq";
  std::optional<Rational> cf;
  for (const auto& [key, value] : p) {
    if (key == "f") name = value;
    else if (key == "cf") cf = parse_rational("cf", value);
    else throw UsageError("unknown schedule field \"" + key + "\"");
  }
  auto s = schedule_by_name(name, cf);
  if (!s) throw UsageError("unknown schedule \"" + name + "\" (known: isq, icube)");
  return *s;
}

struct AlgorithmOptions {
  std::uint64_t seed = 1;
  std::string schedule;
  bool diagnostics = false;
  OracleLimits limits = OracleLimits::from_env();
};

inline std::unique_ptr<OnlineColorer> make_algorithm(const std::string& name, const AlgorithmOptions& o = {}) {
  if (name == "generic-batch") return std::make_unique<GenericBatch>(o.limits);
  if (name == "first-fit") return std::make_unique<FirstFit>();
  if (name == "random-proper") return std::make_unique<RandomProper>(o.seed);
  if (name == "two-batches") return std::make_unique<TwoBatches>(o.diagnostics);
  if (name == "k-batch-color") return std::make_unique<KBatchColor>(o.limits);
  if (name == "batch-color-f") return std::make_unique<BatchColorF>(parse_schedule(o.schedule), o.limits);
  if (name == "first-fit-sum") return std::make_unique<FirstFitSum>();
  throw UsageError("unknown algorithm \"" + name + "\"");
}

inline std::unique_ptr<Adversary> make_adversary(const std::string& name, const std::string& params) {
  const auto p = parse_params(params);
  auto take = [&](const std::string& key, std::int64_t fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : parse_int(key, it->second);
  };
  auto flag = [&](const std::string& key) {
    const auto it = p.find(key);
    return it != p.end() && parse_bool(key, it->second);
  };
  auto allow = [&](std::vector<std::string> keys) {
    for (const auto& [key, value] : p)
      if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw UsageError("adversary " + name + " does not take parameter \"" + key + "\"");
  };
  if (name == "tree") {
    allow({"k", "connect"});
    return std::make_unique<TreeAdversary>(static_cast<int>(take("k", 2)), flag("connect"));
  }
  if (name == "interval-norep") {
    allow({"q"});
    return std::make_unique<IntervalNorepAdversary>(static_cast<int>(take("q", 1)));
  }
  if (name == "interval-kt") {
    allow({"q"});
    return std::make_unique<IntervalKTAdversary>(static_cast<int>(take("q", 1)));
  }
  if (name == "sum-known") {
    allow({"k", "M", "connect"});
    return std::make_unique<SumKnownAdversary>(static_cast<int>(take("k", 2)), static_cast<int>(take("M", 9)),
                                               flag("connect"));
  }
  if (name == "sum-unknown") {
    allow({"k", "M", "C", "f", "cf"});
    std::string sched = "f=" + (p.count("f") ? p.at("f") : std::string("isq"));
    if (p.count("cf")) sched += ",cf=" + p.at("cf");
    return std::make_unique<SumUnknownAdversary>(static_cast<int>(take("k", 2)), static_cast<int>(take("M", 6)),
                                                 parse_schedule(sched), static_cast<int>(take("C", 10)));
  }
  throw UsageError("unknown adversary \"" + name + "\"");
}

inline Objective parse_objective(const std::string& text) {
  if (text == "colors") return Objective::colors;
  if (text == "sum") return Objective::sum;
  throw UsageError("objective must be colors or sum, got \"" + text + "\"");
}

inline Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

// Maps exceptions to exit codes and an error document on `err`.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << error_json("usage", e.what()).dump(2) << "\n";
    return usage;
  } catch (const FormatError& e) {
    err << error_json("format", e.what()).dump(2) << "\n";
    return usage;
  } catch (const UnsupportedInput& e) {
    err << error_json("unsupported-input", e.what()).dump(2) << "\n";
    return usage;
  } catch (const SizeLimitExceeded& e) {
    err << error_json("size-limit", e.what()).dump(2) << "\n";
    return size_limit;
  } catch (const ImproperColoring& e) {
    err << error_json("improper-coloring", e.what()).dump(2) << "\n";
    return violation;
  } catch (const InconsistentInstance& e) {
    err << error_json("inconsistent-instance", e.what()).dump(2) << "\n";
    return violation;
  } catch (const InfeasibleBatch& e) {
    err << error_json("infeasible-batch", e.what()).dump(2) << "\n";
    return violation;
  } catch (const InvariantViolation& e) {
    err << error_json("invariant-violation", e.what()).dump(2) << "\n";
    return violation;
  } catch (const NotAForest& e) {
    err << error_json("not-a-forest", e.what()).dump(2) << "\n";
    return violation;
  }
}

struct SolveArgs {
  std::string algorithm;
  std::string input;
  std::string objective = "colors";
  std::optional<int> k;
  std::string schedule;
  bool diagnostics = false;
  std::uint64_t seed = 1;
};

inline int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Objective obj = parse_objective(a.objective);
    AlgorithmOptions o;
    o.seed = a.seed;
    o.schedule = a.schedule;
    o.diagnostics = a.diagnostics;
    auto alg = make_algorithm(a.algorithm, o);
    const BatchedInstance inst = instance_from_json(read_json_file(a.input));
    const RatioReport r = run_instance(*alg, inst, obj, RunOptions{}, a.k);
    Json doc = coloring_to_json(r.state.names, r.state.colors);
    doc["report"] = report_to_json(r);
    out << doc.dump(2) << "\n";
    return static_cast<int>(ok);
  });
}

struct AdversaryArgs {
  std::string name;
  std::string params;
  std::string algorithm;
  std::string schedule;
  bool diagnostics = false;
  std::uint64_t seed = 1;
  int trials = 1;
};

// One duel per trial; trial t uses seed + t. Trials run concurrently.
inline int cmd_adversary(const AdversaryArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (a.trials < 1) throw UsageError("--trials must be positive");
    make_adversary(a.name, a.params);
    auto run_one = [a](int t) {
      AlgorithmOptions o;
      o.seed = a.seed + static_cast<std::uint64_t>(t);
      o.schedule = a.schedule;
      o.diagnostics = a.diagnostics;
      auto alg = make_algorithm(a.algorithm, o);
      auto adv = make_adversary(a.name, a.params);
      const RatioReport r = run_duel(*alg, *adv);
      Json j = transcript_to_json(r);
      if (auto* su = dynamic_cast<SumUnknownAdversary*>(adv.get())) j["structure"] = su->structure_json(r.state);
      return std::make_pair(j, !r.guarantee || r.guarantee->passed);
    };
    std::vector<std::future<std::pair<Json, bool>>> jobs;
    for (int t = 0; t < a.trials; ++t) jobs.push_back(std::async(std::launch::async, run_one, t));
    Json docs = Json::array();
    bool passed = true;
    for (auto& job : jobs) {
      auto [j, p] = job.get();
      passed = passed && p;
      docs.push_back(std::move(j));
    }
    out << (a.trials == 1 ? docs[0] : docs).dump(2) << "\n";
    return static_cast<int>(passed ? ok : violation);
  });
}

struct OracleArgs {
  std::string input;
  std::string objective = "colors";
};

inline int cmd_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Objective obj = parse_objective(a.objective);
    const BatchedInstance inst = instance_from_json(read_json_file(a.input));
    RevealedState s;
    s.interval_mode = inst.intervals;
    for (const auto& b : inst.batches) detail::append_batch(s, b);
    OracleResult r;
    if (obj == Objective::colors && s.interval_mode) {
      r.witness = sweep_color(s.intervals);
      r.value = max_color(r.witness);
    } else {
      const OracleLimits limits = OracleLimits::from_env();
      r = obj == Objective::colors ? chromatic_number_exact(s.graph, limits) : min_sum_coloring_exact(s.graph, limits);
    }
    Json doc = {{"objective", to_string(obj)}, {"value", r.value}};
    doc["witness"] = coloring_to_json(s.names, r.witness);
    out << doc.dump(2) << "\n";
    return static_cast<int>(ok);
  });
}

struct VerifyArgs {
  std::string input;
  std::string coloring;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BatchedInstance inst = instance_from_json(read_json_file(a.input));
    RevealedState s;
    s.interval_mode = inst.intervals;
    for (const auto& b : inst.batches) detail::append_batch(s, b);
    const Coloring c = coloring_from_json(read_json_file(a.coloring), s.names);
    const ValidationResult r = validate_coloring(s.graph, c);
    Json mono = Json::array();
    for (const auto& [u, v] : r.monochromatic_edges) mono.push_back({{"edge", {s.names[u], s.names[v]}}, {"color", c[u]}});
    Json missing = Json::array();
    for (Vertex v : r.uncolored_vertices) missing.push_back(s.names[v]);
    Json doc = {{"ok", r.ok}, {"monochromatic_edges", mono}, {"uncolored_vertices", missing}};
    if (r.ok) {
      doc["max_color"] = max_color(c);
      doc["sum"] = color_sum(c);
    }
    out << doc.dump(2) << "\n";
    return static_cast<int>(r.ok ? ok : violation);
  });
}

}  // namespace batchcolor::cli

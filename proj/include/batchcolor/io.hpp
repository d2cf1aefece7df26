#pragma once

// JSON formats: instances, colorings, reports and replayable transcripts.
// Rationals are always written as [num, den] integer pairs.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "batchcolor/engine.hpp"
#include "batchcolor/errors.hpp"
#include "batchcolor/interval.hpp"
#include "batchcolor/rational.hpp"

namespace batchcolor {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json rational_to_json(const Rational& r) { return Json::array({r.num(), r.den()}); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    if (j[1].get<std::int64_t>() == 0) throw FormatError("rational with zero denominator");
    return Rational(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
  }
  throw FormatError("expected a rational as [num, den] or an integer, got " + j.dump());
}

inline std::string id_from_json(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  throw FormatError("vertex ids must be strings or integers, got " + j.dump());
}

inline Json interval_to_json(const Interval& iv) {
  return {{"lo", rational_to_json(iv.lo)},
          {"hi", rational_to_json(iv.hi)},
          {"lo_closed", iv.lo_closed},
          {"hi_closed", iv.hi_closed},
          {"id", iv.id}};
}

inline Interval interval_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi")) throw FormatError("interval needs lo and hi");
  Interval iv;
  iv.lo = rational_from_json(j.at("lo"));
  iv.hi = rational_from_json(j.at("hi"));
  iv.lo_closed = j.value("lo_closed", true);
  iv.hi_closed = j.value("hi_closed", true);
  if (j.contains("id")) iv.id = id_from_json(j.at("id"));
  if (!iv.valid()) throw FormatError("empty interval " + iv.to_string());
  return iv;
}

// Reads either instance kind. Graph-mode vertex ids are resolved across
// batches; edges may only reach vertices of the same or earlier batches.
inline BatchedInstance instance_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.contains("batches") || !doc.at("batches").is_array())
    throw FormatError("instance needs \"kind\" and a \"batches\" array");
  const std::string kind = doc.at("kind").get<std::string>();
  BatchedInstance inst;
  if (kind == "intervals") {
    inst.intervals = true;
    int next = 0;
    for (const Json& b : doc.at("batches")) {
      if (!b.is_array()) throw FormatError("interval batch must be an array of intervals");
      BatchSpec spec;
      for (const Json& iv : b) {
        spec.intervals.push_back(interval_from_json(iv));
        if (spec.intervals.back().id.empty()) spec.intervals.back().id = "v" + std::to_string(next);
        spec.names.push_back(spec.intervals.back().id);
        ++next;
      }
      spec.count = static_cast<int>(spec.intervals.size());
      inst.batches.push_back(std::move(spec));
    }
    return inst;
  }
  if (kind != "graph") throw FormatError("unknown instance kind \"" + kind + "\"");
  std::map<std::string, Vertex> index;
  for (const Json& b : doc.at("batches")) {
    if (!b.is_object() || !b.contains("vertices")) throw FormatError("graph batch needs \"vertices\"");
    BatchSpec spec;
    for (const Json& v : b.at("vertices")) {
      const std::string id = id_from_json(v);
      if (!index.emplace(id, static_cast<Vertex>(index.size())).second) throw FormatError("duplicate vertex id " + id);
      spec.names.push_back(id);
    }
    spec.count = static_cast<int>(spec.names.size());
    for (const Json& e : b.value("edges", Json::array())) {
      if (!e.is_array() || e.size() != 2) throw FormatError("edge must be a pair of vertex ids");
      const auto u = index.find(id_from_json(e[0]));
      const auto v = index.find(id_from_json(e[1]));
      if (u == index.end() || v == index.end()) throw FormatError("edge " + e.dump() + " names an unknown vertex");
      spec.edges.emplace_back(u->second, v->second);
    }
    inst.batches.push_back(std::move(spec));
  }
  return inst;
}

inline Json batches_to_json(const RevealedState& s) {
  Json batches = Json::array();
  for (int b = 0; b < s.batch_count(); ++b) {
    const auto [first, count] = s.batches[b];
    if (s.interval_mode) {
      Json arr = Json::array();
      for (int x = 0; x < count; ++x) {
        Interval iv = s.intervals[first + x];
        iv.id = s.names[first + x];
        arr.push_back(interval_to_json(iv));
      }
      batches.push_back(arr);
    } else {
      Json vs = Json::array();
      for (int x = 0; x < count; ++x) vs.push_back(s.names[first + x]);
      Json es = Json::array();
      for (const auto& [u, v] : s.batch_edges[b]) es.push_back({s.names[u], s.names[v]});
      batches.push_back({{"vertices", vs}, {"edges", es}});
    }
  }
  return batches;
}

inline Json instance_to_json(const RevealedState& s) {
  return {{"kind", s.interval_mode ? "intervals" : "graph"}, {"batches", batches_to_json(s)}};
}

inline Json instance_to_json(const BatchedInstance& inst) {
  RevealedState s;
  s.interval_mode = inst.intervals;
  for (const auto& b : inst.batches) detail::append_batch(s, b);
  return instance_to_json(s);
}

inline Json coloring_to_json(const std::vector<std::string>& names, const Coloring& c) {
  Json colors = Json::object();
  for (std::size_t v = 0; v < c.size(); ++v) colors[names[v]] = c[v];
  return {{"colors", colors}};
}

// Colors by vertex name; vertices missing from the document stay 0.
inline Coloring coloring_from_json(const Json& doc, const std::vector<std::string>& names) {
  if (!doc.is_object() || !doc.contains("colors") || !doc.at("colors").is_object())
    throw FormatError("coloring needs a \"colors\" object");
  std::map<std::string, Vertex> index;
  for (std::size_t v = 0; v < names.size(); ++v) index.emplace(names[v], static_cast<Vertex>(v));
  Coloring c(names.size(), 0);
  for (const auto& [id, col] : doc.at("colors").items()) {
    const auto it = index.find(id);
    if (it == index.end()) throw FormatError("coloring names unknown vertex " + id);
    if (!col.is_number_integer()) throw FormatError("color of " + id + " is not an integer");
    c[it->second] = col.get<Color>();
  }
  return c;
}

inline Json report_to_json(const RatioReport& r) {
  Json j = {{"objective", to_string(r.objective)},
            {"algorithm", r.algorithm},
            {"adversary", r.adversary},
            {"algorithm_cost", r.algorithm_cost},
            {"opt_cost", r.opt_cost},
            {"opt_is_bound", r.opt_is_bound},
            {"opt_source", r.opt_source},
            {"ratio", rational_to_json(r.ratio)},
            {"distinct_colors", r.distinct_colors}};
  j["witness_cost"] = r.witness_cost ? Json(*r.witness_cost) : Json(nullptr);
  if (r.guarantee) j["guarantee"] = {{"description", r.guarantee->description}, {"passed", r.guarantee->passed}};
  if (!r.algorithm_diagnostics.is_null()) j["algorithm_diagnostics"] = r.algorithm_diagnostics;
  if (!r.adversary_details.empty()) j["adversary_details"] = r.adversary_details;
  return j;
}

// Full record of a run; "kind" and "batches" make it readable as an instance.
inline Json transcript_to_json(const RatioReport& r) {
  Json j = instance_to_json(r.state);
  Json per_batch = Json::array();
  for (int b = 0; b < r.state.batch_count(); ++b) {
    const auto [first, count] = r.state.batches[b];
    Json colors = Json::object();
    for (int x = 0; x < count; ++x) colors[r.state.names[first + x]] = r.state.colors[first + x];
    per_batch.push_back(colors);
  }
  j["batch_colors"] = per_batch;
  j["coloring"] = coloring_to_json(r.state.names, r.state.colors);
  if (r.witness) j["witness"] = coloring_to_json(r.state.names, *r.witness);
  if (r.representation) {
    Json reps = Json::array();
    for (std::size_t v = 0; v < r.representation->size(); ++v) {
      Interval iv = (*r.representation)[v];
      iv.id = r.state.names[v];
      reps.push_back(interval_to_json(iv));
    }
    j["representation"] = reps;
  }
  j["report"] = report_to_json(r);
  return j;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

// Names of all vertices of an instance in presentation order.
inline std::vector<std::string> instance_names(const BatchedInstance& inst) {
  std::vector<std::string> names;
  int next = 0;
  for (const auto& b : inst.batches) {
    const int count = inst.intervals ? static_cast<int>(b.intervals.size()) : b.count;
    for (int x = 0; x < count; ++x, ++next)
      names.push_back(b.names.empty() ? "v" + std::to_string(next) : b.names[x]);
  }
  return names;
}

}  // namespace batchcolor

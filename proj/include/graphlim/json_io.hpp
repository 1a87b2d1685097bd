#pragma once

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlim/bounds.hpp"
#include "graphlim/dataset.hpp"
#include "graphlim/decorated_graphon.hpp"
#include "graphlim/noise.hpp"
#include "graphlim/partition.hpp"
#include "graphlim/step_graphon.hpp"
#include "graphlim/weighted_graph.hpp"

namespace graphlim {

using json = nlohmann::json;

// 12 significant digits, the serialization precision of all CSV output.
inline std::string format_g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

namespace detail {

inline const json& require_field(const json& j, const char* key, const std::string& context) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw std::runtime_error(context + ": missing field \"" + key + "\"");
  }
  return *it;
}

[[noreturn]] inline void rethrow_with_context(const std::string& context, const std::exception& e) {
  throw std::runtime_error(context + ": " + e.what());
}

}  // namespace detail

// Graph files: {"k": int, "weights_upper": [k(k-1)/2 floats]} row-major
// above the diagonal. Full matrices ({"k", "weights": [[...]]}) are
// accepted on input and checked for symmetry and range.
inline json graph_to_json(const WeightedGraph& g) {
  json j;
  j["k"] = g.size();
  j["weights_upper"] = g.upper_triangle();
  return j;
}

inline WeightedGraph graph_from_json(const json& j, const std::string& context = "graph") {
  try {
    if (!j.is_object()) throw std::runtime_error("expected an object");
    const int k = detail::require_field(j, "k", context).get<int>();
    if (j.contains("weights_upper")) {
      return WeightedGraph::from_upper(k, j["weights_upper"].get<std::vector<double>>());
    }
    if (j.contains("weights")) {
      const auto rows = j["weights"].get<std::vector<std::vector<double>>>();
      if (static_cast<int>(rows.size()) != k) {
        throw std::runtime_error("\"weights\" has " + std::to_string(rows.size()) +
                                 " rows, expected k = " + std::to_string(k));
      }
      return WeightedGraph::from_matrix(rows);
    }
    throw std::runtime_error("needs \"weights_upper\" or \"weights\"");
  } catch (const std::runtime_error& e) {
    if (std::string(e.what()).rfind(context, 0) == 0) throw;
    detail::rethrow_with_context(context, e);
  } catch (const std::exception& e) {
    detail::rethrow_with_context(context, e);
  }
}

// Step graphons: {"blocks": [[m x m symmetric values in [0,1]]]}.
inline json graphon_to_json(const StepGraphon& w) {
  json rows = json::array();
  for (int a = 0; a < w.blocks(); ++a) {
    json row = json::array();
    for (int b = 0; b < w.blocks(); ++b) row.push_back(w.value(a, b));
    rows.push_back(std::move(row));
  }
  json j;
  j["blocks"] = std::move(rows);
  return j;
}

inline StepGraphon graphon_from_json(const json& j, const std::string& context = "graphon") {
  try {
    return StepGraphon::from_matrix(
        detail::require_field(j, "blocks", context).get<std::vector<std::vector<double>>>());
  } catch (const std::runtime_error& e) {
    if (std::string(e.what()).rfind(context, 0) == 0) throw;
    detail::rethrow_with_context(context, e);
  } catch (const std::exception& e) {
    detail::rethrow_with_context(context, e);
  }
}

inline json noise_to_json(const NoiseFamily& noise) {
  json j;
  j["kind"] = noise.kind_name();
  if (noise.kind == NoiseFamily::Kind::beta) j["kappa"] = noise.kappa;
  if (noise.kind == NoiseFamily::Kind::bounded_uniform) j["h"] = noise.h;
  return j;
}

inline NoiseFamily noise_from_json(const json& j, const std::string& context = "noise") {
  try {
    const std::string kind = detail::require_field(j, "kind", context).get<std::string>();
    if (kind == "none") return NoiseFamily::none();
    if (kind == "bernoulli") return NoiseFamily::bernoulli();
    if (kind == "beta") {
      return NoiseFamily::beta(detail::require_field(j, "kappa", context).get<double>());
    }
    if (kind == "bounded_uniform") {
      return NoiseFamily::bounded_uniform(detail::require_field(j, "h", context).get<double>());
    }
    throw std::runtime_error("unknown kind \"" + kind + "\"");
  } catch (const std::runtime_error& e) {
    if (std::string(e.what()).rfind(context, 0) == 0) throw;
    detail::rethrow_with_context(context, e);
  } catch (const std::exception& e) {
    detail::rethrow_with_context(context, e);
  }
}

// Decorated graphons add a "noise" object to the graphon format; a plain
// graphon file reads as noise-free.
inline json decorated_to_json(const DecoratedGraphon& d) {
  json j = graphon_to_json(d.expectation);
  j["noise"] = noise_to_json(d.noise);
  return j;
}

inline DecoratedGraphon decorated_from_json(const json& j,
                                            const std::string& context = "graphon") {
  DecoratedGraphon d{graphon_from_json(j, context), NoiseFamily::none()};
  if (j.is_object() && j.contains("noise")) {
    d.noise = noise_from_json(j["noise"], context + ".noise");
  }
  return d;
}

inline json dataset_to_json(const Dataset& ds) {
  json items = json::array();
  for (const auto& item : ds.items) {
    json channels;
    for (const auto& [name, g] : item.channels) channels[name] = graph_to_json(g);
    json row;
    row["id"] = item.id;
    row["label"] = item.label;
    row["channels"] = std::move(channels);
    items.push_back(std::move(row));
  }
  json j;
  j["items"] = std::move(items);
  return j;
}

inline Dataset dataset_from_json(const json& j, const std::string& context = "dataset") {
  Dataset ds;
  const json& items = detail::require_field(j, "items", context);
  if (!items.is_array()) throw std::runtime_error(context + ": \"items\" must be an array");
  int index = 0;
  for (const auto& row : items) {
    const std::string item_ctx = context + ".items[" + std::to_string(index) + "]";
    DatasetItem item;
    item.id = detail::require_field(row, "id", item_ctx).get<std::string>();
    item.label = detail::require_field(row, "label", item_ctx).get<int>();
    const json& channels = detail::require_field(row, "channels", item_ctx);
    if (!channels.is_object()) throw std::runtime_error(item_ctx + ": \"channels\" must be an object");
    for (const auto& [name, gj] : channels.items()) {
      item.channels.emplace(
          name, graph_from_json(gj, item_ctx + " channel \"" + name + "\" (id \"" + item.id + "\")"));
    }
    ds.items.push_back(std::move(item));
    ++index;
  }
  ds.validate();
  return ds;
}

// Partitions: {"groups": [class index per node]}.
inline json partition_to_json(const Partition& p) {
  json j;
  j["groups"] = p.assignment();
  return j;
}

inline Partition partition_from_json(const json& j, const std::string& context = "partition") {
  try {
    const auto groups = detail::require_field(j, "groups", context).get<std::vector<int>>();
    return Partition(static_cast<int>(groups.size()), groups);
  } catch (const std::runtime_error& e) {
    if (std::string(e.what()).rfind(context, 0) == 0) throw;
    detail::rethrow_with_context(context, e);
  } catch (const std::exception& e) {
    detail::rethrow_with_context(context, e);
  }
}

inline json report_to_json(const SeparationReport& r) {
  json j;
  j["mode"] = r.mode;
  j["verdict"] = r.verdict;
  j["distance"] = r.distance;
  j["bound"] = r.bound;
  j["confidence"] = r.confidence;
  j["threshold"] = r.threshold;
  j["n1"] = r.n1;
  j["n2"] = r.n2;
  j["k"] = r.k;
  j["c"] = r.c;
  if (r.mode == "motif") j["motif_edges"] = r.motif_edges;
  if (r.mode == "spectral") j["v"] = r.v;
  return j;
}

// File helpers. Parse failures carry the path and nlohmann's byte-offset
// diagnostics; validation failures carry the path plus object context.
inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

inline void save_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");
  out << j.dump() << '\n';
  if (!out) throw std::runtime_error(path + ": write failed");
}

inline WeightedGraph load_graph(const std::string& path) {
  return graph_from_json(load_json_file(path), path);
}

inline void save_graph(const WeightedGraph& g, const std::string& path) {
  save_json_file(graph_to_json(g), path);
}

inline DecoratedGraphon load_decorated(const std::string& path) {
  return decorated_from_json(load_json_file(path), path);
}

inline Dataset load_dataset(const std::string& path) {
  return dataset_from_json(load_json_file(path), path);
}

inline void save_dataset(const Dataset& ds, const std::string& path) {
  save_json_file(dataset_to_json(ds), path);
}

inline Partition load_partition(const std::string& path) {
  return partition_from_json(load_json_file(path), path);
}

}  // namespace graphlim

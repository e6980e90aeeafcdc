#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gpot/balayage.hpp"
#include "gpot/calculus.hpp"
#include "gpot/errors.hpp"
#include "gpot/fields.hpp"
#include "gpot/graph.hpp"

namespace gpot {

using json = nlohmann::json;

/// Shortest decimal that round-trips the value (never more than 17
/// significant digits), so serialized numbers diff cleanly.
inline std::string format_number(double value) {
  char buffer[32];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

inline json parse_json_text(const std::string& text) {
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) {
    fail(ErrorCode::parse_error, "malformed JSON");
  }
  return parsed;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::parse_error, "cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str());
}

/// Graph document: {"vertices": [...], "edges": [[tail, head], ...],
/// "infinity": "..."}.
inline GraphDescription parse_graph_description(const json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges") ||
      !doc.contains("infinity")) {
    fail(ErrorCode::parse_error,
         "graph document needs vertices, edges and infinity fields");
  }
  GraphDescription d;
  if (!doc["vertices"].is_array()) {
    fail(ErrorCode::parse_error, "vertices must be an array of strings");
  }
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) {
      fail(ErrorCode::parse_error, "vertices must be an array of strings");
    }
    d.vertices.push_back(v.get<std::string>());
  }
  if (!doc["edges"].is_array()) {
    fail(ErrorCode::parse_error, "edges must be an array of [tail, head] pairs");
  }
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
        !e[1].is_string()) {
      fail(ErrorCode::parse_error,
           "edges must be an array of [tail, head] pairs");
    }
    d.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  if (!doc["infinity"].is_string()) {
    fail(ErrorCode::parse_error, "infinity must be a vertex name");
  }
  d.infinity = doc["infinity"].get<std::string>();
  return d;
}

inline Graph load_graph_file(const std::string& path) {
  return build_graph(parse_graph_description(load_json_file(path)));
}

inline LaplacianVariant parse_variant(const std::string& text) {
  if (text == "normalized") return LaplacianVariant::normalized;
  if (text == "unnormalized") return LaplacianVariant::unnormalized;
  fail(ErrorCode::parse_error,
       "variant must be normalized or unnormalized, got " + text);
}

/// Poisson/Dirichlet problem document: an embedded graph plus the domain,
/// the measure, optional boundary values and an optional variant.
struct ProblemFile {
  GraphDescription graph;
  std::vector<std::string> domain;
  std::vector<std::pair<std::string, double>> measure;
  std::vector<std::pair<std::string, double>> boundary_values;
  LaplacianVariant variant = LaplacianVariant::normalized;
};

inline ProblemFile parse_problem_file(const json& doc) {
  if (!doc.is_object() || !doc.contains("graph") || !doc.contains("domain") ||
      !doc.contains("measure")) {
    fail(ErrorCode::parse_error,
         "problem document needs graph, domain and measure fields");
  }
  ProblemFile p;
  p.graph = parse_graph_description(doc["graph"]);
  if (!doc["domain"].is_array()) {
    fail(ErrorCode::parse_error, "domain must be an array of vertex names");
  }
  for (const auto& v : doc["domain"]) {
    if (!v.is_string()) {
      fail(ErrorCode::parse_error, "domain must be an array of vertex names");
    }
    p.domain.push_back(v.get<std::string>());
  }
  if (!doc["measure"].is_object()) {
    fail(ErrorCode::parse_error, "measure must be a vertex-to-number map");
  }
  for (const auto& [name, value] : doc["measure"].items()) {
    if (!value.is_number()) {
      fail(ErrorCode::parse_error, "measure must be a vertex-to-number map");
    }
    p.measure.emplace_back(name, value.get<double>());
  }
  if (doc.contains("boundary_values")) {
    if (!doc["boundary_values"].is_object()) {
      fail(ErrorCode::parse_error,
           "boundary_values must be a vertex-to-number map");
    }
    for (const auto& [name, value] : doc["boundary_values"].items()) {
      if (!value.is_number()) {
        fail(ErrorCode::parse_error,
             "boundary_values must be a vertex-to-number map");
      }
      p.boundary_values.emplace_back(name, value.get<double>());
    }
  }
  if (doc.contains("variant")) {
    if (!doc["variant"].is_string()) {
      fail(ErrorCode::parse_error,
           "variant must be normalized or unnormalized");
    }
    p.variant = parse_variant(doc["variant"].get<std::string>());
  }
  return p;
}

/// Problem file resolved against its own graph, ready to hand to solvers.
struct LoadedProblem {
  Graph graph;
  Domain domain;
  Measure mu;
  VertexField boundary_values;
  LaplacianVariant variant;
};

inline LoadedProblem load_problem(const ProblemFile& p) {
  Graph graph = build_graph(p.graph);
  Domain domain = Domain::of_names(graph, p.domain);
  const BoundaryData boundary = boundary_of(graph, domain);

  Measure mu(graph);
  for (const auto& [name, value] : p.measure) {
    const VertexId v = graph.index_of(name);
    if (!domain.contains(v)) {
      fail(ErrorCode::support_outside_domain,
           "measure has mass at " + name + ", which is outside the domain");
    }
    mu.set(v, value);
  }

  VertexField g_values(graph);
  for (const auto& [name, value] : p.boundary_values) {
    const VertexId v = graph.index_of(name);
    if (!boundary.on_boundary(v)) {
      fail(ErrorCode::inconsistent_data,
           "boundary value given for " + name +
               ", which is not a boundary vertex of the domain");
    }
    g_values.at(v) = value;
  }

  return {std::move(graph), std::move(domain), std::move(mu),
          std::move(g_values), p.variant};
}

inline LoadedProblem load_problem_file(const std::string& path) {
  return load_problem(parse_problem_file(load_json_file(path)));
}

inline json vertex_map_json(const Graph& g, const VertexField& u) {
  json out = json::object();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out[g.name(v)] = u.at(v);
  }
  return out;
}

inline json edge_map_json(const Graph& g, const EdgeField& i) {
  json out = json::object();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out[g.name(g.edge(e).tail) + "→" + g.name(g.edge(e).head)] = i.at(e);
  }
  return out;
}

inline VertexField parse_vertex_map(const Graph& g, const json& doc) {
  if (!doc.is_object()) {
    fail(ErrorCode::parse_error, "expected a vertex-to-number map");
  }
  VertexField u(g);
  for (const auto& [name, value] : doc.items()) {
    if (!value.is_number()) {
      fail(ErrorCode::parse_error, "expected a vertex-to-number map");
    }
    u.at(g.index_of(name)) = value.get<double>();
  }
  return u;
}

inline void write_sweep_trace_csv(std::ostream& out, const Graph& g,
                                  const std::vector<TraceRecord>& trace) {
  out << "step,swept_vertex,mass_before,interior_mass_after,"
         "boundary_mass_after,max_residual\n";
  for (const TraceRecord& r : trace) {
    out << r.step << ',' << g.name(r.swept_vertex) << ','
        << format_number(r.mass_before) << ','
        << format_number(r.interior_mass_after) << ','
        << format_number(r.boundary_mass_after) << ','
        << format_number(r.max_residual) << '\n';
  }
}

/// Perron convergence log: one row per pass.
inline void write_convergence_csv(std::ostream& out,
                                  const std::vector<double>& pass_deltas) {
  out << "pass,last_delta\n";
  for (std::size_t k = 0; k < pass_deltas.size(); ++k) {
    out << (k + 1) << ',' << format_number(pass_deltas[k]) << '\n';
  }
}

}  // namespace gpot

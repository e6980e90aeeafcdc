#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gpot/errors.hpp"

namespace gpot {

/// Dense vertex index, assigned in input order.
using VertexId = int;
/// Dense edge index, assigned in input order.
using EdgeId = int;

/// Oriented edge: tail is the initial point, head the terminal point.
struct Edge {
  VertexId tail;
  VertexId head;
};

/// Plain construction input for a graph: named vertices, oriented edges
/// as (tail, head) name pairs, and the designated infinity vertex.
struct GraphDescription {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string infinity;
};

/// Finite simple connected graph with one fixed orientation per edge and a
/// designated infinity vertex. Immutable after construction; every operation
/// on it is safe to call concurrently.
///
/// Orientations are bookkeeping only: calculus operators downstream are
/// covariant under flipping any edge together with the sign of edge data.
class Graph {
 public:
  static Graph build(const GraphDescription& description) {
    Graph g;
    if (description.vertices.size() < 2) {
      fail(ErrorCode::inconsistent_data,
           "graph needs at least 2 vertices, got " +
               std::to_string(description.vertices.size()));
    }
    g.names_ = description.vertices;
    for (std::size_t k = 0; k < g.names_.size(); ++k) {
      auto [it, inserted] =
          g.index_.emplace(g.names_[k], static_cast<VertexId>(k));
      if (!inserted) {
        fail(ErrorCode::inconsistent_data,
             "vertex listed twice: " + g.names_[k]);
      }
    }

    const int n = g.vertex_count();
    g.neighbors_.resize(n);
    g.incident_.resize(n);

    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& [tail_name, head_name] : description.edges) {
      auto t = g.index_.find(tail_name);
      auto h = g.index_.find(head_name);
      if (t == g.index_.end()) {
        fail(ErrorCode::unknown_vertex_in_edge,
             "edge endpoint not a vertex: " + tail_name);
      }
      if (h == g.index_.end()) {
        fail(ErrorCode::unknown_vertex_in_edge,
             "edge endpoint not a vertex: " + head_name);
      }
      const VertexId tail = t->second;
      const VertexId head = h->second;
      if (tail == head) {
        fail(ErrorCode::self_loop, "loop at vertex " + tail_name);
      }
      auto key = std::minmax(tail, head);
      if (!seen.insert({key.first, key.second}).second) {
        fail(ErrorCode::duplicate_edge,
             "more than one edge between " + tail_name + " and " + head_name);
      }
      const EdgeId e = static_cast<EdgeId>(g.edges_.size());
      g.edges_.push_back({tail, head});
      g.neighbors_[tail].push_back(head);
      g.incident_[tail].push_back(e);
      g.neighbors_[head].push_back(tail);
      g.incident_[head].push_back(e);
    }

    auto inf = g.index_.find(description.infinity);
    if (inf == g.index_.end()) {
      fail(ErrorCode::infinity_not_a_vertex,
           "infinity vertex not listed: " + description.infinity);
    }
    g.infinity_ = inf->second;

    // Connectivity by breadth-first search from vertex 0.
    std::vector<char> reached(n, 0);
    std::vector<VertexId> queue = {0};
    reached[0] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (VertexId w : g.neighbors_[queue[qi]]) {
        if (!reached[w]) {
          reached[w] = 1;
          queue.push_back(w);
        }
      }
    }
    for (VertexId v = 0; v < n; ++v) {
      if (!reached[v]) {
        fail(ErrorCode::disconnected,
             "vertex " + g.names_[v] + " unreachable from " + g.names_[0]);
      }
    }
    return g;
  }

  int vertex_count() const { return static_cast<int>(names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  VertexId infinity() const { return infinity_; }

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<Edge>& edges() const { return edges_; }

  int degree(VertexId v) const {
    return static_cast<int>(neighbors_[static_cast<std::size_t>(v)].size());
  }

  /// Neighbor list of v; neighbors(v)[k] is the far endpoint of
  /// incident_edges(v)[k].
  const std::vector<VertexId>& neighbors(VertexId v) const {
    return neighbors_[static_cast<std::size_t>(v)];
  }

  /// Edges incident to v, aligned with neighbors(v).
  const std::vector<EdgeId>& incident_edges(VertexId v) const {
    return incident_[static_cast<std::size_t>(v)];
  }

  const std::string& name(VertexId v) const {
    return names_[static_cast<std::size_t>(v)];
  }

  bool has_vertex(const std::string& name) const {
    return index_.count(name) != 0;
  }

  VertexId index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
      fail(ErrorCode::unknown_vertex, "no vertex named " + name);
    }
    return it->second;
  }

 private:
  Graph() = default;

  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexId>> neighbors_;
  std::vector<std::vector<EdgeId>> incident_;
  VertexId infinity_ = 0;
};

inline Graph build_graph(const GraphDescription& description) {
  return Graph::build(description);
}

/// A vertex subset intended to exclude the infinity vertex. Construction only
/// bounds-checks; semantic requirements (infinity excluded, nonempty) are
/// enforced by boundary_of and reported by validate_domain.
class Domain {
 public:
  Domain() = default;

  Domain(const Graph& g, std::vector<VertexId> members)
      : mask_(static_cast<std::size_t>(g.vertex_count()), 0) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (VertexId v : members) {
      if (v < 0 || v >= g.vertex_count()) {
        fail(ErrorCode::unknown_vertex,
             "domain member index out of range: " + std::to_string(v));
      }
      mask_[static_cast<std::size_t>(v)] = 1;
    }
    members_ = std::move(members);
  }

  static Domain of_names(const Graph& g, const std::vector<std::string>& names) {
    std::vector<VertexId> members;
    members.reserve(names.size());
    for (const auto& name : names) members.push_back(g.index_of(name));
    return Domain(g, std::move(members));
  }

  /// All vertices except infinity: the natural domain of fundamental
  /// solutions.
  static Domain everything_but_infinity(const Graph& g) {
    std::vector<VertexId> members;
    members.reserve(static_cast<std::size_t>(g.vertex_count()) - 1);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (v != g.infinity()) members.push_back(v);
    }
    return Domain(g, std::move(members));
  }

  const std::vector<VertexId>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(VertexId v) const {
    return mask_[static_cast<std::size_t>(v)] != 0;
  }

 private:
  std::vector<VertexId> members_;
  std::vector<char> mask_;
};

/// Boundary decomposition of a domain: the plus/minus vertex sets, the edges
/// crossing the boundary, and the signed normal on each crossing edge.
///
/// A vertex may belong to both plus_vertices and minus_vertices when it is
/// reachable from D by edges of both orientations.
struct BoundaryData {
  std::vector<VertexId> plus_vertices;   // heads outside D of edges leaving D
  std::vector<VertexId> minus_vertices;  // tails outside D of edges entering D
  std::vector<VertexId> vertices;        // sorted union of the two sets
  std::vector<EdgeId> crossing_edges;    // exactly one endpoint in D
  std::vector<int> normal;               // +1 if tail in D, -1 if head in D

  bool on_boundary(VertexId v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }
};

inline BoundaryData boundary_of(const Graph& g, const Domain& d) {
  if (d.empty()) fail(ErrorCode::empty_domain, "domain has no vertices");
  if (d.contains(g.infinity())) {
    fail(ErrorCode::domain_contains_infinity,
         "domain contains the infinity vertex " + g.name(g.infinity()));
  }
  BoundaryData b;
  std::set<VertexId> plus, minus;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const bool tail_in = d.contains(g.edge(e).tail);
    const bool head_in = d.contains(g.edge(e).head);
    if (tail_in == head_in) continue;
    b.crossing_edges.push_back(e);
    if (tail_in) {
      b.normal.push_back(+1);
      plus.insert(g.edge(e).head);
    } else {
      b.normal.push_back(-1);
      minus.insert(g.edge(e).tail);
    }
  }
  b.plus_vertices.assign(plus.begin(), plus.end());
  b.minus_vertices.assign(minus.begin(), minus.end());
  std::set<VertexId> all(plus);
  all.insert(minus.begin(), minus.end());
  b.vertices.assign(all.begin(), all.end());
  return b;
}

/// Pure report on a domain's fitness: infinity membership, emptiness,
/// boundary presence, and the connected components of the induced subgraph.
struct DomainDiagnostics {
  bool contains_infinity = false;
  bool empty = false;
  bool boundary_nonempty = false;
  std::vector<std::vector<VertexId>> components;

  bool ok() const { return !contains_infinity && !empty && boundary_nonempty; }
};

inline DomainDiagnostics validate_domain(const Graph& g, const Domain& d) {
  DomainDiagnostics diag;
  diag.contains_infinity = d.contains(g.infinity());
  diag.empty = d.empty();

  std::vector<char> visited(static_cast<std::size_t>(g.vertex_count()), 0);
  for (VertexId start : d.members()) {
    if (visited[static_cast<std::size_t>(start)]) continue;
    std::vector<VertexId> component = {start};
    visited[static_cast<std::size_t>(start)] = 1;
    for (std::size_t qi = 0; qi < component.size(); ++qi) {
      for (VertexId w : g.neighbors(component[qi])) {
        if (d.contains(w) && !visited[static_cast<std::size_t>(w)]) {
          visited[static_cast<std::size_t>(w)] = 1;
          component.push_back(w);
        }
      }
    }
    std::sort(component.begin(), component.end());
    diag.components.push_back(std::move(component));
  }

  for (VertexId v : d.members()) {
    for (VertexId w : g.neighbors(v)) {
      if (!d.contains(w)) {
        diag.boundary_nonempty = true;
        break;
      }
    }
    if (diag.boundary_nonempty) break;
  }
  return diag;
}

}  // namespace gpot

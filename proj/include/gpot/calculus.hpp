#pragma once

#include <string>

#include "gpot/errors.hpp"
#include "gpot/fields.hpp"
#include "gpot/graph.hpp"

namespace gpot {

enum class LaplacianVariant { normalized, unnormalized };

inline const char* to_string(LaplacianVariant variant) {
  return variant == LaplacianVariant::normalized ? "normalized"
                                                 : "unnormalized";
}

namespace detail {

template <typename Scalar>
void require_vertex_total(const Graph& g, const BasicVertexField<Scalar>& u) {
  if (u.size() != g.vertex_count()) {
    fail(ErrorCode::missing_vertex_value,
         "vertex field has " + std::to_string(u.size()) + " values, graph has " +
             std::to_string(g.vertex_count()) + " vertices");
  }
}

template <typename Scalar>
void require_edge_total(const Graph& g, const BasicEdgeField<Scalar>& i) {
  if (i.size() != g.edge_count()) {
    fail(ErrorCode::missing_edge_value,
         "edge field has " + std::to_string(i.size()) + " values, graph has " +
             std::to_string(g.edge_count()) + " edges");
  }
}

}  // namespace detail

/// DU(e) = U(head) - U(tail).
template <typename Scalar>
BasicEdgeField<Scalar> gradient(const Graph& g,
                                const BasicVertexField<Scalar>& u) {
  detail::require_vertex_total(g, u);
  BasicEdgeField<Scalar> out(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out.at(e) = u.at(g.edge(e).head) - u.at(g.edge(e).tail);
  }
  return out;
}

/// Divergence with the degree normalization:
/// (1/deg v)(sum over edges leaving v of i - sum over edges entering v of i).
///
/// The loop walks incident_edges(v), which Graph keeps index-aligned with
/// neighbors(v), and each term is a single IEEE subtraction away from the
/// laplacian's term, so divergence(gradient(u)) reproduces
/// laplacian(u, normalized) bit for bit.
template <typename Scalar>
BasicVertexField<Scalar> divergence(const Graph& g,
                                    const BasicEdgeField<Scalar>& i) {
  detail::require_edge_total(g, i);
  BasicVertexField<Scalar> out(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    Scalar sum(0);
    for (EdgeId e : g.incident_edges(v)) {
      const Scalar term = g.edge(e).tail == v ? i.at(e) : -i.at(e);
      sum += term;
    }
    out.at(v) = sum / Scalar(g.degree(v));
  }
  return out;
}

/// Normalized: (1/deg v) sum over neighbors of (U(w)-U(v)).
/// Unnormalized: the same sum without the 1/deg factor.
template <typename Scalar>
BasicVertexField<Scalar> laplacian(const Graph& g,
                                   const BasicVertexField<Scalar>& u,
                                   LaplacianVariant variant) {
  detail::require_vertex_total(g, u);
  BasicVertexField<Scalar> out(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    Scalar sum(0);
    for (VertexId w : g.neighbors(v)) {
      const Scalar term = u.at(w) - u.at(v);
      sum += term;
    }
    out.at(v) =
        variant == LaplacianVariant::normalized ? sum / Scalar(g.degree(v)) : sum;
  }
  return out;
}

/// i.j(v) = (1/(2 deg v)) sum over edges incident to v of i(e)j(e).
template <typename Scalar>
BasicVertexField<Scalar> edge_dot(const Graph& g,
                                  const BasicEdgeField<Scalar>& i,
                                  const BasicEdgeField<Scalar>& j) {
  detail::require_edge_total(g, i);
  detail::require_edge_total(g, j);
  BasicVertexField<Scalar> out(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    Scalar sum(0);
    for (EdgeId e : g.incident_edges(v)) {
      sum += i.at(e) * j.at(e);
    }
    out.at(v) = sum / Scalar(2 * g.degree(v));
  }
  return out;
}

/// Ubar(e) = (U(head) + U(tail)) / 2.
template <typename Scalar>
BasicEdgeField<Scalar> edge_average(const Graph& g,
                                    const BasicVertexField<Scalar>& u) {
  detail::require_vertex_total(g, u);
  BasicEdgeField<Scalar> out(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out.at(e) = (u.at(g.edge(e).head) + u.at(g.edge(e).tail)) / Scalar(2);
  }
  return out;
}

/// Pointwise product helpers; plumbing for the product rule and the
/// integration-by-parts checker.
template <typename Scalar>
BasicVertexField<Scalar> pointwise(const BasicVertexField<Scalar>& u,
                                   const BasicVertexField<Scalar>& w) {
  BasicVertexField<Scalar> out(u);
  for (VertexId v = 0; v < u.size(); ++v) out.at(v) = u.at(v) * w.at(v);
  return out;
}

template <typename Scalar>
BasicEdgeField<Scalar> pointwise(const BasicEdgeField<Scalar>& i,
                                 const BasicEdgeField<Scalar>& j) {
  BasicEdgeField<Scalar> out(i);
  for (EdgeId e = 0; e < i.size(); ++e) out.at(e) = i.at(e) * j.at(e);
  return out;
}

/// Integral of U against the measure mu: sum of U(v) mu(v) over all vertices.
template <typename Scalar>
Scalar integrate_wrt_measure(const BasicVertexField<Scalar>& u,
                             const BasicMeasure<Scalar>& mu) {
  Scalar sum(0);
  const int n = u.size() < mu.size() ? u.size() : mu.size();
  for (VertexId v = 0; v < n; ++v) sum += u.at(v) * mu.at(v);
  return sum;
}

/// Degree-weighted volume integral over D: sum of U(v) deg(v) for v in D.
template <typename Scalar>
Scalar volume_integral(const Graph& g, const BasicVertexField<Scalar>& u,
                       const Domain& d) {
  detail::require_vertex_total(g, u);
  Scalar sum(0);
  for (VertexId v : d.members()) sum += u.at(v) * Scalar(g.degree(v));
  return sum;
}

/// Signed flux of i through the boundary of D: sum over crossing edges of
/// i(e) times the normal (+1 when the tail is inside, -1 when the head is).
template <typename Scalar>
Scalar boundary_flux(const Graph& g, const BasicEdgeField<Scalar>& i,
                     const Domain& d) {
  detail::require_edge_total(g, i);
  const BoundaryData b = boundary_of(g, d);
  Scalar sum(0);
  for (std::size_t k = 0; k < b.crossing_edges.size(); ++k) {
    const Scalar flux = i.at(b.crossing_edges[k]);
    sum += b.normal[k] > 0 ? flux : -flux;
  }
  return sum;
}

/// Both sides of the divergence theorem on D, computed independently.
/// The caller compares them against its own tolerance.
template <typename Scalar>
struct DivergenceTheoremSides {
  Scalar lhs;  // volume integral of the divergence over D
  Scalar rhs;  // boundary flux
};

template <typename Scalar>
DivergenceTheoremSides<Scalar> check_divergence_theorem(
    const Graph& g, const BasicEdgeField<Scalar>& i, const Domain& d) {
  return {volume_integral(g, divergence(g, i), d), boundary_flux(g, i, d)};
}

/// The three terms of integration by parts on D, computed independently.
/// The identity is lhs = boundary_term - volume_term.
template <typename Scalar>
struct IntegrationByPartsTerms {
  Scalar lhs;            // volume integral of U (div i) over D
  Scalar boundary_term;  // flux of (edge average of U) i through the boundary
  Scalar volume_term;    // volume integral of i . DU over D
};

template <typename Scalar>
IntegrationByPartsTerms<Scalar> check_integration_by_parts(
    const Graph& g, const BasicVertexField<Scalar>& u,
    const BasicEdgeField<Scalar>& i, const Domain& d) {
  IntegrationByPartsTerms<Scalar> terms;
  terms.lhs = volume_integral(g, pointwise(u, divergence(g, i)), d);
  terms.boundary_term = boundary_flux(g, pointwise(edge_average(g, u), i), d);
  terms.volume_term = volume_integral(g, edge_dot(g, i, gradient(g, u)), d);
  return terms;
}

}  // namespace gpot

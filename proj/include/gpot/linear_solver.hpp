#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gpot/calculus.hpp"
#include "gpot/errors.hpp"
#include "gpot/fields.hpp"
#include "gpot/graph.hpp"

namespace gpot {

/// Dirichlet/Poisson problem: -laplacian(u, variant) = rhs on the domain,
/// u = boundary_values on its boundary. rhs is read on domain vertices only
/// and boundary_values on boundary vertices only.
template <typename Scalar>
struct BasicDirichletProblem {
  const Graph* graph = nullptr;
  Domain domain;
  BasicVertexField<Scalar> rhs;
  BasicVertexField<Scalar> boundary_values;
  LaplacianVariant variant = LaplacianVariant::normalized;
};

using DirichletProblem = BasicDirichletProblem<double>;

template <typename Scalar>
struct BasicDirichletSolution {
  BasicVertexField<Scalar> u;
  /// Vertices outside domain and boundary alike; pinned to 0, not solved for.
  std::vector<VertexId> outside_closure;
};

using DirichletSolution = BasicDirichletSolution<double>;

namespace detail {

template <typename Scalar>
Scalar magnitude(const Scalar& x) {
  using std::abs;
  return abs(x);
}

/// Dense Gaussian elimination with partial pivoting, in place.
/// a is row-major m-by-m, b the right-hand side; returns the solution in b.
template <typename Scalar>
void solve_dense(std::vector<Scalar>& a, std::vector<Scalar>& b, int m) {
  auto at = [&](int r, int c) -> Scalar& {
    return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) +
             static_cast<std::size_t>(c)];
  };
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    Scalar best = magnitude(at(col, col));
    for (int r = col + 1; r < m; ++r) {
      const Scalar candidate = magnitude(at(r, col));
      if (candidate > best) {
        best = candidate;
        pivot = r;
      }
    }
    if (!(best > Scalar(0))) {
      fail(ErrorCode::singular_system,
           "no usable pivot in column " + std::to_string(col));
    }
    if (pivot != col) {
      for (int c = col; c < m; ++c) std::swap(at(pivot, c), at(col, c));
      std::swap(b[static_cast<std::size_t>(pivot)],
                b[static_cast<std::size_t>(col)]);
    }
    for (int r = col + 1; r < m; ++r) {
      const Scalar factor = at(r, col) / at(col, col);
      if (factor == Scalar(0)) continue;
      at(r, col) = Scalar(0);
      for (int c = col + 1; c < m; ++c) at(r, c) -= factor * at(col, c);
      b[static_cast<std::size_t>(r)] -=
          factor * b[static_cast<std::size_t>(col)];
    }
  }
  for (int r = m - 1; r >= 0; --r) {
    Scalar sum = b[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < m; ++c) {
      sum -= at(r, c) * b[static_cast<std::size_t>(c)];
    }
    b[static_cast<std::size_t>(r)] = sum / at(r, r);
  }
}

}  // namespace detail

/// Direct solve by dense elimination; the ground-truth oracle.
///
/// For v in D the equation deg(v) u(v) - sum of u over neighbors = s f(v)
/// holds with s = deg(v) (normalized) or s = 1 (unnormalized); boundary
/// vertices carry their data exactly; vertices outside the closure are set
/// to 0 and reported.
template <typename Scalar>
BasicDirichletSolution<Scalar> dirichlet_solve_detailed(
    const BasicDirichletProblem<Scalar>& p) {
  if (p.graph == nullptr) {
    fail(ErrorCode::inconsistent_data, "problem carries no graph");
  }
  const Graph& g = *p.graph;
  if (p.rhs.size() != g.vertex_count() ||
      p.boundary_values.size() != g.vertex_count()) {
    fail(ErrorCode::inconsistent_data,
         "field sizes do not match the graph's vertex count");
  }
  const BoundaryData b = boundary_of(g, p.domain);

  const int m = p.domain.size();
  std::vector<int> row_of(static_cast<std::size_t>(g.vertex_count()), -1);
  for (int k = 0; k < m; ++k) {
    row_of[static_cast<std::size_t>(p.domain.members()[
        static_cast<std::size_t>(k)])] = k;
  }

  std::vector<Scalar> a(static_cast<std::size_t>(m) * static_cast<std::size_t>(m),
                        Scalar(0));
  std::vector<Scalar> rhs(static_cast<std::size_t>(m), Scalar(0));
  for (int k = 0; k < m; ++k) {
    const VertexId v = p.domain.members()[static_cast<std::size_t>(k)];
    const Scalar scale = p.variant == LaplacianVariant::normalized
                             ? Scalar(g.degree(v))
                             : Scalar(1);
    a[static_cast<std::size_t>(k) * static_cast<std::size_t>(m) +
      static_cast<std::size_t>(k)] = Scalar(g.degree(v));
    Scalar r = scale * p.rhs.at(v);
    for (VertexId w : g.neighbors(v)) {
      if (p.domain.contains(w)) {
        a[static_cast<std::size_t>(k) * static_cast<std::size_t>(m) +
          static_cast<std::size_t>(row_of[static_cast<std::size_t>(w)])] -=
            Scalar(1);
      } else {
        r += p.boundary_values.at(w);
      }
    }
    rhs[static_cast<std::size_t>(k)] = r;
  }

  detail::solve_dense(a, rhs, m);

  BasicDirichletSolution<Scalar> out{BasicVertexField<Scalar>(g), {}};
  for (int k = 0; k < m; ++k) {
    out.u.at(p.domain.members()[static_cast<std::size_t>(k)]) =
        rhs[static_cast<std::size_t>(k)];
  }
  for (VertexId v : b.vertices) out.u.at(v) = p.boundary_values.at(v);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!p.domain.contains(v) && !b.on_boundary(v)) {
      out.outside_closure.push_back(v);
    }
  }
  return out;
}

template <typename Scalar>
BasicVertexField<Scalar> dirichlet_solve(
    const BasicDirichletProblem<Scalar>& p) {
  return dirichlet_solve_detailed(p).u;
}

}  // namespace gpot

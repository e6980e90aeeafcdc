#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "gpot/calculus.hpp"
#include "gpot/errors.hpp"
#include "gpot/fields.hpp"
#include "gpot/graph.hpp"
#include "gpot/linear_solver.hpp"

namespace gpot {

/// Solution of -laplacian(values, variant) = 1 at the pole, = 0 elsewhere
/// off infinity, pinned to values(infinity) = 0.
template <typename Scalar>
struct BasicFundamentalSolution {
  VertexId pole;
  LaplacianVariant variant;
  BasicVertexField<Scalar> values;
};

using FundamentalSolution = BasicFundamentalSolution<double>;

template <typename Scalar = double>
BasicFundamentalSolution<Scalar> fundamental_solution(
    const Graph& g, VertexId pole, LaplacianVariant variant) {
  if (pole == g.infinity()) {
    fail(ErrorCode::pole_at_infinity,
         "pole " + g.name(pole) + " is the infinity vertex");
  }
  BasicDirichletProblem<Scalar> p{
      &g, Domain::everything_but_infinity(g), indicator<Scalar>(g, pole),
      BasicVertexField<Scalar>(g), variant};
  return {pole, variant, dirichlet_solve(p)};
}

/// Memoized fundamental solutions for one graph, keyed by (pole, variant).
/// Lookups are serialized by a mutex; entries are stable once created, so
/// returned references stay valid for the cache's lifetime.
class FundamentalSolutionCache {
 public:
  explicit FundamentalSolutionCache(const Graph& g) : graph_(&g) {}

  const FundamentalSolution& get(VertexId pole, LaplacianVariant variant) {
    const std::pair<int, int> key{pole, static_cast<int>(variant)};
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) {
      it = table_
               .emplace(key, std::make_unique<FundamentalSolution>(
                                 fundamental_solution(*graph_, pole, variant)))
               .first;
    }
    return *it->second;
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return table_.size();
  }

 private:
  const Graph* graph_;
  mutable std::mutex mutex_;
  std::map<std::pair<int, int>, std::unique_ptr<FundamentalSolution>> table_;
};

/// Superposition of fundamental solutions weighted by mu over its support.
/// Passing a cache makes repeated poles free.
inline VertexField newtonian_potential(const Graph& g, const Measure& mu,
                                       LaplacianVariant variant,
                                       FundamentalSolutionCache* cache = nullptr) {
  if (mu.at(g.infinity()) != 0.0) {
    fail(ErrorCode::mass_at_infinity,
         "measure puts mass on the infinity vertex " + g.name(g.infinity()));
  }
  VertexField out(g);
  for (VertexId x : mu.support()) {
    const double m = mu.at(x);
    if (cache != nullptr) {
      const FundamentalSolution& phi = cache->get(x, variant);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out.at(v) += m * phi.values.at(v);
      }
    } else {
      const FundamentalSolution phi = fundamental_solution(g, x, variant);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out.at(v) += m * phi.values.at(v);
      }
    }
  }
  return out;
}

/// Both sides of the symmetry identity, computed from two independent solves.
/// Unnormalized: Phi_x(v) versus Phi_v(x). Normalized: the degree-weighted
/// form deg(v) Phi_x(v) versus deg(x) Phi_v(x); the plain form fails on
/// non-regular graphs for this variant.
template <typename Scalar = double>
struct SymmetrySides {
  Scalar lhs;
  Scalar rhs;
};

template <typename Scalar = double>
SymmetrySides<Scalar> symmetry_check(const Graph& g, VertexId x, VertexId v,
                                     LaplacianVariant variant) {
  if (x == v) {
    fail(ErrorCode::same_vertex, "symmetry needs two distinct vertices, got " +
                                     g.name(x) + " twice");
  }
  const auto phi_x = fundamental_solution<Scalar>(g, x, variant);
  const auto phi_v = fundamental_solution<Scalar>(g, v, variant);
  if (variant == LaplacianVariant::unnormalized) {
    return {phi_x.values.at(v), phi_v.values.at(x)};
  }
  return {Scalar(g.degree(v)) * phi_x.values.at(v),
          Scalar(g.degree(x)) * phi_v.values.at(x)};
}

}  // namespace gpot

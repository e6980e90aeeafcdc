#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gpot/calculus.hpp"
#include "gpot/errors.hpp"
#include "gpot/fields.hpp"
#include "gpot/graph.hpp"

namespace gpot {

/// Order in which domain vertices are swept. Every policy visits each
/// domain vertex arbitrarily often over an unbounded run.
struct Schedule {
  enum class Policy { round_robin, greedy_max_mass, random };

  Policy policy = Policy::round_robin;
  std::uint64_t seed = 0;

  static Schedule round_robin() { return {Policy::round_robin, 0}; }
  static Schedule greedy_max_mass() { return {Policy::greedy_max_mass, 0}; }
  static Schedule randomized(std::uint64_t seed) {
    return {Policy::random, seed};
  }
};

inline const char* to_string(Schedule::Policy p) {
  switch (p) {
    case Schedule::Policy::round_robin: return "round_robin";
    case Schedule::Policy::greedy_max_mass: return "greedy_max_mass";
    case Schedule::Policy::random: return "random";
  }
  return "round_robin";
}

/// One row of the sweep trace. Masses are reported in the variant's
/// conserved weighting (degree-weighted for normalized, plain otherwise);
/// max_residual is the largest residual magnitude observed at any domain
/// vertex up to and including this step.
struct TraceRecord {
  long long step;
  VertexId swept_vertex;
  double mass_before;
  double interior_mass_after;
  double boundary_mass_after;
  double max_residual;
};

/// Full balayage iteration state: the current measure and potential, the
/// mass parked on the boundary, the schedule cursor, and running residual
/// and conservation bookkeeping.
struct SweepState {
  const Graph* graph = nullptr;
  Domain domain;
  BoundaryData boundary;
  LaplacianVariant variant = LaplacianVariant::normalized;
  Schedule schedule;

  Measure mu;                     // current measure, interior support
  Measure mu0;                    // initial measure, kept for residuals
  Measure boundary_accumulated;   // plain mass parked per boundary vertex
  VertexField u;                  // accumulated potential, zero off domain
  long long step = 0;

  bool record_trace = true;
  std::vector<TraceRecord> trace;

  // Internal bookkeeping.
  std::uint64_t cursor = 0;
  std::mt19937_64 rng;
  VertexField residual;           // -laplacian(u) - (mu0 - mu) on the domain
  double max_residual_seen = 0.0;
  double interior_weighted = 0.0;
  double boundary_weighted = 0.0;
  double initial_weighted = 0.0;

  double weight(VertexId v) const {
    return variant == LaplacianVariant::normalized
               ? static_cast<double>(graph->degree(v))
               : 1.0;
  }

  /// Variant-weighted interior mass, recomputed from scratch.
  double fresh_interior_mass() const {
    double sum = 0.0;
    for (VertexId v : domain.members()) sum += mu.at(v) * weight(v);
    return sum;
  }

  /// Variant-weighted parked boundary mass, recomputed from scratch.
  double fresh_boundary_mass() const {
    double sum = 0.0;
    for (VertexId v : boundary.vertices) {
      sum += boundary_accumulated.at(v) * weight(v);
    }
    return sum;
  }
};

inline SweepState init_sweep(const Graph& g, const Domain& d,
                             const Measure& mu0, LaplacianVariant variant,
                             Schedule schedule) {
  for (VertexId v : mu0.support()) {
    if (!d.contains(v)) {
      fail(ErrorCode::support_outside_domain,
           "initial measure has mass at " + g.name(v) +
               ", which is outside the domain");
    }
  }
  SweepState s;
  s.graph = &g;
  s.domain = d;
  s.boundary = boundary_of(g, d);
  s.variant = variant;
  s.schedule = schedule;
  s.mu = mu0;
  s.mu0 = mu0;
  s.boundary_accumulated = Measure(g);
  s.u = VertexField(g);
  s.residual = VertexField(g);
  s.rng.seed(schedule.seed);
  s.interior_weighted = s.fresh_interior_mass();
  s.initial_weighted = s.interior_weighted;
  return s;
}

/// Next vertex the schedule asks to sweep.
inline VertexId next_scheduled_vertex(SweepState& s) {
  const auto& members = s.domain.members();
  const std::size_t m = members.size();
  switch (s.schedule.policy) {
    case Schedule::Policy::round_robin: {
      const VertexId v = members[static_cast<std::size_t>(s.cursor % m)];
      ++s.cursor;
      return v;
    }
    case Schedule::Policy::greedy_max_mass: {
      std::size_t best = 0;
      for (std::size_t k = 1; k < m; ++k) {
        if (s.mu.at(members[k]) > s.mu.at(members[best])) best = k;
      }
      return members[best];
    }
    case Schedule::Policy::random: {
      const double r =
          static_cast<double>(s.rng() >> 11) * 0x1.0p-53;  // uniform in [0,1)
      std::size_t k = static_cast<std::size_t>(r * static_cast<double>(m));
      if (k >= m) k = m - 1;
      return members[k];
    }
  }
  return members[0];
}

/// One sweep at xi: zero the mass there, redistribute it to the neighbors
/// (boundary arrivals are parked), credit u, and refresh the residual at
/// the vertices the step touched.
inline SweepState& sweep_step(SweepState& s, VertexId xi) {
  if (!s.domain.contains(xi)) {
    fail(ErrorCode::vertex_not_in_domain,
         "cannot sweep " + s.graph->name(xi) + ": outside the domain");
  }
  const Graph& g = *s.graph;
  const double m = s.mu.at(xi);
  const bool normalized = s.variant == LaplacianVariant::normalized;
  const double deg_xi = static_cast<double>(g.degree(xi));

  s.mu.zero_at(xi);
  s.interior_weighted -= m * s.weight(xi);
  for (VertexId x : g.neighbors(xi)) {
    const double gain =
        normalized ? m / static_cast<double>(g.degree(x)) : m / deg_xi;
    if (s.domain.contains(x)) {
      s.mu.add(x, gain);
      s.interior_weighted += gain * s.weight(x);
    } else {
      s.boundary_accumulated.add(x, gain);
      s.boundary_weighted += gain * s.weight(x);
    }
  }
  s.u.at(xi) += normalized ? m : m / deg_xi;
  ++s.step;

  // Residuals change only where u or mu changed: xi and its neighbors.
  auto refresh = [&](VertexId v) {
    double sum = 0.0;
    for (VertexId w : g.neighbors(v)) sum += s.u.at(w) - s.u.at(v);
    if (normalized) sum /= static_cast<double>(g.degree(v));
    const double r = -sum - (s.mu0.at(v) - s.mu.at(v));
    s.residual.at(v) = r;
    const double magnitude = std::abs(r);
    if (magnitude > s.max_residual_seen) s.max_residual_seen = magnitude;
  };
  refresh(xi);
  for (VertexId x : g.neighbors(xi)) {
    if (s.domain.contains(x)) refresh(x);
  }

  // Keep the incremental totals from drifting on long runs.
  if (s.step % 4096 == 0) {
    s.interior_weighted = s.fresh_interior_mass();
    s.boundary_weighted = s.fresh_boundary_mass();
  }

  if (s.record_trace) {
    s.trace.push_back({s.step, xi, m, s.interior_weighted, s.boundary_weighted,
                       s.max_residual_seen});
  }
  return s;
}

inline long long default_max_steps(const Domain& d) {
  const long long by_size = 5000LL * d.size();
  return by_size > 1000000LL ? by_size : 1000000LL;
}

/// Sweep along the schedule until the variant-weighted interior mass drops
/// below tol. The returned state carries u, the parked boundary mass, and
/// the full trace when record_trace is set.
inline SweepState run_balayage(const Graph& g, const Domain& d,
                               const Measure& mu0, LaplacianVariant variant,
                               Schedule schedule, double tol = 1e-12,
                               long long max_steps = 0,
                               bool record_trace = true) {
  if (!(tol > 0)) {
    fail(ErrorCode::inconsistent_data, "tolerance must be positive");
  }
  if (max_steps <= 0) max_steps = default_max_steps(d);
  SweepState s = init_sweep(g, d, mu0, variant, schedule);
  s.record_trace = record_trace;
  while (s.interior_weighted >= tol) {
    if (s.step >= max_steps) {
      fail(ErrorCode::not_converged,
           "interior mass still " + std::to_string(s.fresh_interior_mass()) +
               " after " + std::to_string(s.step) + " steps");
    }
    sweep_step(s, next_scheduled_vertex(s));
    if (s.interior_weighted < tol) {
      s.interior_weighted = s.fresh_interior_mass();
      s.boundary_weighted = s.fresh_boundary_mass();
    }
  }
  return s;
}

/// End-of-run summary: step count, what mass remains inside, what sits
/// parked on each boundary vertex, and the conservation ledger in the
/// variant's weighting.
struct SweepReport {
  long long steps = 0;
  double interior_mass = 0.0;  // variant-weighted
  double boundary_mass = 0.0;  // variant-weighted
  std::vector<std::pair<VertexId, double>> boundary_accumulated;  // plain
  double initial_total = 0.0;  // variant-weighted
  double final_total = 0.0;    // interior + boundary
  double imbalance = 0.0;      // initial - final
  double max_residual = 0.0;
};

inline SweepReport sweep_report(const SweepState& s) {
  SweepReport r;
  r.steps = s.step;
  r.interior_mass = s.fresh_interior_mass();
  r.boundary_mass = s.fresh_boundary_mass();
  for (VertexId v : s.boundary.vertices) {
    r.boundary_accumulated.emplace_back(v, s.boundary_accumulated.at(v));
  }
  r.initial_total = s.initial_weighted;
  r.final_total = r.interior_mass + r.boundary_mass;
  r.imbalance = r.initial_total - r.final_total;
  r.max_residual = s.max_residual_seen;
  return r;
}

}  // namespace gpot

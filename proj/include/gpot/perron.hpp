#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpot/calculus.hpp"
#include "gpot/errors.hpp"
#include "gpot/fields.hpp"
#include "gpot/graph.hpp"

namespace gpot {

enum class Harmonicity { harmonic, subharmonic, superharmonic, neither };

inline const char* to_string(Harmonicity h) {
  switch (h) {
    case Harmonicity::harmonic: return "harmonic";
    case Harmonicity::subharmonic: return "subharmonic";
    case Harmonicity::superharmonic: return "superharmonic";
    case Harmonicity::neither: return "neither";
  }
  return "neither";
}

template <typename Scalar>
struct BasicHarmonicityReport {
  /// Signed normalized-Laplacian defect per domain vertex, in domain order.
  std::vector<std::pair<VertexId, Scalar>> defects;
  Harmonicity classification = Harmonicity::neither;
};

using HarmonicityReport = BasicHarmonicityReport<double>;

namespace detail {

template <typename Scalar>
struct sign_slack {
  static Scalar value() { return Scalar(0); }
};

/// Floating point gets a hair of slack in the sign tests; exact scalar
/// types classify with strict signs.
template <>
struct sign_slack<double> {
  static double value() { return 1e-12; }
};

}  // namespace detail

/// Classify U over D by the sign of its normalized-Laplacian defects.
/// Neighbor values are read from the closure of D only.
template <typename Scalar>
BasicHarmonicityReport<Scalar> classify_harmonicity(
    const Graph& g, const BasicVertexField<Scalar>& u, const Domain& d,
    Scalar slack = detail::sign_slack<Scalar>::value()) {
  detail::require_vertex_total(g, u);
  boundary_of(g, d);  // validates the domain
  BasicHarmonicityReport<Scalar> report;
  bool all_nonneg = true;
  bool all_nonpos = true;
  for (VertexId v : d.members()) {
    Scalar sum(0);
    for (VertexId w : g.neighbors(v)) sum += u.at(w) - u.at(v);
    const Scalar defect = sum / Scalar(g.degree(v));
    report.defects.emplace_back(v, defect);
    if (defect < -slack) all_nonneg = false;
    if (defect > slack) all_nonpos = false;
  }
  if (all_nonneg && all_nonpos) {
    report.classification = Harmonicity::harmonic;
  } else if (all_nonneg) {
    report.classification = Harmonicity::subharmonic;
  } else if (all_nonpos) {
    report.classification = Harmonicity::superharmonic;
  } else {
    report.classification = Harmonicity::neither;
  }
  return report;
}

/// Replace U(x0) by the average of U over x0's neighbors; everything else
/// is untouched. Preserves subharmonicity and never decreases a subharmonic
/// field.
template <typename Scalar>
BasicVertexField<Scalar> harmonic_lift(const Graph& g,
                                       const BasicVertexField<Scalar>& u,
                                       VertexId x0, const Domain& d) {
  detail::require_vertex_total(g, u);
  if (!d.contains(x0)) {
    fail(ErrorCode::vertex_not_in_domain,
         "lift point " + g.name(x0) + " is outside the domain");
  }
  BasicVertexField<Scalar> out(u);
  Scalar sum(0);
  for (VertexId w : g.neighbors(x0)) sum += u.at(w);
  out.at(x0) = sum / Scalar(g.degree(x0));
  return out;
}

/// One Perron ascent: current iterate, boundary data, pass bookkeeping.
/// current holds the boundary data on the boundary at every step and is
/// lifted in round-robin vertex input order inside the domain.
class PerronIteration {
 public:
  PerronIteration(const Graph& g, const Domain& d,
                  const VertexField& boundary_values)
      : graph_(&g), domain_(d), boundary_(boundary_of(g, d)), current_(g) {
    if (boundary_.vertices.empty()) {
      fail(ErrorCode::empty_boundary, "domain has no boundary vertices");
    }
    double floor = std::numeric_limits<double>::infinity();
    for (VertexId v : boundary_.vertices) {
      floor = std::min(floor, boundary_values.at(v));
    }
    for (VertexId v : domain_.members()) current_.at(v) = floor;
    for (VertexId v : boundary_.vertices) {
      current_.at(v) = boundary_values.at(v);
    }
  }

  /// One full round-robin sweep of liftings; returns the largest pointwise
  /// change, which is also left in last_delta().
  double pass() {
    double delta = 0.0;
    for (VertexId v : domain_.members()) {
      double sum = 0.0;
      for (VertexId w : graph_->neighbors(v)) sum += current_.at(w);
      const double lifted = sum / graph_->degree(v);
      delta = std::max(delta, std::abs(lifted - current_.at(v)));
      current_.at(v) = lifted;
    }
    ++sweep_count_;
    last_delta_ = delta;
    return delta;
  }

  const VertexField& current() const { return current_; }
  int sweep_count() const { return sweep_count_; }
  double last_delta() const { return last_delta_; }

 private:
  const Graph* graph_;
  Domain domain_;
  BoundaryData boundary_;
  VertexField current_;
  int sweep_count_ = 0;
  double last_delta_ = std::numeric_limits<double>::infinity();
};

struct PerronResult {
  VertexField u;
  int passes = 0;
  double last_delta = 0.0;
  /// Largest pointwise change per pass, for convergence logs.
  std::vector<double> pass_deltas;
};

/// Monotone lifting ascent from the constant min of the boundary data.
/// Stops when a full pass moves no vertex by tol or more.
inline PerronResult perron_solve_detailed(const Graph& g, const Domain& d,
                                          const VertexField& boundary_values,
                                          double tol = 1e-12,
                                          long long max_passes = 1000000) {
  if (!(tol > 0)) {
    fail(ErrorCode::inconsistent_data, "tolerance must be positive");
  }
  PerronIteration it(g, d, boundary_values);
  PerronResult result;
  while (true) {
    const double delta = it.pass();
    result.pass_deltas.push_back(delta);
    if (delta < tol) break;
    if (it.sweep_count() >= max_passes) {
      fail(ErrorCode::not_converged,
           "no convergence after " + std::to_string(it.sweep_count()) +
               " passes; last pass moved " + std::to_string(delta));
    }
  }
  result.u = it.current();
  result.passes = it.sweep_count();
  result.last_delta = it.last_delta();
  return result;
}

inline VertexField perron_solve(const Graph& g, const Domain& d,
                                const VertexField& boundary_values,
                                double tol = 1e-12,
                                long long max_passes = 1000000) {
  return perron_solve_detailed(g, d, boundary_values, tol, max_passes).u;
}

struct ExtremumTrace {
  double max_value = 0.0;
  /// A boundary vertex attaining the closure maximum; empty when rounding
  /// leaves the boundary strictly below an interior value.
  std::optional<VertexId> boundary_vertex;
};

/// Closure maximum of a subharmonic field and a boundary vertex attaining it.
inline ExtremumTrace extremum_trace(const Graph& g, const VertexField& u,
                                    const Domain& d) {
  const auto report = classify_harmonicity(g, u, d);
  if (report.classification != Harmonicity::subharmonic &&
      report.classification != Harmonicity::harmonic) {
    fail(ErrorCode::not_subharmonic,
         std::string("field classifies as ") + to_string(report.classification));
  }
  const BoundaryData b = boundary_of(g, d);
  ExtremumTrace trace;
  trace.max_value = -std::numeric_limits<double>::infinity();
  for (VertexId v : d.members()) {
    trace.max_value = std::max(trace.max_value, u.at(v));
  }
  for (VertexId v : b.vertices) {
    trace.max_value = std::max(trace.max_value, u.at(v));
  }
  for (VertexId v : b.vertices) {
    if (u.at(v) == trace.max_value) {
      trace.boundary_vertex = v;
      break;
    }
  }
  return trace;
}

}  // namespace gpot

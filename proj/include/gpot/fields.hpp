#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gpot/errors.hpp"
#include "gpot/graph.hpp"

namespace gpot {

/// Scalar function on the vertices of a fixed graph, stored densely.
template <typename Scalar>
class BasicVertexField {
 public:
  BasicVertexField() = default;

  explicit BasicVertexField(const Graph& g, Scalar fill = Scalar(0))
      : values_(static_cast<std::size_t>(g.vertex_count()), fill) {}

  explicit BasicVertexField(std::vector<Scalar> values)
      : values_(std::move(values)) {}

  Scalar& at(VertexId v) { return values_[static_cast<std::size_t>(v)]; }
  const Scalar& at(VertexId v) const {
    return values_[static_cast<std::size_t>(v)];
  }

  Scalar& operator[](VertexId v) { return at(v); }
  const Scalar& operator[](VertexId v) const { return at(v); }

  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<Scalar>& values() const { return values_; }

 private:
  std::vector<Scalar> values_;
};

/// Scalar function on the oriented edges of a fixed graph, stored densely.
/// Flipping an edge's orientation negates its value.
template <typename Scalar>
class BasicEdgeField {
 public:
  BasicEdgeField() = default;

  explicit BasicEdgeField(const Graph& g, Scalar fill = Scalar(0))
      : values_(static_cast<std::size_t>(g.edge_count()), fill) {}

  explicit BasicEdgeField(std::vector<Scalar> values)
      : values_(std::move(values)) {}

  Scalar& at(EdgeId e) { return values_[static_cast<std::size_t>(e)]; }
  const Scalar& at(EdgeId e) const {
    return values_[static_cast<std::size_t>(e)];
  }

  Scalar& operator[](EdgeId e) { return at(e); }
  const Scalar& operator[](EdgeId e) const { return at(e); }

  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<Scalar>& values() const { return values_; }

 private:
  std::vector<Scalar> values_;
};

/// Nonnegative mass distribution on vertices. Construction and mutation both
/// reject negative values, so the nonnegativity invariant always holds.
template <typename Scalar>
class BasicMeasure {
 public:
  BasicMeasure() = default;

  explicit BasicMeasure(const Graph& g)
      : mass_(static_cast<std::size_t>(g.vertex_count()), Scalar(0)) {}

  explicit BasicMeasure(std::vector<Scalar> mass) : mass_(std::move(mass)) {
    for (std::size_t k = 0; k < mass_.size(); ++k) {
      if (mass_[k] < Scalar(0)) {
        fail(ErrorCode::negative_mass,
             "mass at vertex index " + std::to_string(k) + " is negative");
      }
    }
  }

  const Scalar& at(VertexId v) const {
    return mass_[static_cast<std::size_t>(v)];
  }
  const Scalar& operator[](VertexId v) const { return at(v); }

  void set(VertexId v, Scalar m) {
    if (m < Scalar(0)) {
      fail(ErrorCode::negative_mass,
           "mass at vertex index " + std::to_string(v) + " is negative");
    }
    mass_[static_cast<std::size_t>(v)] = m;
  }

  void add(VertexId v, Scalar m) { set(v, at(v) + m); }
  void zero_at(VertexId v) { mass_[static_cast<std::size_t>(v)] = Scalar(0); }

  Scalar total() const {
    Scalar t(0);
    for (const Scalar& m : mass_) t += m;
    return t;
  }

  std::vector<VertexId> support() const {
    std::vector<VertexId> s;
    for (std::size_t k = 0; k < mass_.size(); ++k) {
      if (mass_[k] > Scalar(0)) s.push_back(static_cast<VertexId>(k));
    }
    return s;
  }

  int size() const { return static_cast<int>(mass_.size()); }
  const std::vector<Scalar>& values() const { return mass_; }

 private:
  std::vector<Scalar> mass_;
};

using VertexField = BasicVertexField<double>;
using EdgeField = BasicEdgeField<double>;
using Measure = BasicMeasure<double>;

/// Unit point mass at x.
template <typename Scalar = double>
BasicMeasure<Scalar> dirac(const Graph& g, VertexId x) {
  BasicMeasure<Scalar> m(g);
  m.set(x, Scalar(1));
  return m;
}

/// Indicator of a single vertex as a vertex field.
template <typename Scalar = double>
BasicVertexField<Scalar> indicator(const Graph& g, VertexId x) {
  BasicVertexField<Scalar> u(g);
  u.at(x) = Scalar(1);
  return u;
}

}  // namespace gpot

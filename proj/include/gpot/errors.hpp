#pragma once

#include <stdexcept>
#include <string>

namespace gpot {

/// Error categories raised by the library. Each carries a message naming
/// the offending element (vertex, edge, file field, ...).
enum class ErrorCode {
  self_loop,
  duplicate_edge,
  disconnected,
  unknown_vertex_in_edge,
  infinity_not_a_vertex,
  unknown_vertex,
  domain_contains_infinity,
  empty_domain,
  missing_vertex_value,
  missing_edge_value,
  singular_system,
  inconsistent_data,
  pole_at_infinity,
  mass_at_infinity,
  same_vertex,
  vertex_not_in_domain,
  missing_closure_value,
  not_subharmonic,
  not_converged,
  empty_boundary,
  support_outside_domain,
  negative_mass,
  parse_error,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::self_loop: return "SelfLoop";
    case ErrorCode::duplicate_edge: return "DuplicateEdge";
    case ErrorCode::disconnected: return "Disconnected";
    case ErrorCode::unknown_vertex_in_edge: return "UnknownVertexInEdge";
    case ErrorCode::infinity_not_a_vertex: return "InfinityNotAVertex";
    case ErrorCode::unknown_vertex: return "UnknownVertex";
    case ErrorCode::domain_contains_infinity: return "DomainContainsInfinity";
    case ErrorCode::empty_domain: return "EmptyDomain";
    case ErrorCode::missing_vertex_value: return "MissingVertexValue";
    case ErrorCode::missing_edge_value: return "MissingEdgeValue";
    case ErrorCode::singular_system: return "SingularSystem";
    case ErrorCode::inconsistent_data: return "InconsistentData";
    case ErrorCode::pole_at_infinity: return "PoleAtInfinity";
    case ErrorCode::mass_at_infinity: return "MassAtInfinity";
    case ErrorCode::same_vertex: return "SameVertex";
    case ErrorCode::vertex_not_in_domain: return "VertexNotInDomain";
    case ErrorCode::missing_closure_value: return "MissingClosureValue";
    case ErrorCode::not_subharmonic: return "NotSubharmonic";
    case ErrorCode::not_converged: return "NotConverged";
    case ErrorCode::empty_boundary: return "EmptyBoundary";
    case ErrorCode::support_outside_domain: return "SupportOutsideDomain";
    case ErrorCode::negative_mass: return "NegativeMass";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }

  /// The message without the error-name prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace gpot

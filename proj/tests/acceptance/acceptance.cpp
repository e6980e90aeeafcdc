// Acceptance harness: drives every advertised guarantee end to end and
// prints one [PASS]/[FAIL] line per criterion. Tolerances are pinned here.
//
// Usage: gpot_acceptance <cli-binary> <data-dir>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <gpot/gpot.hpp>

#include "support/generators.hpp"

using namespace gpot;

namespace {

std::string g_cli;
std::string g_data_dir;

struct Outcome {
  bool ok = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string brief(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

Graph p3() {
  return build_graph({{"v1", "v2", "v3"}, {{"v1", "v2"}, {"v2", "v3"}}, "v3"});
}

LaplacianVariant pick_variant(int t) {
  return t % 2 == 0 ? LaplacianVariant::normalized
                    : LaplacianVariant::unnormalized;
}

// 1. Divergence theorem on random (graph, edge field, domain) triples.
Outcome divergence_theorem() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const Graph g = gen::random_connected_graph(rng, 3, 50);
    const EdgeField i = gen::random_edge_field(g, rng);
    const Domain d = gen::random_domain(g, rng);
    const auto sides = check_divergence_theorem(g, i, d);
    const double rel =
        std::abs(sides.lhs - sides.rhs) / (1.0 + std::abs(sides.lhs));
    worst = std::max(worst, rel);
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-12 && elapsed < 5.0,
          "max discrepancy " + brief(worst) + " over 500 triples, " +
              brief(elapsed) + " s"};
}

// 2. Integration by parts and the product rule on the same harness.
Outcome parts_and_product() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1002);
  double worst_parts = 0.0;
  double worst_product = 0.0;
  for (int t = 0; t < 500; ++t) {
    const Graph g = gen::random_connected_graph(rng, 3, 50);
    const VertexField u = gen::random_vertex_field(g, rng);
    const VertexField w = gen::random_vertex_field(g, rng);
    const EdgeField i = gen::random_edge_field(g, rng);
    const Domain d = gen::random_domain(g, rng);

    const auto terms = check_integration_by_parts(g, u, i, d);
    const double rel =
        std::abs(terms.lhs - (terms.boundary_term - terms.volume_term)) /
        (1.0 + std::abs(terms.lhs));
    worst_parts = std::max(worst_parts, rel);

    const EdgeField lhs = gradient(g, pointwise(u, w));
    const EdgeField a = pointwise(edge_average(g, u), gradient(g, w));
    const EdgeField b = pointwise(edge_average(g, w), gradient(g, u));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const double diff = std::abs(lhs.at(e) - (a.at(e) + b.at(e))) /
                          (1.0 + std::abs(lhs.at(e)));
      worst_product = std::max(worst_product, diff);
    }
  }
  const double elapsed = seconds_since(start);
  return {worst_parts <= 1e-12 && worst_product <= 1e-12 && elapsed < 5.0,
          "parts " + brief(worst_parts) + ", product " + brief(worst_product) +
              ", " + brief(elapsed) + " s"};
}

// 3. Composition of divergence and gradient equals the normalized laplacian.
Outcome composition() {
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const Graph g = gen::random_connected_graph(rng, 3, 50);
    const VertexField u = gen::random_vertex_field(g, rng);
    const VertexField composed = divergence(g, gradient(g, u));
    const VertexField direct = laplacian(g, u, LaplacianVariant::normalized);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      worst = std::max(worst, std::abs(composed.at(v) - direct.at(v)));
    }
  }
  return {worst <= 1e-14, "max elementwise gap " + brief(worst) +
                              " over 500 fields (tolerance 1e-14)"};
}

// 4. Maximum principle: subharmonic fields attain their closure maximum on
// the boundary, exactly.
Outcome maximum_principle() {
  std::mt19937_64 rng(1004);
  for (int t = 0; t < 500; ++t) {
    const Graph g = gen::random_connected_graph(rng, 3, 50);
    const Domain d = gen::random_domain(g, rng);
    VertexField f(g);
    for (VertexId v : d.members()) f.at(v) = -0.05 - gen::uniform01(rng);
    const VertexField bv = gen::random_boundary_values(g, d, rng);
    const VertexField u = dirichlet_solve(
        DirichletProblem{&g, d, f, bv, LaplacianVariant::normalized});

    const ExtremumTrace trace = extremum_trace(g, u, d);
    if (!trace.boundary_vertex.has_value()) {
      return {false, "interior exceeded the boundary on trial " +
                         std::to_string(t)};
    }
    const BoundaryData b = boundary_of(g, d);
    double boundary_max = u.at(b.vertices.front());
    for (VertexId v : b.vertices) boundary_max = std::max(boundary_max, u.at(v));
    if (boundary_max != trace.max_value) {
      return {false, "closure max not a boundary value on trial " +
                         std::to_string(t)};
    }
  }
  return {true, "closure maximum on the boundary in all 500 runs"};
}

// 5. Fundamental solutions: frozen path values plus the defining equation.
Outcome fundamental_solutions() {
  const Graph path = p3();
  const auto phi1 =
      fundamental_solution(path, 0, LaplacianVariant::normalized);
  const auto phi2 =
      fundamental_solution(path, 1, LaplacianVariant::normalized);
  const auto phi2u =
      fundamental_solution(path, 1, LaplacianVariant::unnormalized);
  if (phi1.values.at(0) != 2.0 || phi1.values.at(1) != 1.0 ||
      phi1.values.at(2) != 0.0 || phi2.values.at(0) != 2.0 ||
      phi2.values.at(1) != 2.0 || phi2u.values.at(0) != 1.0 ||
      phi2u.values.at(1) != 1.0) {
    return {false, "path-graph values off"};
  }

  std::mt19937_64 rng(1005);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Graph g = gen::random_connected_graph(rng, 3, 50);
    VertexId pole = gen::uniform_int(rng, 0, g.vertex_count() - 1);
    if (pole == g.infinity()) pole = (pole + 1) % g.vertex_count();
    const LaplacianVariant variant = pick_variant(t);
    const auto phi = fundamental_solution(g, pole, variant);
    if (phi.values.at(g.infinity()) != 0.0) {
      return {false, "nonzero at infinity on trial " + std::to_string(t)};
    }
    const VertexField lap = laplacian(g, phi.values, variant);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (v == g.infinity()) continue;
      const double expected = v == pole ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(-lap.at(v) - expected));
    }
  }
  return {worst <= 1e-10, "path values exact, defining-equation residual " +
                              brief(worst) + " over 100 graphs"};
}

// 6. Symmetry: plain for the unnormalized variant, degree-weighted for the
// normalized one, plain again on regular graphs.
Outcome symmetry() {
  std::mt19937_64 rng(1006);
  double worst_plain = 0.0;
  double worst_weighted = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Graph g = gen::random_connected_graph(rng, 3, 40);
    FundamentalSolutionCache cache(g);
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
      if (x == g.infinity()) continue;
      for (VertexId v = x + 1; v < g.vertex_count(); ++v) {
        if (v == g.infinity()) continue;
        const auto& px_u = cache.get(x, LaplacianVariant::unnormalized);
        const auto& pv_u = cache.get(v, LaplacianVariant::unnormalized);
        worst_plain = std::max(
            worst_plain, std::abs(px_u.values.at(v) - pv_u.values.at(x)));
        const auto& px_n = cache.get(x, LaplacianVariant::normalized);
        const auto& pv_n = cache.get(v, LaplacianVariant::normalized);
        worst_weighted = std::max(
            worst_weighted, std::abs(g.degree(v) * px_n.values.at(v) -
                                     g.degree(x) * pv_n.values.at(x)));
      }
    }
    const VertexId a = g.infinity() == 0 ? 1 : 0;
    const VertexId b = g.infinity() <= 1 ? 2 : 1;
    const auto sides = symmetry_check(g, a, b, LaplacianVariant::unnormalized);
    worst_plain = std::max(worst_plain, std::abs(sides.lhs - sides.rhs));
  }

  double worst_regular = 0.0;
  for (int t = 0; t < 10; ++t) {
    const Graph g = gen::random_regular_graph(rng, 5, 24);
    FundamentalSolutionCache cache(g);
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
      if (x == g.infinity()) continue;
      for (VertexId v = x + 1; v < g.vertex_count(); ++v) {
        if (v == g.infinity()) continue;
        const auto& px = cache.get(x, LaplacianVariant::normalized);
        const auto& pv = cache.get(v, LaplacianVariant::normalized);
        worst_regular = std::max(
            worst_regular, std::abs(px.values.at(v) - pv.values.at(x)));
      }
    }
  }
  const bool ok =
      worst_plain <= 1e-10 && worst_weighted <= 1e-10 && worst_regular <= 1e-10;
  return {ok, "plain " + brief(worst_plain) + ", degree-weighted " +
                  brief(worst_weighted) + ", regular-graph plain " +
                  brief(worst_regular)};
}

// 7. Perron solver against the direct oracle, with monotone ascent through
// admissible subharmonic iterates.
Outcome perron() {
  std::mt19937_64 rng(1007);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Graph g = gen::random_connected_graph(rng, 4, 200);
    const Domain d = gen::random_domain(g, rng);
    const VertexField bv = gen::random_boundary_values(g, d, rng);
    const VertexField via_perron = perron_solve(g, d, bv, 1e-13);
    const VertexField direct = dirichlet_solve(DirichletProblem{
        &g, d, VertexField(g), bv, LaplacianVariant::normalized});
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      worst = std::max(worst, std::abs(via_perron.at(v) - direct.at(v)));
    }
  }
  if (worst > 1e-10) {
    return {false, "oracle gap " + brief(worst) + " exceeds 1e-10"};
  }

  for (int t = 0; t < 10; ++t) {
    const Graph g = gen::random_connected_graph(rng, 4, 60);
    const Domain d = gen::random_domain(g, rng);
    const VertexField bv = gen::random_boundary_values(g, d, rng);
    const BoundaryData b = boundary_of(g, d);
    PerronIteration it(g, d, bv);
    VertexField previous = it.current();
    for (int pass = 0; pass < 2000; ++pass) {
      const double delta = it.pass();
      const VertexField& current = it.current();
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (current.at(v) < previous.at(v)) {
          return {false, "iterate decreased at pass " + std::to_string(pass)};
        }
      }
      for (VertexId v : b.vertices) {
        if (current.at(v) != bv.at(v)) {
          return {false, "boundary drifted at pass " + std::to_string(pass)};
        }
      }
      const auto report = classify_harmonicity(g, current, d);
      if (report.classification != Harmonicity::subharmonic &&
          report.classification != Harmonicity::harmonic) {
        return {false, std::string("iterate left the admissible family: ") +
                           to_string(report.classification)};
      }
      previous = current;
      if (delta < 1e-13) break;
    }
  }
  return {true, "oracle gap " + brief(worst) +
                    " over 100 graphs; iterates monotone and admissible"};
}

// 8. Balayage: per-step residuals, exact zeroing, balanced ledger, and
// oracle-level limits under all three schedules.
Outcome balayage() {
  const auto start = std::chrono::steady_clock::now();
  const double tol = 1e-12;
  std::mt19937_64 rng(1008);

  {
    const Graph g = p3();
    const Domain d = Domain::of_names(g, {"v1", "v2"});
    SweepState s = init_sweep(g, d, dirac(g, 0), LaplacianVariant::normalized,
                              Schedule::round_robin());
    sweep_step(s, 0);
    const bool first = s.mu.at(0) == 0.0 && s.mu.at(1) == 0.5 &&
                       s.u.at(0) == 1.0 && s.u.at(1) == 0.0;
    sweep_step(s, 1);
    const bool second = s.mu.at(0) == 0.5 && s.mu.at(1) == 0.0 &&
                        s.boundary_accumulated.at(2) == 0.5 &&
                        s.u.at(0) == 1.0 && s.u.at(1) == 0.5;
    if (!first || !second) {
      return {false, "path trace does not reproduce the frozen states"};
    }
  }

  std::mt19937_64 check_rng(10081);
  for (int t = 0; t < 10; ++t) {
    const Graph g = gen::random_connected_graph(check_rng, 4, 60);
    const Domain d = gen::random_domain(g, check_rng);
    const Measure mu0 = gen::random_measure(g, d, check_rng);
    const LaplacianVariant variant = pick_variant(t);
    SweepState s = init_sweep(g, d, mu0, variant, Schedule::round_robin());
    const double initial = s.fresh_interior_mass();
    for (int k = 0; k < 500; ++k) {
      const VertexId xi = next_scheduled_vertex(s);
      sweep_step(s, xi);
      if (s.mu.at(xi) != 0.0) {
        return {false, "swept vertex kept mass at step " + std::to_string(k)};
      }
      const VertexField lap = laplacian(g, s.u, variant);
      for (VertexId v : d.members()) {
        if (std::abs(-lap.at(v) - (s.mu0.at(v) - s.mu.at(v))) > 1e-12) {
          return {false, "residual identity broke at step " +
                             std::to_string(k)};
        }
      }
      if (std::abs(s.fresh_interior_mass() + s.fresh_boundary_mass() -
                   initial) > 1e-12) {
        return {false, "mass ledger drifted at step " + std::to_string(k)};
      }
    }
  }

  double worst_gap = 0.0;
  double worst_residual = 0.0;
  double worst_imbalance = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Graph g = gen::random_connected_graph(rng, 4, 200);
    const Domain d = gen::random_domain(g, rng);
    const Measure mu0 = gen::random_measure(g, d, rng);
    const LaplacianVariant variant = pick_variant(t);
    const VertexField direct = dirichlet_solve(DirichletProblem{
        &g, d, VertexField(mu0.values()), VertexField(g), variant});

    for (const Schedule schedule :
         {Schedule::round_robin(), Schedule::greedy_max_mass(),
          Schedule::randomized(42)}) {
      const SweepState s =
          run_balayage(g, d, mu0, variant, schedule, tol, 0, false);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        worst_gap = std::max(worst_gap, std::abs(s.u.at(v) - direct.at(v)));
      }
      const SweepReport report = sweep_report(s);
      worst_residual = std::max(worst_residual, report.max_residual);
      worst_imbalance = std::max(worst_imbalance, std::abs(report.imbalance));
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst_gap <= 100 * tol && worst_residual <= 1e-12 &&
                  worst_imbalance <= 1e-12 && elapsed < 60.0;
  return {ok, "oracle gap " + brief(worst_gap) + ", residual " +
                  brief(worst_residual) + ", imbalance " +
                  brief(worst_imbalance) + ", " + brief(elapsed) + " s"};
}

std::string run_cli(const std::string& args, int* exit_code) {
  const std::string command = "'" + g_cli + "' " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    *exit_code = -1;
    return out;
  }
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    out.append(buffer, n);
  }
  const int status = pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

// 9. CLI round trip on the shipped path problem: both methods, stable bytes.
Outcome cli_round_trip() {
  const std::string problem = "'" + g_data_dir + "/p3.json'";
  const std::string balayage_args =
      "solve poisson " + problem + " --method balayage --tol 1e-12";
  const std::string direct_args = "solve poisson " + problem +
                                  " --method direct";

  int code = 0;
  const std::string first = run_cli(balayage_args, &code);
  if (code != 0) return {false, "balayage run exited " + std::to_string(code)};
  const std::string again = run_cli(balayage_args, &code);
  if (code != 0) return {false, "balayage rerun exited " + std::to_string(code)};
  if (first != again) return {false, "balayage output not byte-identical"};

  const std::string direct = run_cli(direct_args, &code);
  if (code != 0) return {false, "direct run exited " + std::to_string(code)};
  const std::string direct_again = run_cli(direct_args, &code);
  if (direct != direct_again) {
    return {false, "direct output not byte-identical"};
  }

  const nlohmann::json from_balayage = nlohmann::json::parse(first);
  const nlohmann::json from_direct = nlohmann::json::parse(direct);
  const double expected[] = {2.0, 1.0, 0.0};
  const char* names[] = {"v1", "v2", "v3"};
  double worst_methods = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double b = from_balayage.at(names[k]).get<double>();
    const double d = from_direct.at(names[k]).get<double>();
    if (std::abs(b - expected[k]) > 1e-8 ||
        std::abs(d - expected[k]) > 1e-8) {
      return {false, std::string("value off at ") + names[k]};
    }
    worst_methods = std::max(worst_methods, std::abs(b - d));
  }
  if (worst_methods > 1e-10) {
    return {false, "methods disagree by " + brief(worst_methods)};
  }
  return {true, "both methods hit (2, 1, 0), byte-identical reruns"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: gpot_acceptance <cli-binary> <data-dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_data_dir = argv[2];

  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"divergence theorem", divergence_theorem},
      {"integration by parts and product rule", parts_and_product},
      {"divergence-of-gradient composition", composition},
      {"maximum principle", maximum_principle},
      {"fundamental solutions", fundamental_solutions},
      {"symmetry", symmetry},
      {"perron solver", perron},
      {"balayage", balayage},
      {"cli round trip", cli_round_trip},
  };

  int failures = 0;
  int number = 1;
  for (const auto& [name, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (outcome.ok ? "[PASS] " : "[FAIL] ") << number << ". " << name
              << ": " << outcome.detail << "\n";
    if (!outcome.ok) ++failures;
    ++number;
  }
  return failures == 0 ? 0 : 1;
}

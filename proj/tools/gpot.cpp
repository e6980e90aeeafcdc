#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <gpot/gpot.hpp>

namespace {

using gpot::json;

/// Bad flag values discovered after CLI11 parsing; exits with the usage code.
struct UsageError {
  std::string message;
};

void emit_error(const std::string& name, const std::string& message) {
  json err;
  err["error"] = name;
  err["message"] = message;
  std::cerr << err.dump(2) << "\n";
}

int exit_code_for(const gpot::Error& e) {
  return e.code() == gpot::ErrorCode::not_converged ? 4 : 3;
}

void print_result(const json& doc) { std::cout << doc.dump(2) << "\n"; }

double positive_tol(double tol) {
  if (!(tol > 0)) {
    throw UsageError{"--tol must be positive"};
  }
  return tol;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GPOT_SEED")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return parsed;
  }
  return 12345;
}

/// Uniform double in [-1, 1), identical on every platform.
double uniform_signed(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

gpot::VertexField random_vertex_field(const gpot::Graph& g,
                                      std::mt19937_64& rng) {
  gpot::VertexField u(g);
  for (gpot::VertexId v = 0; v < g.vertex_count(); ++v) {
    u.at(v) = uniform_signed(rng);
  }
  return u;
}

gpot::EdgeField random_edge_field(const gpot::Graph& g, std::mt19937_64& rng) {
  gpot::EdgeField i(g);
  for (gpot::EdgeId e = 0; e < g.edge_count(); ++e) {
    i.at(e) = uniform_signed(rng);
  }
  return i;
}

gpot::Domain random_domain(const gpot::Graph& g, std::mt19937_64& rng) {
  std::vector<gpot::VertexId> members;
  std::vector<gpot::VertexId> eligible;
  for (gpot::VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v == g.infinity()) continue;
    eligible.push_back(v);
    if (rng() & 1u) members.push_back(v);
  }
  if (members.empty()) {
    members.push_back(eligible[static_cast<std::size_t>(
        rng() % eligible.size())]);
  }
  return gpot::Domain(g, members);
}

int cmd_solve_poisson(const std::string& file, const std::string& method,
                      double tol, const std::string& trace_path) {
  gpot::LoadedProblem p = gpot::load_problem_file(file);
  gpot::VertexField u;
  if (method == "direct") {
    u = gpot::dirichlet_solve(gpot::DirichletProblem{
        &p.graph, p.domain, gpot::VertexField(p.mu.values()),
        p.boundary_values, p.variant});
  } else {
    gpot::SweepState state =
        gpot::run_balayage(p.graph, p.domain, p.mu, p.variant,
                           gpot::Schedule::round_robin(), tol, 0,
                           !trace_path.empty());
    u = state.u;
    bool boundary_inhomogeneous = false;
    for (gpot::VertexId v : state.boundary.vertices) {
      if (p.boundary_values.at(v) != 0.0) boundary_inhomogeneous = true;
    }
    if (boundary_inhomogeneous) {
      const gpot::VertexField h =
          gpot::perron_solve(p.graph, p.domain, p.boundary_values, tol);
      for (gpot::VertexId v = 0; v < p.graph.vertex_count(); ++v) {
        u.at(v) += h.at(v);
      }
    }
    if (!trace_path.empty()) {
      std::ofstream out(trace_path);
      if (!out) {
        gpot::fail(gpot::ErrorCode::parse_error, "cannot write " + trace_path);
      }
      gpot::write_sweep_trace_csv(out, p.graph, state.trace);
    }
    const gpot::SweepReport report = gpot::sweep_report(state);
    json summary;
    summary["steps"] = report.steps;
    summary["interior_mass"] = report.interior_mass;
    summary["boundary_mass"] = report.boundary_mass;
    json parked = json::object();
    for (const auto& [v, mass] : report.boundary_accumulated) {
      parked[p.graph.name(v)] = mass;
    }
    summary["boundary_accumulated"] = parked;
    summary["initial_total"] = report.initial_total;
    summary["final_total"] = report.final_total;
    summary["imbalance"] = report.imbalance;
    summary["max_residual"] = report.max_residual;
    std::cerr << summary.dump(2) << "\n";
  }
  print_result(gpot::vertex_map_json(p.graph, u));
  return 0;
}

int cmd_solve_dirichlet(const std::string& file, const std::string& method,
                        double tol, const std::string& trace_path) {
  gpot::LoadedProblem p = gpot::load_problem_file(file);
  if (!p.mu.support().empty()) {
    gpot::fail(gpot::ErrorCode::inconsistent_data,
               "dirichlet problems take no measure; use solve poisson");
  }
  gpot::VertexField u;
  if (method == "direct") {
    u = gpot::dirichlet_solve(gpot::DirichletProblem{
        &p.graph, p.domain, gpot::VertexField(p.graph), p.boundary_values,
        p.variant});
  } else {
    const gpot::PerronResult result =
        gpot::perron_solve_detailed(p.graph, p.domain, p.boundary_values, tol);
    u = result.u;
    if (!trace_path.empty()) {
      std::ofstream out(trace_path);
      if (!out) {
        gpot::fail(gpot::ErrorCode::parse_error, "cannot write " + trace_path);
      }
      gpot::write_convergence_csv(out, result.pass_deltas);
    }
  }
  print_result(gpot::vertex_map_json(p.graph, u));
  return 0;
}

int cmd_fundamental(const std::string& file, const std::string& pole,
                    const std::string& variant_name) {
  const gpot::Graph g = gpot::load_graph_file(file);
  if (!g.has_vertex(pole)) {
    throw UsageError{"--pole " + pole + " is not a vertex of the graph"};
  }
  const gpot::VertexId x = g.index_of(pole);
  if (x == g.infinity()) {
    throw UsageError{"--pole " + pole + " is the infinity vertex"};
  }
  const auto phi =
      gpot::fundamental_solution(g, x, gpot::parse_variant(variant_name));
  print_result(gpot::vertex_map_json(g, phi.values));
  return 0;
}

int cmd_check_identities(const std::string& file, int trials,
                         std::uint64_t seed) {
  const gpot::Graph g = gpot::load_graph_file(file);
  std::mt19937_64 rng(seed);
  double worst_divergence = 0.0;
  double worst_parts = 0.0;
  double worst_product = 0.0;
  double worst_composition = 0.0;
  for (int t = 0; t < trials; ++t) {
    const gpot::VertexField u = random_vertex_field(g, rng);
    const gpot::EdgeField i = random_edge_field(g, rng);
    const gpot::Domain d = random_domain(g, rng);

    const auto sides = gpot::check_divergence_theorem(g, i, d);
    worst_divergence =
        std::max(worst_divergence, std::abs(sides.lhs - sides.rhs));

    const auto terms = gpot::check_integration_by_parts(g, u, i, d);
    worst_parts = std::max(
        worst_parts,
        std::abs(terms.lhs - (terms.boundary_term - terms.volume_term)));

    const gpot::VertexField left =
        gpot::divergence(g, gpot::pointwise(gpot::edge_average(g, u), i));
    const gpot::VertexField div_i = gpot::divergence(g, i);
    const gpot::VertexField dot =
        gpot::edge_dot(g, i, gpot::gradient(g, u));
    for (gpot::VertexId v = 0; v < g.vertex_count(); ++v) {
      worst_product = std::max(
          worst_product,
          std::abs(left.at(v) - (u.at(v) * div_i.at(v) + dot.at(v))));
    }

    const gpot::VertexField composed = gpot::divergence(g, gpot::gradient(g, u));
    const gpot::VertexField lap =
        gpot::laplacian(g, u, gpot::LaplacianVariant::normalized);
    for (gpot::VertexId v = 0; v < g.vertex_count(); ++v) {
      worst_composition =
          std::max(worst_composition, std::abs(composed.at(v) - lap.at(v)));
    }
  }
  const double tolerance = 1e-10;
  const bool pass = worst_divergence <= tolerance && worst_parts <= tolerance &&
                    worst_product <= tolerance &&
                    worst_composition <= tolerance;
  json report;
  report["divergence_theorem"] = worst_divergence;
  report["integration_by_parts"] = worst_parts;
  report["product_rule"] = worst_product;
  report["composition"] = worst_composition;
  report["trials"] = trials;
  report["seed"] = seed;
  report["tolerance"] = tolerance;
  report["pass"] = pass;
  print_result(report);
  return pass ? 0 : 1;
}

int cmd_check_symmetry(const std::string& file,
                       const std::string& variant_name) {
  const gpot::Graph g = gpot::load_graph_file(file);
  const gpot::LaplacianVariant variant = gpot::parse_variant(variant_name);
  double worst = 0.0;
  int pairs = 0;
  for (gpot::VertexId x = 0; x < g.vertex_count(); ++x) {
    if (x == g.infinity()) continue;
    for (gpot::VertexId v = x + 1; v < g.vertex_count(); ++v) {
      if (v == g.infinity()) continue;
      const auto sides = gpot::symmetry_check(g, x, v, variant);
      worst = std::max(worst, std::abs(sides.lhs - sides.rhs));
      ++pairs;
    }
  }
  const double tolerance = 1e-10;
  const bool pass = worst <= tolerance;
  json report;
  report["variant"] = variant_name;
  report["pairs"] = pairs;
  report["max_discrepancy"] = worst;
  report["tolerance"] = tolerance;
  report["pass"] = pass;
  print_result(report);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete potential theory on finite graphs"};
  app.require_subcommand(1);

  std::string file;
  std::string method;
  std::string variant_name = "normalized";
  std::string pole;
  std::string trace_path;
  double tol = 1e-12;
  int trials = 100;
  std::uint64_t seed = default_seed();

  CLI::App* solve = app.add_subcommand("solve", "solve a problem file");
  solve->require_subcommand(1);
  CLI::App* poisson =
      solve->add_subcommand("poisson", "-laplacian(u) = measure, u = g on the boundary");
  poisson->add_option("file", file, "problem JSON file")->required();
  poisson->add_option("--method", method, "balayage or direct")
      ->default_val("balayage")
      ->check(CLI::IsMember({"balayage", "direct"}));
  poisson->add_option("--tol", tol, "stopping tolerance");
  poisson->add_option("--trace", trace_path, "write the sweep trace CSV here");

  CLI::App* dirichlet =
      solve->add_subcommand("dirichlet", "laplacian(u) = 0, u = g on the boundary");
  dirichlet->add_option("file", file, "problem JSON file")->required();
  dirichlet->add_option("--method", method, "perron or direct")
      ->default_val("perron")
      ->check(CLI::IsMember({"perron", "direct"}));
  dirichlet->add_option("--tol", tol, "stopping tolerance");
  dirichlet->add_option("--trace", trace_path,
                        "write the convergence log CSV here");

  CLI::App* fundamental =
      app.add_subcommand("fundamental", "fundamental solution at a pole");
  fundamental->add_option("file", file, "graph JSON file")->required();
  fundamental->add_option("--pole", pole, "pole vertex name")->required();
  fundamental->add_option("--variant", variant_name, "laplacian variant")
      ->check(CLI::IsMember({"normalized", "unnormalized"}));

  CLI::App* check = app.add_subcommand("check", "verify identities");
  check->require_subcommand(1);
  CLI::App* identities = check->add_subcommand(
      "identities", "calculus identities on random fields");
  identities->add_option("file", file, "graph JSON file")->required();
  identities->add_option("--trials", trials, "number of random trials")
      ->check(CLI::PositiveNumber);
  identities->add_option("--seed", seed, "random seed");
  CLI::App* symmetry =
      check->add_subcommand("symmetry", "fundamental solution symmetry");
  symmetry->add_option("file", file, "graph JSON file")->required();
  symmetry->add_option("--variant", variant_name, "laplacian variant")
      ->check(CLI::IsMember({"normalized", "unnormalized"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);
    }
    emit_error("Usage", e.what());
    return 2;
  }

  try {
    if (poisson->parsed()) {
      return cmd_solve_poisson(file, method, positive_tol(tol), trace_path);
    }
    if (dirichlet->parsed()) {
      return cmd_solve_dirichlet(file, method, positive_tol(tol), trace_path);
    }
    if (fundamental->parsed()) {
      return cmd_fundamental(file, pole, variant_name);
    }
    if (identities->parsed()) {
      return cmd_check_identities(file, trials, seed);
    }
    if (symmetry->parsed()) {
      return cmd_check_symmetry(file, variant_name);
    }
  } catch (const UsageError& e) {
    emit_error("Usage", e.message);
    return 2;
  } catch (const gpot::Error& e) {
    emit_error(gpot::to_string(e.code()), e.detail());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    emit_error("Internal", e.what());
    return 3;
  }
  emit_error("Usage", "no subcommand given");
  return 2;
}

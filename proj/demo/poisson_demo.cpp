// Solves a Poisson problem on a 5x5 grid three ways: direct linear solve,
// balayage sweeping, and a Newtonian-potential superposition, then prints
// the potentials side by side.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <gpot/gpot.hpp>

using namespace gpot;

namespace {

Graph grid(int rows, int cols) {
  GraphDescription d;
  auto label = [cols](int r, int c) {
    return "g" + std::to_string(r) + "_" + std::to_string(c);
  };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) d.vertices.push_back(label(r, c));
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) d.edges.emplace_back(label(r, c), label(r, c + 1));
      if (r + 1 < rows) d.edges.emplace_back(label(r, c), label(r + 1, c));
    }
  }
  d.infinity = label(0, 0);
  return build_graph(d);
}

}  // namespace

int main() {
  const int rows = 5;
  const int cols = 5;
  const Graph g = grid(rows, cols);

  // Interior of the grid; the outer ring is the boundary.
  std::vector<VertexId> inner;
  for (int r = 1; r + 1 < rows; ++r) {
    for (int c = 1; c + 1 < cols; ++c) inner.push_back(r * cols + c);
  }
  const Domain d(g, inner);

  // Unit charge at the center.
  const VertexId center = (rows / 2) * cols + cols / 2;
  const Measure mu = dirac(g, center);
  const LaplacianVariant variant = LaplacianVariant::normalized;

  const VertexField direct = dirichlet_solve(DirichletProblem{
      &g, d, VertexField(mu.values()), VertexField(g), variant});

  const SweepState swept = run_balayage(g, d, mu, variant,
                                        Schedule::round_robin(), 1e-12);
  const SweepReport report = sweep_report(swept);

  std::printf("balayage finished in %lld sweeps;"
              " mass parked on the boundary: %.6f\n\n",
              report.steps, report.boundary_mass);
  std::printf("%-8s %14s %14s\n", "vertex", "direct", "balayage");
  for (VertexId v : d.members()) {
    std::printf("%-8s %14.10f %14.10f\n", g.name(v).c_str(), direct.at(v),
                swept.u.at(v));
  }

  // The same potential once more, assembled from fundamental solutions.
  FundamentalSolutionCache cache(g);
  const VertexField newtonian = newtonian_potential(g, mu, variant, &cache);
  const VertexField harmonic = perron_solve(g, d, newtonian);
  double worst = 0.0;
  for (VertexId v : d.members()) {
    const double via_potential = newtonian.at(v) - harmonic.at(v);
    worst = std::max(worst, std::abs(via_potential - direct.at(v)));
  }
  std::printf("\nnewtonian-potential route agrees to %.3g\n", worst);
  return 0;
}

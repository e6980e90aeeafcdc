// Walks the edge-calculus identities on a small wheel graph: divergence
// theorem, integration by parts, and the symmetry of fundamental solutions.

#include <cstdio>
#include <random>
#include <string>

#include <gpot/gpot.hpp>

using namespace gpot;

int main() {
  GraphDescription desc;
  desc.vertices = {"hub", "r1", "r2", "r3", "r4", "r5"};
  desc.edges = {{"hub", "r1"}, {"hub", "r2"}, {"hub", "r3"}, {"hub", "r4"},
                {"hub", "r5"}, {"r1", "r2"}, {"r2", "r3"}, {"r3", "r4"},
                {"r4", "r5"}, {"r5", "r1"}};
  desc.infinity = "r5";
  const Graph g = build_graph(desc);

  std::mt19937_64 rng(7);
  VertexField u(g);
  EdgeField current(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    u.at(v) = static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    current.at(e) = static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
  }

  const Domain d = Domain::of_names(g, {"hub", "r1", "r2"});
  const auto sides = check_divergence_theorem(g, current, d);
  std::printf("divergence theorem:    volume %+.15f\n", sides.lhs);
  std::printf("                     boundary %+.15f\n", sides.rhs);

  const auto terms = check_integration_by_parts(g, u, current, d);
  std::printf("integration by parts:     lhs %+.15f\n", terms.lhs);
  std::printf("        boundary - volume     %+.15f\n",
              terms.boundary_term - terms.volume_term);

  const VertexField composed = divergence(g, gradient(g, u));
  const VertexField lap = laplacian(g, u, LaplacianVariant::normalized);
  bool identical = true;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    identical = identical && composed.at(v) == lap.at(v);
  }
  std::printf("div(grad u) == laplacian(u): %s\n",
              identical ? "bitwise" : "NO");

  const auto sym = symmetry_check(g, g.index_of("hub"), g.index_of("r2"),
                                  LaplacianVariant::unnormalized);
  std::printf("symmetry, plain:   %.15f vs %.15f\n", sym.lhs, sym.rhs);
  const auto symn = symmetry_check(g, g.index_of("hub"), g.index_of("r2"),
                                   LaplacianVariant::normalized);
  std::printf("symmetry, weighted: %.15f vs %.15f\n", symn.lhs, symn.rhs);
  return 0;
}

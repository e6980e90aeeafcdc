#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include <gpot/io.hpp>

#include "support/errors.hpp"

using namespace gpot;

namespace {

const char* kProblemText = R"({
  "graph": {
    "vertices": ["v1", "v2", "v3"],
    "edges": [["v1", "v2"], ["v2", "v3"]],
    "infinity": "v3"
  },
  "domain": ["v1", "v2"],
  "measure": {"v1": 1.0},
  "boundary_values": {"v3": 0.25},
  "variant": "unnormalized"
})";

}  // namespace

TEST_CASE("numbers serialize as the shortest round-trip decimal") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-1.25) == "-1.25");
  CHECK(format_number(2.0) == "2");

  std::mt19937_64 rng(701);
  for (int t = 0; t < 200; ++t) {
    const double x =
        (static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0) *
        std::pow(10.0, static_cast<double>(rng() % 21) - 10.0);
    const std::string text = format_number(x);
    CHECK(std::strtod(text.c_str(), nullptr) == x);
    CHECK(text.size() <= 25);  // sign + 17 digits + point + exponent
  }
}

TEST_CASE("malformed JSON raises ParseError") {
  CHECK(gen::error_code_of([] { parse_json_text("{oops"); }) ==
        ErrorCode::parse_error);
  CHECK(gen::error_code_of([] {
          load_json_file("/nonexistent/really/not/here.json");
        }) == ErrorCode::parse_error);
}

TEST_CASE("graph documents parse into descriptions") {
  const json doc = parse_json_text(R"({
    "vertices": ["a", "b", "c"],
    "edges": [["a", "b"], ["b", "c"], ["c", "a"]],
    "infinity": "c"
  })");
  const GraphDescription d = parse_graph_description(doc);
  REQUIRE(d.vertices.size() == 3);
  CHECK(d.vertices[0] == "a");
  REQUIRE(d.edges.size() == 3);
  CHECK(d.edges[1].first == "b");
  CHECK(d.edges[1].second == "c");
  CHECK(d.infinity == "c");

  const Graph g = build_graph(d);
  CHECK(g.vertex_count() == 3);
  CHECK(g.degree(0) == 2);
}

TEST_CASE("graph documents with bad shapes raise ParseError") {
  for (const char* text : {
           R"({"edges": [], "infinity": "a"})",
           R"({"vertices": "a", "edges": [], "infinity": "a"})",
           R"({"vertices": ["a", 3], "edges": [], "infinity": "a"})",
           R"({"vertices": ["a", "b"], "edges": [["a"]], "infinity": "a"})",
           R"({"vertices": ["a", "b"], "edges": [["a", 2]], "infinity": "a"})",
           R"({"vertices": ["a", "b"], "edges": [], "infinity": 7})",
           R"([1, 2, 3])",
       }) {
    CHECK(gen::error_code_of([&] {
            parse_graph_description(parse_json_text(text));
          }) == ErrorCode::parse_error);
  }
}

TEST_CASE("variant names parse") {
  CHECK(parse_variant("normalized") == LaplacianVariant::normalized);
  CHECK(parse_variant("unnormalized") == LaplacianVariant::unnormalized);
  CHECK(gen::error_code_of([] { parse_variant("fancy"); }) ==
        ErrorCode::parse_error);
}

TEST_CASE("problem documents parse with defaults") {
  const ProblemFile p = parse_problem_file(parse_json_text(kProblemText));
  CHECK(p.domain == std::vector<std::string>{"v1", "v2"});
  REQUIRE(p.measure.size() == 1);
  CHECK(p.measure[0] == std::pair<std::string, double>{"v1", 1.0});
  REQUIRE(p.boundary_values.size() == 1);
  CHECK(p.boundary_values[0].second == 0.25);
  CHECK(p.variant == LaplacianVariant::unnormalized);

  const ProblemFile bare = parse_problem_file(parse_json_text(R"({
    "graph": {"vertices": ["a", "b"], "edges": [["a", "b"]], "infinity": "b"},
    "domain": ["a"],
    "measure": {}
  })"));
  CHECK(bare.boundary_values.empty());
  CHECK(bare.variant == LaplacianVariant::normalized);

  for (const char* text : {
           R"({"domain": [], "measure": {}})",
           R"({"graph": {"vertices": ["a","b"], "edges": [["a","b"]],
               "infinity": "b"}, "domain": "a", "measure": {}})",
           R"({"graph": {"vertices": ["a","b"], "edges": [["a","b"]],
               "infinity": "b"}, "domain": ["a"], "measure": []})",
           R"({"graph": {"vertices": ["a","b"], "edges": [["a","b"]],
               "infinity": "b"}, "domain": ["a"], "measure": {"a": "x"}})",
           R"({"graph": {"vertices": ["a","b"], "edges": [["a","b"]],
               "infinity": "b"}, "domain": ["a"], "measure": {},
               "boundary_values": 3})",
           R"({"graph": {"vertices": ["a","b"], "edges": [["a","b"]],
               "infinity": "b"}, "domain": ["a"], "measure": {},
               "variant": 1})",
       }) {
    CHECK(gen::error_code_of([&] {
            parse_problem_file(parse_json_text(text));
          }) == ErrorCode::parse_error);
  }
}

TEST_CASE("problems resolve against their graph") {
  const LoadedProblem p = load_problem(
      parse_problem_file(parse_json_text(kProblemText)));
  CHECK(p.graph.vertex_count() == 3);
  CHECK(p.domain.size() == 2);
  CHECK(p.mu.at(0) == 1.0);
  CHECK(p.boundary_values.at(2) == 0.25);
  CHECK(p.variant == LaplacianVariant::unnormalized);
}

TEST_CASE("problem content errors carry the matching codes") {
  auto with = [](const std::string& patch) {
    json doc = parse_json_text(kProblemText);
    const json edits = parse_json_text(patch);
    for (const auto& [key, value] : edits.items()) doc[key] = value;
    return load_problem(parse_problem_file(doc));
  };

  CHECK(gen::error_code_of([&] { with(R"({"domain": ["v1", "ghost"]})"); }) ==
        ErrorCode::unknown_vertex);
  CHECK(gen::error_code_of([&] { with(R"({"measure": {"v3": 1.0}})"); }) ==
        ErrorCode::support_outside_domain);
  CHECK(gen::error_code_of([&] { with(R"({"measure": {"v1": -1.0}})"); }) ==
        ErrorCode::negative_mass);
  CHECK(gen::error_code_of([&] {
          with(R"({"boundary_values": {"v1": 1.0}})");
        }) == ErrorCode::inconsistent_data);
  CHECK(gen::error_code_of([&] {
          with(R"({"boundary_values": {"ghost": 1.0}})");
        }) == ErrorCode::unknown_vertex);
}

TEST_CASE("files load from disk") {
  const auto path = std::filesystem::temp_directory_path() / "gpot_io_test.json";
  {
    std::ofstream out(path);
    out << kProblemText;
  }
  const LoadedProblem p = load_problem_file(path.string());
  CHECK(p.graph.vertex_count() == 3);
  std::filesystem::remove(path);
}

TEST_CASE("vertex maps serialize with sorted keys") {
  const Graph g = build_graph({{"zeta", "alpha", "mid"},
                               {{"zeta", "alpha"}, {"alpha", "mid"}},
                               "mid"});
  const VertexField u(std::vector<double>{1.0, 2.0, 0.5});
  const json out = vertex_map_json(g, u);
  CHECK(out.dump() == R"({"alpha":2.0,"mid":0.5,"zeta":1.0})");

  const VertexField back = parse_vertex_map(g, out);
  CHECK(back.at(0) == 1.0);
  CHECK(back.at(1) == 2.0);
  CHECK(back.at(2) == 0.5);

  CHECK(gen::error_code_of([&] {
          parse_vertex_map(g, parse_json_text(R"({"ghost": 1.0})"));
        }) == ErrorCode::unknown_vertex);
  CHECK(gen::error_code_of([&] {
          parse_vertex_map(g, parse_json_text(R"({"alpha": "x"})"));
        }) == ErrorCode::parse_error);
  CHECK(gen::error_code_of([&] {
          parse_vertex_map(g, parse_json_text(R"([1])"));
        }) == ErrorCode::parse_error);
}

TEST_CASE("edge maps key by oriented edge") {
  const Graph g = build_graph({{"a", "b", "c"},
                               {{"a", "b"}, {"c", "b"}},
                               "c"});
  const EdgeField i(std::vector<double>{0.5, -2.0});
  const json out = edge_map_json(g, i);
  CHECK(out["a→b"] == 0.5);
  CHECK(out["c→b"] == -2.0);
  CHECK(out.size() == 2);
}

TEST_CASE("sweep traces serialize to the fixed CSV schema") {
  const Graph g = build_graph({{"v1", "v2", "v3"},
                               {{"v1", "v2"}, {"v2", "v3"}},
                               "v3"});
  const Domain d = Domain::of_names(g, {"v1", "v2"});
  SweepState s = init_sweep(g, d, dirac(g, 0), LaplacianVariant::normalized,
                            Schedule::round_robin());
  sweep_step(s, 0);
  sweep_step(s, 1);

  std::ostringstream out;
  write_sweep_trace_csv(out, g, s.trace);
  CHECK(out.str() ==
        "step,swept_vertex,mass_before,interior_mass_after,"
        "boundary_mass_after,max_residual\n"
        "1,v1,1,1,0,0\n"
        "2,v2,0.5,0.5,0.5,0\n");
}

TEST_CASE("convergence logs serialize one row per pass") {
  std::ostringstream out;
  write_convergence_csv(out, {0.5, 0.125});
  CHECK(out.str() == "pass,last_delta\n1,0.5\n2,0.125\n");
}

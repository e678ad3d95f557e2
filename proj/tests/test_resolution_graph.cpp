#include <catch2/catch_amalgamated.hpp>

#include <splice/resolution_graph.hpp>

#include <sstream>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace splice;

TEST_CASE("parsing a well-formed file") {
  const ResolutionGraph g = load_data("main_example.sg");
  REQUIRE(g.vertex_count() == 7);
  CHECK(g.edges().size() == 6);
  CHECK(g.vertex(idx(g, "c")).weight == -3);
  CHECK(g.classify(idx(g, "v1")) == VertexClass::node);
  CHECK(g.classify(idx(g, "v2")) == VertexClass::node);
  CHECK(g.classify(idx(g, "c")) == VertexClass::string_interior);
  CHECK(g.classify(idx(g, "w1")) == VertexClass::end);
  CHECK(g.node_indices() == std::vector<std::size_t>{2, 4});
  CHECK(g.end_indices() == std::vector<std::size_t>{0, 1, 5, 6});
  CHECK(g.valence(idx(g, "v2")) == 3);
  CHECK(g.connected());
}

TEST_CASE("parser accepts comments, blank lines, and CRLF") {
  const std::string text =
      "# leading comment\r\n"
      "splicegraph 1\r\n"
      "\r\n"
      "vertex a -2\r\n"
      "vertex b -2\r\n"
      "# interior comment\r\n"
      "edge a b\r\n";
  const ResolutionGraph g = parse_graph(text);
  CHECK(g.vertex_count() == 2);
  CHECK(g.edges().size() == 1);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_graph(text);
    } catch (const parse_error& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("nonsense\n") == 1);
  CHECK(line_of("splicegraph 2\nvertex a -1\n") == 1);
  CHECK(line_of("splicegraph 1\nvertex a -1\nvertex a -2\n") == 3);
  CHECK(line_of("splicegraph 1\nvertex a -1\nedge a b\n") == 3);
  CHECK(line_of("splicegraph 1\nvertex a -1\nedge a a\n") == 3);
  CHECK(line_of("splicegraph 1\nvertex a -1\nvertex b -1\nedge a b\nedge b "
                "a\n") == 5);
  CHECK(line_of("splicegraph 1\nvertex a x2\n") == 2);
  CHECK(line_of("splicegraph 1\nvertex a\n") == 2);
  CHECK(line_of("splicegraph 1\nwidget a -1\n") == 2);
  CHECK(line_of("splicegraph 1\nvertex a -1 extra\n") == 2);
  // Closing a cycle is rejected on the edge line that closes it.
  CHECK(line_of("splicegraph 1\nvertex a -1\nvertex b -1\nvertex c -1\n"
                "edge a b\nedge b c\nedge c a\n") == 7);
  CHECK(line_of("") == 1);
}

TEST_CASE("serialization round trip is stable") {
  const ResolutionGraph g = load_data("counterexample2.sg");
  const std::string once = serialize_graph(g);
  const ResolutionGraph again = parse_graph(once);
  CHECK(again == g);
  CHECK(serialize_graph(again) == once);
}

TEST_CASE("builder rejects malformed graphs") {
  using VP = std::vector<GraphVertex>;
  using EP = std::vector<std::pair<std::string, std::string>>;
  CHECK_THROWS_AS(
      ResolutionGraph::build(VP{{"a", -1}, {"a", -2}}, EP{}),
      argument_error);
  CHECK_THROWS_AS(
      ResolutionGraph::build(VP{{"a", -1}}, EP{{"a", "zz"}}),
      argument_error);
  CHECK_THROWS_AS(
      ResolutionGraph::build(VP{{"a", -1}}, EP{{"a", "a"}}),
      argument_error);
  CHECK_THROWS_AS(
      ResolutionGraph::build(VP{{"bad id", -1}}, EP{}),
      argument_error);
  CHECK_THROWS_AS(
      ResolutionGraph::build(
          VP{{"a", -1}, {"b", -1}, {"c", -1}},
          EP{{"a", "b"}, {"b", "c"}, {"c", "a"}}),
      argument_error);
}

TEST_CASE("validation distinguishes forest, string, and tree") {
  const ResolutionGraph tree = load_data("e8.sg");
  CHECK(validate(tree).ok());

  const ResolutionGraph forest =
      ResolutionGraph::build({{"a", -2}, {"b", -2}}, {});
  const ValidationReport v = validate(forest);
  CHECK_FALSE(v.connected);
  CHECK_FALSE(v.tree);
  CHECK_FALSE(v.ok());
  CHECK_THROWS_AS(require_valid(forest), validation_error);

  const ResolutionGraph indefinite =
      ResolutionGraph::build({{"a", 0}}, {});
  CHECK_FALSE(validate(indefinite).negative_definite);

  const ResolutionGraph single = load_data("single.sg");
  CHECK(validate(single).ok());
  CHECK(single.classify(0) == VertexClass::isolated);
  CHECK(single.end_indices().empty());
}

TEST_CASE("intersection matrix layout") {
  const ResolutionGraph g = load_data("main_example.sg");
  const IntMatrix a = intersection_matrix(g);
  REQUIRE(a.rows() == 7);
  CHECK(a.at(3, 3) == -3);
  CHECK(a.at(0, 0) == -2);
  CHECK(a.at(2, 3) == 1);  // v1 -- c
  CHECK(a.at(3, 2) == 1);
  CHECK(a.at(0, 1) == 0);  // w1, w2 not adjacent
  CHECK(a.is_symmetric());
  CHECK(is_negative_definite(a));
}

TEST_CASE("determinants of the corpus graphs") {
  const std::vector<std::pair<std::string, long long>> expect = {
      {"main_example.sg", 16}, {"counterexample1.sg", 3},
      {"counterexample2.sg", 90}, {"e8.sg", 1},
      {"d4.sg", 4}, {"d5.sg", 4}, {"d9.sg", 4},
      {"string23.sg", 8}, {"single.sg", 2},
  };
  for (const auto& [name, value] : expect) {
    INFO(name);
    const ResolutionGraph g = load_data(name);
    const Int d = graph_determinant(g);
    CHECK(d == value);
    CHECK(Rat(d) == oracle::leaf_elimination_determinant(g));
    CHECK(d == oracle::cofactor_determinant(
                   intersection_matrix(g).negated()));
  }
}

TEST_CASE("cokernel invariants of the corpus graphs") {
  CHECK(discriminant_invariants(load_data("main_example.sg")) ==
        std::vector<Int>{4, 4});
  CHECK(discriminant_invariants(load_data("e8.sg")).empty());
  CHECK(discriminant_invariants(load_data("d4.sg")) ==
        std::vector<Int>{2, 2});
  CHECK(discriminant_invariants(load_data("string23.sg")) ==
        std::vector<Int>{8});
  CHECK(discriminant_invariants(load_data("single.sg")) ==
        std::vector<Int>{2});
}

TEST_CASE("neighbors are sorted and definiteness is cached") {
  const ResolutionGraph g = load_data("e8.sg");
  const auto& nb = g.neighbors(idx(g, "c"));
  CHECK(std::is_sorted(nb.begin(), nb.end()));
  CHECK(nb.size() == 3);
  CHECK(g.negative_definite());
  CHECK(g.negative_definite());

  ResolutionGraph strip =
      ResolutionGraph::build({{"a", -1}, {"b", -1}}, {{"a", "b"}});
  CHECK_FALSE(strip.negative_definite());  // det 0
}

TEST_CASE("induced subgraph matrices") {
  const ResolutionGraph g = load_data("main_example.sg");
  const std::vector<std::size_t> sub = {idx(g, "v2"), idx(g, "w3"),
                                        idx(g, "w4")};
  const IntMatrix a = intersection_matrix(g, sub);
  REQUIRE(a.rows() == 3);
  CHECK(a.at(0, 1) == 1);
  CHECK(a.at(1, 2) == 0);
  CHECK(oracle::cofactor_determinant(a.negated()) == 4);
}

#include <catch2/catch_amalgamated.hpp>

#include <splice/splice_diagram.hpp>

#include "helpers.hpp"

using namespace splice;

namespace {

std::size_t edge_between(const SpliceDiagram& d, const std::string& a,
                         const std::string& b) {
  const std::size_t ia = idx(d, a), ib = idx(d, b);
  for (std::size_t e = 0; e < d.edges().size(); ++e) {
    const auto& info = d.edge(e);
    if ((info.a == ia && info.b == ib) || (info.a == ib && info.b == ia))
      return e;
  }
  throw std::runtime_error("no such edge: " + a + " -- " + b);
}

}  // namespace

TEST_CASE("graphs without nodes are rejected by the collapse") {
  CHECK_FALSE(has_nodes(load_data("string23.sg")));
  CHECK_FALSE(has_nodes(load_data("single.sg")));
  CHECK(has_nodes(load_data("d4.sg")));
  CHECK_THROWS_AS(splice_from_resolution(load_data("string23.sg")),
                  no_nodes_error);
  CHECK_THROWS_AS(splice_from_resolution(load_data("single.sg")),
                  no_nodes_error);
}

TEST_CASE("cutoff determinants") {
  const ResolutionGraph g = load_data("main_example.sg");
  CHECK(cutoff_determinant(g, idx(g, "v1"), idx(g, "w1")) == 2);
  // Cutting at v1 toward c keeps the c, v2, w3, w4 side.
  CHECK(cutoff_determinant(g, idx(g, "v1"), idx(g, "c")) == 8);
  CHECK(cutoff_determinant(g, idx(g, "v2"), idx(g, "c")) == 8);
  CHECK(cutoff_determinant(g, idx(g, "v2"), idx(g, "w3")) == 2);
}

TEST_CASE("collapse of the two-node example") {
  const ResolutionGraph g = load_data("main_example.sg");
  const SpliceDiagram d = splice_from_resolution(g);

  REQUIRE(d.vertex_count() == 6);  // the valence-2 vertex c is suppressed
  CHECK(d.nodes().size() == 2);
  CHECK(d.ends().size() == 4);

  const std::size_t v1 = idx(d, "v1"), v2 = idx(d, "v2");
  CHECK(d.vertex(v1).is_node);
  CHECK_FALSE(d.vertex(idx(d, "w1")).is_node);
  CHECK_FALSE(d.index_of("c").has_value());

  // End order defines the variable order: document order of the leaves.
  std::vector<std::string> end_ids;
  for (std::size_t w : d.ends()) end_ids.push_back(d.vertex(w).id);
  CHECK(end_ids == std::vector<std::string>{"w1", "w2", "w3", "w4"});

  REQUIRE(d.edges().size() == 5);
  const std::size_t conn = edge_between(d, "v1", "v2");
  CHECK(d.weight_at(conn, v1) == 8);
  CHECK(d.weight_at(conn, v2) == 8);
  CHECK(d.weight_at(edge_between(d, "v1", "w1"), v1) == 2);
  CHECK(d.weight_at(edge_between(d, "v1", "w2"), v1) == 2);
  CHECK(d.weight_at(edge_between(d, "v2", "w3"), v2) == 2);
  CHECK(d.weight_at(edge_between(d, "v2", "w4"), v2) == 2);

  // No weight on the end side of a leaf edge.
  const auto& leaf_edge = d.edge(edge_between(d, "v1", "w1"));
  const std::size_t w1 = idx(d, "w1");
  CHECK_FALSE(leaf_edge.weight_at(w1).has_value());
  CHECK_THROWS_AS(d.weight_at(edge_between(d, "v1", "w1"), w1),
                  argument_error);

  // The collapsed edge remembers the suppressed chain.
  const auto& cedge = d.edge(conn);
  CHECK(cedge.gamma_path.size() == 3);  // v1, c, v2 in graph indices

  CHECK(node_weight(d, v1) == 32);
  CHECK(node_weight(d, "v2") == 32);
}

TEST_CASE("collapse of the counterexamples") {
  const SpliceDiagram d1 = splice_from_resolution(load_data("counterexample1.sg"));
  const std::size_t v1 = idx(d1, "v1"), v2 = idx(d1, "v2");
  const std::size_t conn = edge_between(d1, "v1", "v2");
  CHECK(d1.weight_at(conn, v1) == 1);
  CHECK(d1.weight_at(conn, v2) == 57);
  CHECK(d1.weight_at(edge_between(d1, "v1", "w1"), v1) == 3);
  CHECK(d1.weight_at(edge_between(d1, "v1", "w2"), v1) == 3);
  CHECK(d1.weight_at(edge_between(d1, "v2", "w3"), v2) == 2);
  CHECK(d1.weight_at(edge_between(d1, "v2", "w4"), v2) == 3);

  const SpliceDiagram d2 = splice_from_resolution(load_data("counterexample2.sg"));
  const std::size_t u1 = idx(d2, "v1"), u2 = idx(d2, "v2");
  const std::size_t conn2 = edge_between(d2, "v1", "v2");
  CHECK(d2.weight_at(conn2, u1) == 3);
  CHECK(d2.weight_at(conn2, u2) == 57);
  CHECK(d2.weight_at(edge_between(d2, "v2", "w3"), u2) == 3);
  CHECK(node_weight(d2, u1) == 27);
  CHECK(node_weight(d2, u2) == 513);
}

TEST_CASE("star collapse keeps arm determinants") {
  const SpliceDiagram e8 = splice_from_resolution(load_data("e8.sg"));
  REQUIRE(e8.nodes().size() == 1);
  const std::size_t c = e8.nodes()[0];
  REQUIRE(e8.ends().size() == 3);
  std::vector<Int> arm_weights;
  for (std::size_t e : e8.incident_edges(c))
    arm_weights.push_back(e8.weight_at(e, c));
  std::sort(arm_weights.begin(), arm_weights.end());
  CHECK(arm_weights == std::vector<Int>{2, 3, 5});
}

TEST_CASE("linking table of the two-node example") {
  const SpliceDiagram d = splice_from_resolution(load_data("main_example.sg"));
  const LinkingTable lt = linking_table(d);
  const std::size_t v1 = idx(d, "v1"), v2 = idx(d, "v2");
  const std::size_t w1 = idx(d, "w1"), w3 = idx(d, "w3");

  CHECK(lt.ell_at(v1, w1) == 16);
  CHECK(lt.ell_prime_at(v1, w1) == 1);
  CHECK(lt.ell_at(v1, w3) == 8);
  CHECK(lt.ell_prime_at(v1, w3) == 2);
  CHECK(lt.ell_at(v2, w1) == 8);
  CHECK(lt.ell_at(v2, w3) == 16);
  CHECK(lt.node_product(v1) == 32);
  CHECK(lt.node_product(v2) == 32);

  CHECK_THROWS_AS(lt.ell_at(w1, v1), argument_error);
  CHECK_THROWS_AS(lt.ell_at(v1, v2), argument_error);
}

TEST_CASE("linking identity across the corpus") {
  for (const std::string name :
       {"main_example.sg", "counterexample1.sg", "counterexample2.sg",
        "e8.sg", "d4.sg", "d5.sg", "d9.sg"}) {
    INFO(name);
    const SpliceDiagram d = splice_from_resolution(load_data(name));
    const LinkingTable lt = linking_table(d);
    for (std::size_t v : d.nodes()) {
      for (std::size_t w : d.ends()) {
        const DiagramPath p = diagram_path(d, v, w);
        REQUIRE(!p.edges.empty());
        const Int d_ve = d.weight_at(p.edges.front(), v);
        CHECK(lt.ell_at(v, w) * d_ve ==
              lt.ell_prime_at(v, w) * lt.node_product(v));
      }
    }
  }
}

TEST_CASE("paths and the ends beyond an edge") {
  const SpliceDiagram d = splice_from_resolution(load_data("main_example.sg"));
  const std::size_t v1 = idx(d, "v1"), v2 = idx(d, "v2");
  const std::size_t w3 = idx(d, "w3");

  const DiagramPath p = diagram_path(d, v1, w3);
  REQUIRE(p.vertices.size() == 3);
  CHECK(p.vertices.front() == v1);
  CHECK(p.vertices[1] == v2);
  CHECK(p.vertices.back() == w3);
  CHECK(p.edges.size() == 2);

  const std::size_t conn = edge_between(d, "v1", "v2");
  const auto beyond = ends_beyond(d, v1, conn);
  std::vector<std::string> ids;
  for (std::size_t w : beyond) ids.push_back(d.vertex(w).id);
  CHECK(ids == std::vector<std::string>{"w3", "w4"});

  const auto near = ends_beyond(d, v1, edge_between(d, "v1", "w1"));
  REQUIRE(near.size() == 1);
  CHECK(d.vertex(near[0]).id == "w1");
}

TEST_CASE("diagram serialization") {
  const SpliceDiagram d = splice_from_resolution(load_data("main_example.sg"));
  CHECK(serialize_diagram(d) ==
        "node v1\n"
        "node v2\n"
        "end w1\n"
        "end w2\n"
        "end w3\n"
        "end w4\n"
        "edge v1 v2 8 8\n"
        "edge v1 w1 2\n"
        "edge v1 w2 2\n"
        "edge v2 w3 2\n"
        "edge v2 w4 2\n");
}

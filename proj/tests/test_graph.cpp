#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "support.hpp"
#include "ueds/errors.hpp"
#include "ueds/graph.hpp"

using namespace ueds;
using namespace ueds::testing;

namespace {

EdgeSet edges_of(const Graph& g, std::initializer_list<std::pair<int, int>> one_based_pairs) {
  EdgeSet m(g.num_edges());
  for (auto [u, v] : one_based_pairs) m.insert(*g.find_edge(u - 1, v - 1));
  return m;
}

int parse_error_line(const std::string& text) {
  try {
    parse_graph(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("parse small graphs") {
  const Graph a = parse_graph("p gr 2 1\n1 2\n");
  CHECK(a.num_vertices() == 2);
  CHECK(a.num_edges() == 1);
  CHECK(a == k2());

  CHECK(parse_graph("c a path\np gr 4 3\n1 2\n2 3\n\n3 4\n") == p4());
  CHECK(parse_graph("p gr 3 3\n1 2\n2 3\n1 3\n") == k3());
  CHECK(parse_graph("p gr 3 0\n").num_edges() == 0);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("p gr x 1\n1 2\n") == 1);
  CHECK(parse_error_line("1 2\n") == 1);
  CHECK(parse_error_line("p gr 3 2\n1 2\n1 4\n") == 3);
  CHECK(parse_error_line("p gr 3 2\n1 2\n2 2\n") == 3);
  CHECK(parse_error_line("c\np gr 3 2\n1 2\n2 1\n") == 4);
  CHECK(parse_error_line("p gr 3 2\n1 2\n") > 0);
  CHECK(parse_error_line("p gr 3 1\n1 2\n2 3\n") == 3);
  CHECK(parse_error_line("p gr 3 1\n1 2 3\n") == 2);
}

TEST_CASE("write then parse round-trips") {
  const Graph g = colored_example();
  CHECK(parse_graph(to_gr_string(g)) == g);
}

TEST_CASE("graph rejects loops and parallel edges") {
  Graph g(3);
  g.add_edge(0, 1);
  CHECK_THROWS_AS(g.add_edge(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 3), std::invalid_argument);
}

TEST_CASE("adjacency is symmetric and edge ids are stable") {
  const Graph g = colored_example();
  int incidences = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    for (const Incidence& inc : g.incident(v)) {
      ++incidences;
      CHECK(g.edge(inc.edge).touches(v));
      CHECK(g.edge(inc.edge).other(v) == inc.neighbor);
    }
  CHECK(incidences == 2 * g.num_edges());
  CHECK(g.find_edge(0, 3) == EdgeId{0});
}

TEST_CASE("edge sets") {
  EdgeSet s(70, {0, 5, 69});
  CHECK(s.size() == 3);
  CHECK(s.contains(69));
  s.erase(5);
  s.erase(5);
  CHECK(s.size() == 2);
  CHECK(s.members() == std::vector<EdgeId>{0, 69});
  CHECK(EdgeSet(70, {0}).is_subset_of(s));
  CHECK_FALSE(EdgeSet(70, {1}).is_subset_of(s));
  CHECK_THROWS_AS(s.insert(70), std::out_of_range);
  CHECK(EdgeSet::from_mask(4, 0b1010).members() == std::vector<EdgeId>{1, 3});
}

TEST_CASE("edge domination") {
  const Graph p = p4();
  CHECK(is_edge_dominating(p, edges_of(p, {{2, 3}})));
  CHECK_FALSE(is_edge_dominating(p, edges_of(p, {{1, 2}})));
  const Graph c = c4();
  CHECK(is_edge_dominating(c, edges_of(c, {{1, 2}, {3, 4}})));
}

TEST_CASE("domination count") {
  const Graph p = p4();
  const EdgeSet m = edges_of(p, {{1, 2}, {2, 3}});
  CHECK(domination_count(p, m, *p.find_edge(2, 3)) == 1);  // edge 34
  CHECK(domination_count(p, m, *p.find_edge(0, 1)) == 2);  // edge 12
  for (EdgeId e = 0; e < 3; ++e) CHECK(domination_count(p, EdgeSet(3), e) == 0);
  CHECK_THROWS(domination_count(p, m, 3));
}

TEST_CASE("minimal edge dominating sets") {
  const Graph p = p4();
  CHECK(is_minimal_eds(p, edges_of(p, {{1, 2}, {3, 4}})));
  CHECK_FALSE(is_minimal_eds(p, edges_of(p, {{1, 2}, {2, 3}})));
  const Graph t = k3();
  CHECK_FALSE(is_minimal_eds(t, edges_of(t, {{1, 2}, {2, 3}})));
  CHECK(is_minimal_eds(t, edges_of(t, {{1, 2}})));
}

TEST_CASE("greedy maximal matching") {
  const Graph p = p4();
  CHECK(greedy_maximal_matching(p) == edges_of(p, {{1, 2}, {3, 4}}));
  const std::vector<EdgeId> order{1, 0, 2};
  CHECK(greedy_maximal_matching(p, order) == edges_of(p, {{2, 3}}));
  CHECK(greedy_maximal_matching(k13()).size() == 1);
  const std::vector<EdgeId> reversed{2, 1, 0};
  CHECK(greedy_maximal_matching(k13(), reversed).size() == 1);
  CHECK(greedy_maximal_matching(Graph(3)).empty());
  const std::vector<EdgeId> bad{0, 0, 1};
  CHECK_THROWS(greedy_maximal_matching(p, bad));
}

TEST_CASE("star decomposition") {
  const Graph p = p4();
  const StarStructure two = star_decomposition(p, edges_of(p, {{1, 2}, {3, 4}}));
  REQUIRE(two.stars.size() == 2);
  CHECK(two.stars[0].symmetric);
  CHECK(two.stars[1].symmetric);
  CHECK(two.isolated.empty());

  const Graph s = k13();
  const StarStructure one = star_decomposition(s, edges_of(s, {{1, 2}, {1, 3}, {1, 4}}));
  REQUIRE(one.stars.size() == 1);
  CHECK(one.stars[0].center == 0);
  CHECK(one.stars[0].leaves == std::vector<Vertex>{1, 2, 3});
  CHECK_FALSE(one.stars[0].symmetric);

  CHECK_THROWS_AS(star_decomposition(p, edges_of(p, {{1, 2}, {2, 3}, {3, 4}})), NotStarForest);
}

TEST_CASE("vertex cover from matching") {
  const Graph p = p4();
  CHECK(vertex_cover_from_matching(p, edges_of(p, {{1, 2}, {3, 4}})) == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(vertex_cover_from_matching(k2(), EdgeSet(1, {0})) == std::vector<Vertex>{0, 1});
  const Graph s = k13();
  CHECK(vertex_cover_from_matching(s, edges_of(s, {{1, 2}})) == std::vector<Vertex>{0, 1});
  CHECK_THROWS_AS(vertex_cover_from_matching(p, edges_of(p, {{1, 2}})), CoverViolation);
}

TEST_CASE("certificate violations") {
  const Graph p = p4();
  CHECK(certificate_violations(p, edges_of(p, {{1, 2}, {3, 4}})).empty());
  CHECK_FALSE(certificate_violations(p, edges_of(p, {{1, 2}, {2, 3}})).empty());
  CHECK_FALSE(certificate_violations(p, edges_of(p, {{1, 2}})).empty());
  // A star on all three edges of K_{1,3}: no leaf has an untouched neighbour.
  const Graph s = k13();
  CHECK_FALSE(certificate_violations(s, edges_of(s, {{1, 2}, {1, 3}, {1, 4}})).empty());
}

TEST_CASE("property: domination, minimality and matchings agree with the definitions") {
  SplitMix64 rng(7);
  for (int round = 0; round < 300; ++round) {
    const Graph g = random_gnp(rng, 8);
    const int m = g.num_edges();
    if (m > 16) continue;
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint64_t mask = m == 0 ? 0 : rng.next() & ((std::uint64_t{1} << m) - 1);
      const EdgeSet s = EdgeSet::from_mask(m, mask);
      CHECK(is_edge_dominating(g, s) == naive_dominates(g, mask));
      CHECK(is_minimal_eds(g, s) == naive_minimal(g, mask));
      bool all_dominated = true;
      for (EdgeId e = 0; e < m; ++e) all_dominated = all_dominated && domination_count(g, s, e) >= 1;
      CHECK(all_dominated == is_edge_dominating(g, s));
      if (is_minimal_eds(g, s)) {
        CHECK_NOTHROW(star_decomposition(g, s));
        CHECK(certificate_violations(g, s).empty());
      }
    }
    std::vector<EdgeId> order(static_cast<std::size_t>(m));
    for (EdgeId e = 0; e < m; ++e) order[static_cast<std::size_t>(e)] = e;
    for (int shuffle = 0; shuffle < 3; ++shuffle) {
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
      const EdgeSet mm = greedy_maximal_matching(g, order);
      CHECK(is_minimal_eds(g, mm));
      CHECK(vertex_cover_from_matching(g, mm).size() == static_cast<std::size_t>(2 * mm.size()));
    }
  }
}

#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "ueds/decomposition.hpp"
#include "ueds/errors.hpp"

using namespace ueds;
using namespace ueds::testing;

namespace {

using Bags = std::vector<std::vector<Vertex>>;

int count_kind(const NiceDecomposition& nd, NiceKind kind) {
  int c = 0;
  for (const auto& node : nd.nodes) c += node.kind == kind;
  return c;
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
  for (const auto& p : problems)
    if (p.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("decomposition from a vertex cover") {
  const std::vector<Vertex> c23{1, 2};
  const TreeDecomposition p = td_from_vertex_cover(p4(), c23);
  CHECK(p.bags == Bags{{0, 1, 2}, {1, 2, 3}});
  CHECK(p.tree == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(p.width() == 2);
  CHECK(validate_td(p4(), p).empty());

  const std::vector<Vertex> c1{0};
  const TreeDecomposition k = td_from_vertex_cover(k2(), c1);
  CHECK(k.bags == Bags{{0, 1}});
  CHECK(k.width() == 1);

  const std::vector<Vertex> c12{0, 1};
  CHECK(td_from_vertex_cover(k3(), c12).bags == Bags{{0, 1, 2}});

  const std::vector<Vertex> bad{0};
  CHECK_THROWS_AS(td_from_vertex_cover(p4(), bad), CoverViolation);
}

TEST_CASE("validate_td reports each broken property") {
  const Graph g = p4();
  const std::vector<Vertex> c23{1, 2};
  TreeDecomposition td = td_from_vertex_cover(g, c23);

  TreeDecomposition lost = td;
  lost.bags.pop_back();
  lost.tree.clear();
  CHECK_FALSE(validate_td(g, lost).empty());
  CHECK(mentions(validate_td(g, lost), "edge (3,4)"));

  TreeDecomposition split;
  split.num_vertices = 4;
  split.bags = {{0, 1}, {2, 3}, {1, 2}, {0}};
  split.tree = {{0, 2}, {2, 1}, {1, 3}};
  CHECK(mentions(validate_td(g, split), "vertex 1"));

  TreeDecomposition cyclic = td;
  cyclic.tree.emplace_back(1, 0);
  CHECK_FALSE(validate_td(g, cyclic).empty());
}

TEST_CASE("min-degree decomposition") {
  const TreeDecomposition p = td_min_degree(p4());
  CHECK(validate_td(p4(), p).empty());
  CHECK(p.width() == 1);
  CHECK(td_min_degree(c5()).width() == 2);
  CHECK(td_min_degree(complete(5)).width() == 4);
  CHECK(validate_td(Graph(3), td_min_degree(Graph(3))).empty());
}

TEST_CASE("make_nice on small graphs") {
  const std::vector<Vertex> c1{0};
  const NiceDecomposition k = make_nice(k2(), td_from_vertex_cover(k2(), c1));
  std::vector<NiceKind> kinds;
  for (const auto& node : k.nodes) kinds.push_back(node.kind);
  CHECK(kinds == std::vector<NiceKind>{NiceKind::Leaf, NiceKind::IntroduceVertex, NiceKind::IntroduceVertex,
                                       NiceKind::IntroduceEdge, NiceKind::Forget, NiceKind::Forget});
  CHECK(k.root == 5);
  CHECK(validate_nice(k2(), k).empty());

  const std::vector<Vertex> c23{1, 2};
  const NiceDecomposition p = make_nice(p4(), td_from_vertex_cover(p4(), c23));
  CHECK(validate_nice(p4(), p).empty());
  CHECK(count_kind(p, NiceKind::IntroduceEdge) == 3);
  CHECK(p.width() == 2);

  const std::vector<Vertex> c12{0, 1};
  const NiceDecomposition t = make_nice(k3(), td_from_vertex_cover(k3(), c12));
  CHECK(count_kind(t, NiceKind::IntroduceEdge) == 3);
  CHECK(t.width() == 2);

  TreeDecomposition broken = td_from_vertex_cover(p4(), c23);
  broken.bags.pop_back();
  broken.tree.clear();
  CHECK_THROWS_AS(make_nice(p4(), broken), InvalidDecomposition);
}

TEST_CASE("late placement puts each edge right below the first forget") {
  const Graph g = colored_example();
  const auto cover = vertex_cover_from_matching(g, greedy_maximal_matching(g));
  const NiceDecomposition nd = make_nice(g, td_from_vertex_cover(g, cover), EdgePlacement::Late);
  for (std::size_t t = 0; t < nd.nodes.size(); ++t) {
    const NiceNode& node = nd.nodes[t];
    if (node.kind != NiceKind::IntroduceEdge) continue;
    // Walk up through the chain of edge introductions to the next node.
    std::size_t up = t + 1;
    while (up < nd.nodes.size() && nd.nodes[up].kind == NiceKind::IntroduceEdge) ++up;
    REQUIRE(up < nd.nodes.size());
    CHECK(nd.nodes[up].kind == NiceKind::Forget);
    CHECK(g.edge(node.edge).touches(nd.nodes[up].vertex));
  }
}

TEST_CASE("validate_nice catches injected faults") {
  const Graph g = p4();
  const std::vector<Vertex> c23{1, 2};
  const NiceDecomposition good = make_nice(g, td_from_vertex_cover(g, c23));

  NiceDecomposition dup = good;
  int edge_node = -1;
  for (int t = 0; t < static_cast<int>(dup.nodes.size()); ++t)
    if (dup.nodes[static_cast<std::size_t>(t)].kind == NiceKind::IntroduceEdge) edge_node = t;
  REQUIRE(edge_node >= 0);
  NiceNode copy = dup.nodes[static_cast<std::size_t>(edge_node)];
  copy.children = {dup.root, -1};
  copy.bag = dup.nodes[static_cast<std::size_t>(dup.root)].bag;
  dup.nodes.push_back(copy);
  dup.root = static_cast<int>(dup.nodes.size()) - 1;
  CHECK(mentions(validate_nice(g, dup), "introduced twice"));

  NiceDecomposition bad_forget = good;
  NiceNode f{NiceKind::Forget, 0, -1, {bad_forget.root, -1}, {}};
  bad_forget.nodes.push_back(f);
  bad_forget.root = static_cast<int>(bad_forget.nodes.size()) - 1;
  CHECK(mentions(validate_nice(g, bad_forget), "missing from the child bag"));

  NiceDecomposition missing = good;
  for (auto& node : missing.nodes)
    if (node.kind == NiceKind::IntroduceEdge) {
      node.kind = NiceKind::Join;
      break;
    }
  CHECK_FALSE(validate_nice(g, missing).empty());
}

TEST_CASE("td text format") {
  const TreeDecomposition p = parse_td("s td 2 3 4\nb 1 1 2 3\nb 2 2 3 4\n1 2\n", 4);
  CHECK(p.bags == Bags{{0, 1, 2}, {1, 2, 3}});
  CHECK(p.tree.size() == 1);
  CHECK(validate_td(p4(), p).empty());

  const std::vector<Vertex> c1{0};
  const TreeDecomposition k = td_from_vertex_cover(k2(), c1);
  const TreeDecomposition again = parse_td(to_td_string(k), 2);
  CHECK(again.bags == k.bags);
  CHECK(again.tree == k.tree);

  CHECK_THROWS_AS(parse_td("s td 1 2 4\nb 1 1 9\n", 4), ParseError);
  CHECK_THROWS_AS(parse_td("s td 2 3 4\nb 1 1 2 3\n", 4), ParseError);
  CHECK_THROWS_AS(parse_td("s td 1 2 3\nb 1 1 2\n", 4), ParseError);
  try {
    parse_td("c hello\ns td 1 2 2\nb 1 1 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("nice text format round-trips") {
  const Graph g = colored_example();
  const auto cover = vertex_cover_from_matching(g, greedy_maximal_matching(g));
  const NiceDecomposition nd = make_nice(g, star_td(g, cover));
  std::ostringstream out;
  emit_nice(out, g, nd);
  std::istringstream in(out.str());
  const NiceDecomposition back = parse_nice(in, g);
  REQUIRE(back.nodes.size() == nd.nodes.size());
  CHECK(back.root == nd.root);
  for (std::size_t t = 0; t < nd.nodes.size(); ++t) {
    CHECK(back.nodes[t].kind == nd.nodes[t].kind);
    CHECK(back.nodes[t].bag == nd.nodes[t].bag);
    CHECK(back.nodes[t].children == nd.nodes[t].children);
  }
}

TEST_CASE("property: decompositions of random graphs are valid and compact") {
  SplitMix64 rng(13);
  for (int round = 0; round < 300; ++round) {
    const Graph g = random_gnp(rng, 10);
    const int n = g.num_vertices();
    const int m = g.num_edges();
    const auto cover = vertex_cover_from_matching(g, greedy_maximal_matching(g));
    const std::vector<TreeDecomposition> tds{td_from_vertex_cover(g, cover), td_min_degree(g), star_td(g, cover)};
    CHECK(tds[0].width() <= static_cast<int>(cover.size()));
    for (const TreeDecomposition& td : tds) {
      CHECK(validate_td(g, td).empty());
      for (EdgePlacement placement : {EdgePlacement::Late, EdgePlacement::Early}) {
        const NiceDecomposition nd = make_nice(g, td, placement);
        CHECK(validate_nice(g, nd).empty());
        CHECK(nd.width() == td.width());
        CHECK(count_kind(nd, NiceKind::IntroduceEdge) == m);
        CHECK(count_kind(nd, NiceKind::Forget) == n);
        CHECK(static_cast<int>(nd.nodes.size()) <= 4 * (n * (td.width() + 1) + m) + 1);
        for (const NiceNode& node : nd.nodes)
          if (node.kind == NiceKind::IntroduceEdge) {
            CHECK(std::binary_search(node.bag.begin(), node.bag.end(), g.edge(node.edge).u));
            CHECK(std::binary_search(node.bag.begin(), node.bag.end(), g.edge(node.edge).v));
          }
      }
    }
    const TreeDecomposition back = parse_td(to_td_string(tds[1]), n);
    CHECK(back.bags == tds[1].bags);
  }
}

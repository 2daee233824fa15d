#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "ueds/dp.hpp"
#include "ueds/errors.hpp"
#include "ueds/oracle.hpp"

using namespace ueds;
using namespace ueds::testing;

namespace {

using C = DpColor;

DpTuple make_tuple(std::initializer_list<std::pair<C, int>> slots) {
  DpTuple t;
  int pos = 0;
  for (auto [c, y] : slots) {
    t.state.set_color(pos, c);
    t.state.set_incidence(pos, y);
    if (is_red(c)) ++t.n_r;
    if (c == C::Red1) ++t.n_r1;
    ++pos;
  }
  return t;
}

NodeTable table_of(std::initializer_list<DpTuple> tuples) {
  NodeTable t;
  for (const DpTuple& x : tuples) {
    t.tuples.push_back(x);
    t.from.push_back({});
  }
  return t;
}

bool has(const NodeTable& t, const DpTuple& x) {
  return std::find(t.tuples.begin(), t.tuples.end(), x) != t.tuples.end();
}

int run(const Graph& g, const TreeDecomposition& td, EdgePlacement placement = EdgePlacement::Late,
        DpOptions options = {}) {
  return run_dp(g, make_nice(g, td, placement), options).gamma_prime;
}

std::vector<Vertex> greedy_cover(const Graph& g) { return vertex_cover_from_matching(g, greedy_maximal_matching(g)); }

}  // namespace

TEST_CASE("bag state packing") {
  BagState s;
  s.set_color(0, C::Green);
  s.set_incidence(0, 2);
  const BagState t = s.inserted(0, C::Red1, 1);
  CHECK(t.color(0) == C::Red1);
  CHECK(t.incidence(0) == 1);
  CHECK(t.color(1) == C::Green);
  CHECK(t.incidence(1) == 2);
  CHECK(t.erased(0) == s);
  BagState full;
  for (int p = 0; p < BagState::kMaxBag; ++p) full.set_color(p, C::Red1);
  CHECK(full.color(BagState::kMaxBag - 1) == C::Red1);
  CHECK(full.erased(BagState::kMaxBag - 1).color(BagState::kMaxBag - 1) == C::Black);
}

TEST_CASE("leaf") {
  const NodeTable a = dp_leaf();
  REQUIRE(a.size() == 1);
  CHECK(a.tuples[0] == DpTuple{});
  CHECK(dp_leaf().tuples == a.tuples);
}

TEST_CASE("introduce vertex") {
  const std::vector<Vertex> empty;
  const NodeTable t = dp_introduce_vertex(dp_leaf(), empty, 0);
  REQUIRE(t.size() == 4);
  for (const DpTuple& x : t.tuples) {
    CHECK(x.state.color(0) != C::Red1);
    CHECK(x.n_r == (x.state.color(0) == C::Red0 ? 1 : 0));
  }
  const std::vector<Vertex> one{0};
  const NodeTable u = dp_introduce_vertex(t, one, 1);
  CHECK(u.size() == 16);
  const std::vector<Vertex> two{0, 1};
  CHECK(dp_introduce_vertex(u, two, 5).size() == 64);
  CHECK_THROWS_AS(dp_introduce_vertex(u, two, 1), InvalidDecomposition);
}

TEST_CASE("introduce edge") {
  const std::vector<Vertex> bag{0, 1};

  const NodeTable pp = dp_introduce_edge(table_of({make_tuple({{C::Purple, 0}, {C::Purple, 0}})}), bag, 0, 1);
  DpTuple taken = make_tuple({{C::Purple, 1}, {C::Purple, 1}});
  taken.alpha = 1;
  CHECK(has(pp, taken));
  CHECK(has(pp, make_tuple({{C::Purple, 0}, {C::Purple, 0}})));

  const NodeTable rb = dp_introduce_edge(table_of({make_tuple({{C::Red0, 0}, {C::Black, 0}})}), bag, 0, 1);
  REQUIRE(rb.size() == 1);
  CHECK(rb.tuples[0] == make_tuple({{C::Red1, 0}, {C::Black, 0}}));
  CHECK(rb.tuples[0].n_r1 == 1);

  DpOptions no_upgrade;
  no_upgrade.red_upgrade = false;
  const NodeTable rb0 =
      dp_introduce_edge(table_of({make_tuple({{C::Red0, 0}, {C::Black, 0}})}), bag, 0, 1, no_upgrade);
  CHECK(rb0.tuples[0].state.color(0) == C::Red0);

  const NodeTable r1b = dp_introduce_edge(table_of({make_tuple({{C::Black, 0}, {C::Red1, 1}})}), bag, 0, 1);
  REQUIRE(r1b.size() == 1);
  CHECK(r1b.tuples[0] == make_tuple({{C::Black, 0}, {C::Red1, 1}}));

  DpOptions keep;
  keep.prune = false;
  const NodeTable bb = dp_introduce_edge(table_of({make_tuple({{C::Black, 0}, {C::Black, 0}})}), bag, 0, 1, keep);
  REQUIRE(bb.size() == 1);
  CHECK(bb.tuples[0].beta == 1);
  CHECK(dp_introduce_edge(table_of({make_tuple({{C::Black, 0}, {C::Black, 0}})}), bag, 0, 1).size() == 0);

  // Black endpoints never take a solution edge; neither do green-green or purple-red pairs.
  for (auto [a, b] : {std::pair{C::Black, C::Purple}, {C::Green, C::Green}, {C::Purple, C::Red0}, {C::Black, C::Green}}) {
    const NodeTable x = dp_introduce_edge(table_of({make_tuple({{a, 0}, {b, 0}})}), bag, 0, 1, keep);
    for (const DpTuple& t : x.tuples) CHECK(t.alpha == 0);
  }
  DpTuple gr = make_tuple({{C::Green, 2}, {C::Red1, 1}});
  gr.alpha = 1;
  const NodeTable gr_out = dp_introduce_edge(table_of({make_tuple({{C::Green, 1}, {C::Red1, 0}})}), bag, 0, 1);
  CHECK(has(gr_out, gr));

  // A second solution edge at a purple vertex is overfull.
  CHECK(dp_introduce_edge(table_of({make_tuple({{C::Purple, 1}, {C::Purple, 0}})}), bag, 0, 1).size() == 1);
  CHECK_THROWS_AS(dp_introduce_edge(dp_leaf(), bag, 0, 2), InvalidDecomposition);
}

TEST_CASE("forget") {
  const std::vector<Vertex> bag{0, 1};
  auto forget_first = [&](DpTuple t, DpOptions o = {}) { return dp_forget(table_of({t}), bag, 0, o); };

  const NodeTable p = forget_first(make_tuple({{C::Purple, 1}, {C::Green, 0}}));
  REQUIRE(p.size() == 1);
  CHECK(p.tuples[0].n_c == 1);
  CHECK(p.tuples[0].state.color(0) == C::Green);

  CHECK(forget_first(make_tuple({{C::Green, 1}, {C::Green, 0}})).size() == 0);
  CHECK(forget_first(make_tuple({{C::Black, 0}, {C::Green, 0}})).tuples.at(0).n_c == 1);
  CHECK(forget_first(make_tuple({{C::Green, 2}, {C::Green, 0}})).tuples.at(0).n_c == 1);
  CHECK(forget_first(make_tuple({{C::Red1, 1}, {C::Green, 0}})).tuples.at(0).n_c == 1);
  CHECK(forget_first(make_tuple({{C::Red0, 1}, {C::Green, 0}})).size() == 0);

  DpOptions keep;
  keep.prune = false;
  const NodeTable g1 = forget_first(make_tuple({{C::Green, 1}, {C::Green, 0}}), keep);
  REQUIRE(g1.size() == 1);
  CHECK(g1.tuples[0].n_c == 0);
  CHECK(forget_first(make_tuple({{C::Red0, 1}, {C::Green, 0}}), keep).tuples.at(0).n_c == 1);
}

TEST_CASE("join") {
  const std::vector<Vertex> bag{0, 1};
  DpTuple left = make_tuple({{C::Purple, 1}, {C::Green, 0}});
  left.alpha = 2;
  DpTuple right = make_tuple({{C::Purple, 0}, {C::Green, 1}});
  right.alpha = 3;
  const NodeTable j = dp_join(table_of({left}), bag, table_of({right}), bag);
  REQUIRE(j.size() == 1);
  CHECK(j.tuples[0].state.incidence(0) == 1);
  CHECK(j.tuples[0].state.incidence(1) == 1);
  CHECK(j.tuples[0].alpha == 5);

  // Both sides carry the purple vertex's one edge: overfull.
  CHECK(dp_join(table_of({left}), bag, table_of({left}), bag).size() == 0);
  // Colours must agree.
  CHECK(dp_join(table_of({make_tuple({{C::Black, 0}, {C::Green, 0}})}), bag,
                table_of({make_tuple({{C::Green, 0}, {C::Green, 0}})}), bag)
            .size() == 0);

  // Red flags merge disjunctively and the bag reds are counted once.
  const DpTuple r0 = make_tuple({{C::Red0, 0}, {C::Green, 0}});
  const DpTuple r1 = make_tuple({{C::Red1, 0}, {C::Green, 0}});
  const NodeTable a = dp_join(table_of({r0}), bag, table_of({r1}), bag);
  REQUIRE(a.size() == 1);
  CHECK(a.tuples[0].state.color(0) == C::Red1);
  CHECK(a.tuples[0].n_r == 1);
  CHECK(a.tuples[0].n_r1 == 1);
  const NodeTable b = dp_join(table_of({r1}), bag, table_of({r1}), bag);
  CHECK(b.tuples.at(0).n_r1 == 1);
  const NodeTable c = dp_join(table_of({r0}), bag, table_of({r0}), bag);
  CHECK(c.tuples.at(0).state.color(0) == C::Red0);
  CHECK(c.tuples.at(0).n_r == 1);
  CHECK(c.tuples.at(0).n_r1 == 0);

  const std::vector<Vertex> other{0, 2};
  CHECK_THROWS_AS(dp_join(table_of({r0}), bag, table_of({r0}), other), BagMismatch);
}

TEST_CASE("named values on every decomposition") {
  const std::vector<std::pair<Graph, int>> named{{k2(), 1}, {k3(), 1}, {p4(), 2}, {c4(), 2}, {c5(), 2}, {k13(), 1}};
  for (const auto& [g, expected] : named) {
    REQUIRE(upper_eds_exact(g).gamma_prime == expected);
    CHECK(run(g, td_from_vertex_cover(g, greedy_cover(g))) == expected);
    CHECK(run(g, td_min_degree(g)) == expected);
    CHECK(run(g, star_td(g, greedy_cover(g)), EdgePlacement::Early) == expected);
  }
  CHECK(run(Graph(4), td_min_degree(Graph(4))) == 0);
  CHECK(run(Graph(0), td_min_degree(Graph(0))) == 0);
  const Graph f = colored_example();
  CHECK(run(f, td_min_degree(f)) == upper_eds_exact(f).gamma_prime);
}

TEST_CASE("run_dp rejects invalid decompositions") {
  const Graph g = p4();
  NiceDecomposition nd = make_nice(g, td_min_degree(g));
  nd.nodes.back().bag.push_back(0);
  CHECK_THROWS_AS(run_dp(g, nd), InvalidDecomposition);
}

TEST_CASE("property: dp matches the oracle on any decomposition, with and without pruning") {
  SplitMix64 rng(17);
  DpOptions unpruned;
  unpruned.prune = false;
  for (int round = 0; round < 150; ++round) {
    const Graph g = random_gnp(rng, 7);
    const int truth = upper_eds_exact(g, {64}).gamma_prime;
    const auto cover = greedy_cover(g);
    CHECK(run(g, td_from_vertex_cover(g, cover)) == truth);
    CHECK(run(g, td_min_degree(g), EdgePlacement::Early) == truth);
    CHECK(run(g, star_td(g, cover)) == truth);
    if (g.num_vertices() <= 5) CHECK(run(g, td_min_degree(g), EdgePlacement::Late, unpruned) == truth);
    CHECK(truth >= greedy_maximal_matching(g).size());
  }
}

TEST_CASE("property: witnesses, counters and the table bound") {
  SplitMix64 rng(19);
  DpOptions keep;
  keep.keep_tables = true;
  for (int round = 0; round < 120; ++round) {
    const Graph g = random_gnp(rng, 8);
    const int n = g.num_vertices();
    const int m = g.num_edges();
    const NiceDecomposition nd = make_nice(g, td_min_degree(g));
    const DpResult r = run_dp(g, nd, keep);
    const EdgeSet w = extract_witness(g, nd, r);
    CHECK(w.size() == r.gamma_prime);
    CHECK(is_minimal_eds(g, w));
    const long double bound = table_size_bound(r.width, n, m);
    for (std::size_t t = 0; t < nd.nodes.size(); ++t) {
      const NodeTable& table = r.tables[t];
      CHECK(static_cast<long double>(table.size()) <= bound);
      for (const DpTuple& x : table.tuples) {
        CHECK(0 <= x.n_r1);
        CHECK(x.n_r1 <= x.n_r);
        CHECK(x.n_r <= n);
        CHECK(x.n_c <= n);
        CHECK(x.alpha <= m);
        CHECK(x.beta == 0);
      }
      // Counters only grow from child to parent, except where a join merges
      // shared bag vertices.
      const NiceNode& node = nd.nodes[t];
      if (node.kind == NiceKind::Join || node.kind == NiceKind::Leaf) continue;
      const NodeTable& child = r.tables[static_cast<std::size_t>(node.children[0])];
      for (std::size_t i = 0; i < table.size(); ++i) {
        const DpTuple& from = child.tuples[table.from[i].first];
        CHECK(table.tuples[i].alpha >= from.alpha);
        CHECK(table.tuples[i].n_c >= from.n_c);
        CHECK(table.tuples[i].n_r1 >= from.n_r1);
      }
    }
  }
  CHECK_THROWS_AS(extract_witness(p4(), make_nice(p4(), td_min_degree(p4())), run_dp(p4(), make_nice(p4(), td_min_degree(p4())))),
                  PreconditionViolated);
}

TEST_CASE("disabling the red upgrade breaks equivalence somewhere") {
  SplitMix64 rng(23);
  DpOptions fault;
  fault.red_upgrade = false;
  int mismatches = 0;
  for (int round = 0; round < 100; ++round) {
    const Graph g = random_gnp(rng, 8);
    int got = -1;
    try {
      got = run(g, td_min_degree(g), EdgePlacement::Late, fault);
    } catch (const Error&) {
    }
    if (got != upper_eds_exact(g, {64}).gamma_prime) ++mismatches;
  }
  CHECK(mismatches > 0);
}

TEST_CASE("diagnostics") {
  const Graph g = p4();
  const DpResult r = run_dp(g, make_nice(g, td_min_degree(g)));
  const auto lines = format_diagnostics(r);
  REQUIRE(lines.size() == r.stats.size() + 1);
  CHECK(lines.front().rfind("node=1 type=leaf tuples=1", 0) == 0);
  CHECK(lines.back() == "gamma_prime=2");
  CHECK(table_size_bound(0, 0, 0) == doctest::Approx(15.0));
}

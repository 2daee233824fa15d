#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ueds/decomposition.hpp"
#include "ueds/generator.hpp"
#include "ueds/graph.hpp"

namespace ueds::testing {

inline Graph one_based(int n, std::initializer_list<std::pair<int, int>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u - 1, v - 1);
  return g;
}

inline Graph k2() { return one_based(2, {{1, 2}}); }
inline Graph k3() { return one_based(3, {{1, 2}, {2, 3}, {1, 3}}); }
inline Graph p4() { return one_based(4, {{1, 2}, {2, 3}, {3, 4}}); }
inline Graph c4() { return one_based(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}); }
inline Graph c5() { return one_based(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}}); }
inline Graph k13() { return one_based(4, {{1, 2}, {1, 3}, {1, 4}}); }

inline Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

// Twelve-vertex example with three blue, three purple, two red and four green
// vertices. Labels: b1..b3 = 1..3, p1..p3 = 4..6, r1, r2 = 7, 8, g1..g4 = 9..12.
inline Graph colored_example() {
  enum { b1 = 1, b2, b3, p1, p2, p3, r1, r2, g1, g2, g3, g4 };
  return one_based(12, {{b1, p1}, {b2, p2}, {b3, p3}, {g4, p1}, {r1, p2}, {r2, p3}, {g3, p1}, {g3, g2},
                        {g3, g1}, {g1, g2}, {g3, g4}, {r1, p1}, {r2, p2}, {p2, g3}, {p2, g4}});
}

// Graph on n vertices whose edge set is the subset `mask` of all pairs (u<v,
// lexicographic order).
inline Graph from_pair_mask(int n, std::uint32_t mask) {
  Graph g(n);
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1u) g.add_edge(u, v);
  return g;
}

inline Graph random_gnp(SplitMix64& rng, int nmax) {
  static constexpr double kP[] = {0.2, 0.4, 0.6};
  GenSpec s;
  s.n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(nmax)));
  s.p = kP[rng.below(3)];
  s.seed = rng.next();
  return generate(s);
}

// Hub bag C with one leaf bag C + {v} per vertex outside C. Rooting at bag 0
// gives a join chain over all the leaves.
inline TreeDecomposition star_td(const Graph& g, const std::vector<Vertex>& cover) {
  TreeDecomposition td;
  td.num_vertices = g.num_vertices();
  td.bags.push_back(cover);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (std::find(cover.begin(), cover.end(), v) != cover.end()) continue;
    auto bag = cover;
    bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
    td.bags.push_back(std::move(bag));
    td.tree.emplace_back(0, static_cast<int>(td.bags.size()) - 1);
  }
  return td;
}

// Reference predicates straight from the definitions, with no shared code
// beyond the Graph container.
inline bool naive_dominates(const Graph& g, std::uint64_t mask) {
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    bool hit = false;
    for (EdgeId f = 0; f < g.num_edges() && !hit; ++f)
      if (mask >> f & 1u) hit = g.edge(e).adjacent_to(g.edge(f));
    if (!hit) return false;
  }
  return true;
}

inline bool naive_minimal(const Graph& g, std::uint64_t mask) {
  if (!naive_dominates(g, mask)) return false;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if ((mask >> e & 1u) && naive_dominates(g, mask & ~(std::uint64_t{1} << e))) return false;
  return true;
}

// Largest minimal EDS by scanning all 2^m subsets. Only for m <= 20.
inline int naive_gamma(const Graph& g) {
  int best = 0;
  const std::uint64_t limit = std::uint64_t{1} << g.num_edges();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    const int size = __builtin_popcountll(mask);
    if (size > best && naive_minimal(g, mask)) best = size;
  }
  return best;
}

}  // namespace ueds::testing

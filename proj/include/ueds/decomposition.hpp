#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ueds/graph.hpp"

namespace ueds {

/// Tree decomposition: bags indexed 0..b-1 and the tree edges between them.
struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;  // each sorted ascending
  std::vector<std::pair<int, int>> tree;
  int num_vertices = 0;

  int width() const;
};

/// Bags C + {v} for every v outside C, on a path in ascending order of v; the
/// single bag C when C = V. Throws CoverViolation when C misses an edge.
TreeDecomposition td_from_vertex_cover(const Graph& g, std::span<const Vertex> cover);

/// Greedy min-degree elimination (ties to the lowest vertex): one bag per
/// eliminated vertex holding it and its neighbours in the fill graph.
TreeDecomposition td_min_degree(const Graph& g);

/// Empty iff the bags cover V and E, the tree is a tree, and every vertex
/// occupies a connected set of bags.
std::vector<std::string> validate_td(const Graph& g, const TreeDecomposition& td);

enum class NiceKind { Leaf, IntroduceVertex, IntroduceEdge, Forget, Join };

const char* to_string(NiceKind kind);

struct NiceNode {
  NiceKind kind = NiceKind::Leaf;
  Vertex vertex = -1;  // IntroduceVertex, Forget
  EdgeId edge = -1;    // IntroduceEdge
  std::array<int, 2> children{-1, -1};
  std::vector<Vertex> bag;  // sorted ascending
};

/// Rooted nice decomposition. Nodes are stored children-first, so increasing
/// index order is a valid bottom-up evaluation order and the root is last.
struct NiceDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;

  int width() const;
};

enum class EdgePlacement {
  /// Just below the Forget of whichever endpoint is forgotten first.
  Late,
  /// Right after the second endpoint enters the bag.
  Early,
};

/// Throws InvalidDecomposition when `td` fails validate_td. The tree is rooted
/// at bag 0; multi-child nodes become chains of binary joins.
NiceDecomposition make_nice(const Graph& g, const TreeDecomposition& td, EdgePlacement placement = EdgePlacement::Late);

std::vector<std::string> validate_nice(const Graph& g, const NiceDecomposition& nd);

/// PACE .td: "s td <bags> <width+1> <n>", "b <id> <v...>", then "<id> <id>" tree edges.
/// `expected_vertices` < 0 skips the vertex-count check against a graph.
TreeDecomposition parse_td(std::istream& in, int expected_vertices = -1);
TreeDecomposition parse_td(const std::string& text, int expected_vertices = -1);
void emit_td(std::ostream& out, const TreeDecomposition& td);
std::string to_td_string(const TreeDecomposition& td);

// Nice decomposition text format (one node per line, children before parents):
//   s nice <nodes> <width+1> <n> <m>
//   n <id> leaf
//   n <id> introduce <child> <v>
//   n <id> introduce-edge <child> <u> <v>
//   n <id> forget <child> <v>
//   n <id> join <left> <right>
//   r <root>
// Ids are 1-based and vertices 1-based; edges are resolved against the graph.
void emit_nice(std::ostream& out, const Graph& g, const NiceDecomposition& nd);
NiceDecomposition parse_nice(std::istream& in, const Graph& g);

}  // namespace ueds

#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ueds {

/// Vertices are 0-based internally and printed 1-based.
using Vertex = int;
/// Edges are numbered 0..m-1 in insertion order.
using EdgeId = int;

struct Edge {
  Vertex u;
  Vertex v;

  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool touches(Vertex x) const { return x == u || x == v; }
  bool adjacent_to(const Edge& e) const { return touches(e.u) || touches(e.v); }
};

struct Incidence {
  Vertex neighbor;
  EdgeId edge;
};

/// Simple undirected graph. Rejects loops and parallel edges on insertion.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  /// Builds a graph from 0-based endpoint pairs; edge ids follow the list order.
  static Graph from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges);
  static Graph from_edges(int n, std::initializer_list<std::pair<Vertex, Vertex>> edges);

  /// Throws std::invalid_argument on a loop, a duplicate, or an out-of-range endpoint.
  EdgeId add_edge(Vertex u, Vertex v);

  int num_vertices() const { return static_cast<int>(adjacency_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Incidence> incident(Vertex v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  int degree(Vertex v) const { return static_cast<int>(incident(v).size()); }

  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;

  /// Subgraph induced by `keep` (any order; relabelled in ascending order of the
  /// old ids). `old_id[i]` receives the old id of new vertex i.
  Graph induced_subgraph(std::span<const Vertex> keep, std::vector<Vertex>* old_id = nullptr) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  static std::uint64_t key(Vertex u, Vertex v);

  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::unordered_map<std::uint64_t, EdgeId> index_;
};

/// Subset of the edges of one graph, stored as a bitmask over EdgeIds.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(int universe);
  EdgeSet(int universe, std::initializer_list<EdgeId> members);
  static EdgeSet from_mask(int universe, std::uint64_t mask);

  int universe() const { return universe_; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(EdgeId e) const;
  void insert(EdgeId e);
  void erase(EdgeId e);

  std::vector<EdgeId> members() const;
  bool is_subset_of(const EdgeSet& other) const;
  /// Low 64 bits of the mask; exact when universe() <= 64.
  std::uint64_t low_word() const { return words_.empty() ? 0 : words_.front(); }

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) = default;

 private:
  void check(EdgeId e) const;

  int universe_ = 0;
  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Components of (V, M) when M induces a star forest.
struct StarStructure {
  struct Star {
    Vertex center;
    std::vector<Vertex> leaves;
    /// K_{1,1}: both endpoints play the same role; `center` is the smaller one.
    bool symmetric = false;
  };
  std::vector<Star> stars;
  std::vector<Vertex> isolated;
};

// PACE-style .gr text: "c" comments, "p gr n m", then m lines "u v" (1-based).
Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);
void write_graph(std::ostream& out, const Graph& g);
std::string to_gr_string(const Graph& g);

/// True iff every edge of `g` shares an endpoint with some edge of `m`.
bool is_edge_dominating(const Graph& g, const EdgeSet& m);

/// Number of edges of `m` equal or adjacent to `e`.
int domination_count(const Graph& g, const EdgeSet& m, EdgeId e);

/// Minimal EDS test via private edges: `m` dominates and every member has an
/// edge in its closed neighbourhood dominated by it alone.
bool is_minimal_eds(const Graph& g, const EdgeSet& m);

/// Scans edges in `order` (ascending ids when empty) and keeps every edge whose
/// endpoints are both still free.
EdgeSet greedy_maximal_matching(const Graph& g, std::span<const EdgeId> order = {});

/// Throws NotStarForest when (V, m) is not a disjoint union of stars and isolated vertices.
StarStructure star_decomposition(const Graph& g, const EdgeSet& m);

/// Star-forest certificate of minimality: empty iff `m` dominates, (V, m) is a
/// star forest, and every leaf of a star with two or more leaves has a
/// neighbour untouched by `m`.
std::vector<std::string> certificate_violations(const Graph& g, const EdgeSet& m);
/// Endpoints of `matching`, ascending. Throws CoverViolation if some edge stays uncovered.
std::vector<Vertex> vertex_cover_from_matching(const Graph& g, const EdgeSet& matching);

std::string format_edge(const Graph& g, EdgeId e);

}  // namespace ueds

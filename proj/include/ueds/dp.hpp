#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ueds/decomposition.hpp"
#include "ueds/graph.hpp"

namespace ueds {

/// Role of a bag vertex in the partial star forest A_t:
///   Black  - no incident solution edge;
///   Purple - endpoint of an isolated solution edge (K_{1,1});
///   Green  - centre of a star with at least two leaves;
///   Red0 / Red1 - leaf of such a star, without / with a black neighbour seen so far.
enum class DpColor : std::uint8_t { Black = 0, Purple = 1, Green = 2, Red0 = 3, Red1 = 4 };

const char* to_string(DpColor c);
inline bool is_red(DpColor c) { return c == DpColor::Red0 || c == DpColor::Red1; }

/// Colour and capped solution-edge incidence (0, 1, 2 meaning "2 or more") for
/// every position of a sorted bag, packed into two words.
class BagState {
 public:
  static constexpr int kMaxBag = 21;

  DpColor color(int pos) const { return static_cast<DpColor>((colors_ >> (3 * pos)) & 7u); }
  int incidence(int pos) const { return static_cast<int>((incidences_ >> (2 * pos)) & 3u); }

  void set_color(int pos, DpColor c);
  void set_incidence(int pos, int y);

  /// Opens position `pos` (shifting later positions up) holding (c, y).
  BagState inserted(int pos, DpColor c, int y) const;
  /// Removes position `pos`, shifting later positions down.
  BagState erased(int pos) const;

  std::uint64_t packed_colors() const { return colors_; }
  std::uint64_t packed_incidences() const { return incidences_; }

  friend bool operator==(const BagState&, const BagState&) = default;

 private:
  std::uint64_t colors_ = 0;
  std::uint64_t incidences_ = 0;
};

/// One true entry dp_t(f, y, n_r, n_r1, n_c, alpha, beta).
struct DpTuple {
  BagState state;
  int n_r = 0;    // red vertices in V_t
  int n_r1 = 0;   // of which have a black neighbour
  int n_c = 0;    // forgotten vertices meeting their colour condition
  int alpha = 0;  // |A_t|
  int beta = 0;   // introduced edges with both endpoints black

  friend bool operator==(const DpTuple&, const DpTuple&) = default;
};

/// Where a tuple came from: child tuple index (or left/right for joins) and
/// whether an introduce-edge step put the edge into the partial solution.
struct Backpointer {
  std::uint32_t first = 0;
  std::uint32_t second = 0;
  bool took_edge = false;
};

/// The set of true tuples at one node, deduplicated, in first-derivation order.
struct NodeTable {
  std::vector<DpTuple> tuples;
  std::vector<Backpointer> from;

  std::size_t size() const { return tuples.size(); }
};

struct DpOptions {
  /// Discard tuples that can never reach an accepting root: beta > 0, a vertex
  /// forgotten with its colour condition unmet or as Red0, a purple or red
  /// vertex with two solution edges. Off gives the unpruned table.
  bool prune = true;
  /// Red0 -> Red1 when an excluded edge meets a black vertex. Off only for
  /// fault-injection runs.
  bool red_upgrade = true;
  /// Retain every node table (needed by extract_witness).
  bool keep_tables = false;
};

NodeTable dp_leaf();
NodeTable dp_introduce_vertex(const NodeTable& child, std::span<const Vertex> child_bag, Vertex v,
                              const DpOptions& options = {});
NodeTable dp_introduce_edge(const NodeTable& child, std::span<const Vertex> bag, Vertex u, Vertex v,
                            const DpOptions& options = {});
NodeTable dp_forget(const NodeTable& child, std::span<const Vertex> child_bag, Vertex v, const DpOptions& options = {});
/// Throws BagMismatch when the two bags differ.
NodeTable dp_join(const NodeTable& left, std::span<const Vertex> left_bag, const NodeTable& right,
                  std::span<const Vertex> right_bag, const DpOptions& options = {});

struct DpNodeStat {
  int node = 0;
  NiceKind kind = NiceKind::Leaf;
  std::size_t tuples = 0;
};

struct DpResult {
  int gamma_prime = 0;
  int width = -1;
  std::size_t max_table = 0;
  std::vector<DpNodeStat> stats;
  /// Per node when DpOptions::keep_tables was set, else empty.
  std::vector<NodeTable> tables;
  /// Index of the chosen accepting tuple in the root table.
  std::uint32_t root_tuple = 0;
};

/// Bottom-up evaluation; gamma' is the largest alpha over root tuples with
/// n_r = n_r1, n_c = |V| and beta = 0. Throws InvalidDecomposition when `nd`
/// fails validate_nice, ResourceCapExceeded when a bag exceeds BagState::kMaxBag.
DpResult run_dp(const Graph& g, const NiceDecomposition& nd, const DpOptions& options = {});

/// Follows backpointers from the chosen root tuple. Needs keep_tables.
EdgeSet extract_witness(const Graph& g, const NiceDecomposition& nd, const DpResult& result);

/// 15^(width+1) * (n+1)^3 * (m+1)^2, the size of the full tuple space per node.
long double table_size_bound(int width, int n, int m);

/// "node=<id> type=<kind> tuples=<count>" lines and a final "gamma_prime=<a>".
std::vector<std::string> format_diagnostics(const DpResult& result);

}  // namespace ueds

#include "ueds/graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ueds/errors.hpp"

namespace ueds {

Graph::Graph(int n) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  adjacency_.resize(static_cast<std::size_t>(n));
}

Graph Graph::from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph Graph::from_edges(int n, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
  return from_edges(n, std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size()));
}

std::uint64_t Graph::key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
}

EdgeId Graph::add_edge(Vertex u, Vertex v) {
  const int n = num_vertices();
  if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loop");
  auto [it, inserted] = index_.emplace(key(u, v), num_edges());
  if (!inserted) throw std::invalid_argument("duplicate edge");
  const EdgeId id = it->second;
  edges_.push_back({u, v});
  adjacency_[static_cast<std::size_t>(u)].push_back({v, id});
  adjacency_[static_cast<std::size_t>(v)].push_back({u, id});
  return id;
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
  auto it = index_.find(key(u, v));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Graph Graph::induced_subgraph(std::span<const Vertex> keep, std::vector<Vertex>* old_id) const {
  std::vector<Vertex> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Vertex> new_id(adjacency_.size(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) new_id.at(static_cast<std::size_t>(sorted[i])) = static_cast<Vertex>(i);
  Graph h(static_cast<int>(sorted.size()));
  for (const Edge& e : edges_) {
    const Vertex a = new_id[static_cast<std::size_t>(e.u)];
    const Vertex b = new_id[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) h.add_edge(a, b);
  }
  if (old_id) *old_id = std::move(sorted);
  return h;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  for (EdgeId e = 0; e < a.num_edges(); ++e) {
    if (a.edges_[static_cast<std::size_t>(e)].u != b.edges_[static_cast<std::size_t>(e)].u ||
        a.edges_[static_cast<std::size_t>(e)].v != b.edges_[static_cast<std::size_t>(e)].v)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

EdgeSet::EdgeSet(int universe) : universe_(universe) {
  if (universe < 0) throw std::invalid_argument("negative edge universe");
  words_.assign(static_cast<std::size_t>((universe + 63) / 64), 0);
}

EdgeSet::EdgeSet(int universe, std::initializer_list<EdgeId> members) : EdgeSet(universe) {
  for (EdgeId e : members) insert(e);
}

EdgeSet EdgeSet::from_mask(int universe, std::uint64_t mask) {
  if (universe > 64) throw std::invalid_argument("mask constructor needs universe <= 64");
  if (universe < 64 && (mask >> universe) != 0) throw std::out_of_range("mask has bits beyond the universe");
  EdgeSet s(universe);
  if (!s.words_.empty()) s.words_[0] = mask;
  s.size_ = std::popcount(mask);
  return s;
}

void EdgeSet::check(EdgeId e) const {
  if (e < 0 || e >= universe_) throw std::out_of_range("edge id " + std::to_string(e) + " outside edge set universe");
}

bool EdgeSet::contains(EdgeId e) const {
  check(e);
  return (words_[static_cast<std::size_t>(e / 64)] >> (e % 64)) & 1u;
}

void EdgeSet::insert(EdgeId e) {
  check(e);
  auto& w = words_[static_cast<std::size_t>(e / 64)];
  const std::uint64_t bit = std::uint64_t{1} << (e % 64);
  if (!(w & bit)) {
    w |= bit;
    ++size_;
  }
}

void EdgeSet::erase(EdgeId e) {
  check(e);
  auto& w = words_[static_cast<std::size_t>(e / 64)];
  const std::uint64_t bit = std::uint64_t{1} << (e % 64);
  if (w & bit) {
    w &= ~bit;
    --size_;
  }
}

std::vector<EdgeId> EdgeSet::members() const {
  std::vector<EdgeId> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(static_cast<EdgeId>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
  return out;
}

bool EdgeSet::is_subset_of(const EdgeSet& other) const {
  if (universe_ != other.universe_) throw std::invalid_argument("edge sets over different universes");
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') continue;
    return true;
  }
  return false;
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) throw ParseError(line_no, "missing 'p gr' header");

  std::istringstream header(line);
  std::string p, fmt;
  long long n = -1, m = -1;
  std::string rest;
  if (!(header >> p >> fmt >> n >> m) || p != "p" || fmt != "gr" || (header >> rest))
    throw ParseError(line_no, "malformed header, expected 'p gr <n> <m>'");
  if (n < 0 || m < 0 || n > (1LL << 30) || m > (1LL << 30)) throw ParseError(line_no, "header counts out of range");

  Graph g(static_cast<int>(n));
  long long seen = 0;
  while (next_content_line(in, line, line_no)) {
    std::istringstream row(line);
    long long u = 0, v = 0;
    if (!(row >> u >> v) || (row >> rest)) throw ParseError(line_no, "malformed edge line, expected '<u> <v>'");
    if (u < 1 || u > n || v < 1 || v > n)
      throw ParseError(line_no, "vertex index out of range 1.." + std::to_string(n));
    if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
    if (++seen > m) throw ParseError(line_no, "more edges than the declared " + std::to_string(m));
    if (g.find_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)))
      throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    g.add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
  }
  if (seen != m)
    throw ParseError(line_no, "declared " + std::to_string(m) + " edges but found " + std::to_string(seen));
  return g;
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "p gr " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

std::string to_gr_string(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

std::string format_edge(const Graph& g, EdgeId e) {
  const Edge& ed = g.edge(e);
  return "(" + std::to_string(ed.u + 1) + "," + std::to_string(ed.v + 1) + ")";
}

// ---------------------------------------------------------------------------

namespace {

// Number of edges of m incident to each vertex.
std::vector<int> incidence_counts(const Graph& g, const EdgeSet& m) {
  std::vector<int> deg(static_cast<std::size_t>(g.num_vertices()), 0);
  for (EdgeId e : m.members()) {
    ++deg[static_cast<std::size_t>(g.edge(e).u)];
    ++deg[static_cast<std::size_t>(g.edge(e).v)];
  }
  return deg;
}

void check_universe(const Graph& g, const EdgeSet& m) {
  if (m.universe() != g.num_edges()) throw std::invalid_argument("edge set does not belong to this graph");
}

// For e = uv with m-incidences d(u), d(v): edges of m touching e, counting e once.
int count_from_incidence(const Graph& g, const EdgeSet& m, const std::vector<int>& deg, EdgeId e) {
  const Edge& ed = g.edge(e);
  int c = deg[static_cast<std::size_t>(ed.u)] + deg[static_cast<std::size_t>(ed.v)];
  if (m.contains(e)) --c;
  return c;
}

}  // namespace

bool is_edge_dominating(const Graph& g, const EdgeSet& m) {
  check_universe(g, m);
  const auto deg = incidence_counts(g, m);
  for (const Edge& e : g.edges())
    if (deg[static_cast<std::size_t>(e.u)] == 0 && deg[static_cast<std::size_t>(e.v)] == 0) return false;
  return true;
}

int domination_count(const Graph& g, const EdgeSet& m, EdgeId e) {
  check_universe(g, m);
  if (e < 0 || e >= g.num_edges()) throw std::out_of_range("edge id " + std::to_string(e) + " out of range");
  return count_from_incidence(g, m, incidence_counts(g, m), e);
}

bool is_minimal_eds(const Graph& g, const EdgeSet& m) {
  check_universe(g, m);
  const auto deg = incidence_counts(g, m);
  for (const Edge& e : g.edges())
    if (deg[static_cast<std::size_t>(e.u)] == 0 && deg[static_cast<std::size_t>(e.v)] == 0) return false;

  for (EdgeId e : m.members()) {
    const Edge& ed = g.edge(e);
    bool has_private = count_from_incidence(g, m, deg, e) == 1;
    for (Vertex x : {ed.u, ed.v}) {
      for (const Incidence& inc : g.incident(x)) {
        if (has_private) break;
        if (count_from_incidence(g, m, deg, inc.edge) == 1) has_private = true;
      }
    }
    if (!has_private) return false;
  }
  return true;
}

EdgeSet greedy_maximal_matching(const Graph& g, std::span<const EdgeId> order) {
  EdgeSet matching(g.num_edges());
  std::vector<char> used(static_cast<std::size_t>(g.num_vertices()), 0);
  auto consider = [&](EdgeId e) {
    const Edge& ed = g.edge(e);
    if (used[static_cast<std::size_t>(ed.u)] || used[static_cast<std::size_t>(ed.v)]) return;
    used[static_cast<std::size_t>(ed.u)] = used[static_cast<std::size_t>(ed.v)] = 1;
    matching.insert(e);
  };
  if (order.empty()) {
    for (EdgeId e = 0; e < g.num_edges(); ++e) consider(e);
  } else {
    if (static_cast<int>(order.size()) != g.num_edges())
      throw std::invalid_argument("matching order must list every edge once");
    std::vector<char> seen(order.size(), 0);
    for (EdgeId e : order) {
      if (e < 0 || e >= g.num_edges() || seen[static_cast<std::size_t>(e)]++)
        throw std::invalid_argument("matching order is not a permutation of the edge ids");
    }
    for (EdgeId e : order) consider(e);
  }
  return matching;
}

StarStructure star_decomposition(const Graph& g, const EdgeSet& m) {
  check_universe(g, m);
  const auto deg = incidence_counts(g, m);
  for (EdgeId e : m.members()) {
    const Edge& ed = g.edge(e);
    if (deg[static_cast<std::size_t>(ed.u)] >= 2 && deg[static_cast<std::size_t>(ed.v)] >= 2)
      throw NotStarForest("edge " + format_edge(g, e) + " joins two vertices of degree >= 2 in the edge set");
  }

  StarStructure out;
  std::vector<std::vector<Vertex>> leaves(static_cast<std::size_t>(g.num_vertices()));
  for (EdgeId e : m.members()) {
    const Edge& ed = g.edge(e);
    const int du = deg[static_cast<std::size_t>(ed.u)];
    const int dv = deg[static_cast<std::size_t>(ed.v)];
    if (du == 1 && dv == 1) {
      out.stars.push_back({std::min(ed.u, ed.v), {std::max(ed.u, ed.v)}, true});
    } else {
      const Vertex center = du >= 2 ? ed.u : ed.v;
      leaves[static_cast<std::size_t>(center)].push_back(ed.other(center));
    }
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto& l = leaves[static_cast<std::size_t>(v)];
    if (!l.empty()) {
      std::sort(l.begin(), l.end());
      out.stars.push_back({v, std::move(l), false});
    }
    if (deg[static_cast<std::size_t>(v)] == 0) out.isolated.push_back(v);
  }
  std::sort(out.stars.begin(), out.stars.end(),
            [](const StarStructure::Star& a, const StarStructure::Star& b) { return a.center < b.center; });
  return out;
}

std::vector<std::string> certificate_violations(const Graph& g, const EdgeSet& m) {
  std::vector<std::string> out;
  if (!is_edge_dominating(g, m)) out.push_back("not an edge dominating set");
  StarStructure stars;
  try {
    stars = star_decomposition(g, m);
  } catch (const NotStarForest& e) {
    out.emplace_back(e.what());
    return out;
  }
  const auto deg = incidence_counts(g, m);
  for (const auto& star : stars.stars) {
    if (star.symmetric) {
      const EdgeId e = *g.find_edge(star.center, star.leaves.front());
      if (domination_count(g, m, e) != 1) out.push_back("isolated edge " + format_edge(g, e) + " is not private");
      continue;
    }
    if (star.leaves.size() < 2) continue;
    for (Vertex leaf : star.leaves) {
      const auto inc = g.incident(leaf);
      if (std::none_of(inc.begin(), inc.end(),
                       [&](const Incidence& i) { return deg[static_cast<std::size_t>(i.neighbor)] == 0; }))
        out.push_back("leaf " + std::to_string(leaf + 1) + " of the star at " + std::to_string(star.center + 1) +
                      " has no untouched neighbour");
    }
  }
  return out;
}

std::vector<Vertex> vertex_cover_from_matching(const Graph& g, const EdgeSet& matching) {
  check_universe(g, matching);
  std::vector<char> in_cover(static_cast<std::size_t>(g.num_vertices()), 0);
  for (EdgeId e : matching.members()) {
    in_cover[static_cast<std::size_t>(g.edge(e).u)] = 1;
    in_cover[static_cast<std::size_t>(g.edge(e).v)] = 1;
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (!in_cover[static_cast<std::size_t>(ed.u)] && !in_cover[static_cast<std::size_t>(ed.v)])
      throw CoverViolation("edge " + format_edge(g, e) + " has no endpoint in the cover; the matching is not maximal");
  }
  std::vector<Vertex> cover;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (in_cover[static_cast<std::size_t>(v)]) cover.push_back(v);
  return cover;
}

}  // namespace ueds

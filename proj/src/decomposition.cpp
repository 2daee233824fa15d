#include "ueds/decomposition.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "ueds/errors.hpp"

namespace ueds {

int TreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return static_cast<int>(w) - 1;
}

int NiceDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& node : nodes) w = std::max(w, node.bag.size());
  return static_cast<int>(w) - 1;
}

const char* to_string(NiceKind kind) {
  switch (kind) {
    case NiceKind::Leaf: return "leaf";
    case NiceKind::IntroduceVertex: return "introduce";
    case NiceKind::IntroduceEdge: return "introduce-edge";
    case NiceKind::Forget: return "forget";
    case NiceKind::Join: return "join";
  }
  return "?";
}

namespace {

std::string vname(Vertex v) { return std::to_string(v + 1); }

bool contains(const std::vector<Vertex>& sorted, Vertex v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

TreeDecomposition td_from_vertex_cover(const Graph& g, std::span<const Vertex> cover) {
  const int n = g.num_vertices();
  std::vector<char> in_cover(static_cast<std::size_t>(n), 0);
  for (Vertex v : cover) {
    if (v < 0 || v >= n) throw std::out_of_range("cover vertex out of range");
    in_cover[static_cast<std::size_t>(v)] = 1;
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (!in_cover[static_cast<std::size_t>(ed.u)] && !in_cover[static_cast<std::size_t>(ed.v)])
      throw CoverViolation("vertex set is not a cover: edge " + format_edge(g, e) + " is uncovered");
  }

  std::vector<Vertex> base;
  for (Vertex v = 0; v < n; ++v)
    if (in_cover[static_cast<std::size_t>(v)]) base.push_back(v);

  TreeDecomposition td;
  td.num_vertices = n;
  for (Vertex v = 0; v < n; ++v) {
    if (in_cover[static_cast<std::size_t>(v)]) continue;
    auto bag = base;
    bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
    td.bags.push_back(std::move(bag));
  }
  if (td.bags.empty()) td.bags.push_back(base);
  for (int i = 0; i + 1 < static_cast<int>(td.bags.size()); ++i) td.tree.emplace_back(i, i + 1);
  return td;
}

TreeDecomposition td_min_degree(const Graph& g) {
  const int n = g.num_vertices();
  TreeDecomposition td;
  td.num_vertices = n;
  if (n == 0) return td;

  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (const Edge& e : g.edges()) adj[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] =
      adj[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = 1;
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  std::vector<int> bag_of(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> order;

  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    int best_deg = n + 1;
    for (Vertex v = 0; v < n; ++v) {
      if (gone[static_cast<std::size_t>(v)]) continue;
      int d = 0;
      for (Vertex u = 0; u < n; ++u)
        if (!gone[static_cast<std::size_t>(u)] && adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) ++d;
      if (d < best_deg) best = v, best_deg = d;
    }
    std::vector<Vertex> nbrs;
    for (Vertex u = 0; u < n; ++u)
      if (!gone[static_cast<std::size_t>(u)] && adj[static_cast<std::size_t>(best)][static_cast<std::size_t>(u)])
        nbrs.push_back(u);
    for (Vertex a : nbrs)
      for (Vertex b : nbrs)
        if (a != b) adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    auto bag = nbrs;
    bag.insert(std::upper_bound(bag.begin(), bag.end(), best), best);
    bag_of[static_cast<std::size_t>(best)] = static_cast<int>(td.bags.size());
    td.bags.push_back(std::move(bag));
    gone[static_cast<std::size_t>(best)] = 1;
    order.push_back(best);
  }

  // Each bag hangs below the bag of its earliest-eliminated remaining
  // neighbour; component roots are chained together.
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  int previous_root = -1;
  for (int i = 0; i < n; ++i) {
    const Vertex v = order[static_cast<std::size_t>(i)];
    int parent = -1;
    for (Vertex u : td.bags[static_cast<std::size_t>(i)])
      if (u != v && (parent < 0 || rank[static_cast<std::size_t>(u)] < parent)) parent = rank[static_cast<std::size_t>(u)];
    if (parent >= 0) {
      td.tree.emplace_back(i, parent);
    } else {
      if (previous_root >= 0) td.tree.emplace_back(previous_root, i);
      previous_root = i;
    }
  }
  return td;
}

std::vector<std::string> validate_td(const Graph& g, const TreeDecomposition& td) {
  std::vector<std::string> out;
  const int n = g.num_vertices();
  const int b = static_cast<int>(td.bags.size());
  if (td.num_vertices != n)
    out.push_back("decomposition is for " + std::to_string(td.num_vertices) + " vertices, graph has " + std::to_string(n));
  if (b == 0) {
    if (n > 0) out.push_back("decomposition has no bags");
    return out;
  }

  std::vector<std::vector<char>> member(static_cast<std::size_t>(b), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int t = 0; t < b; ++t) {
    const auto& bag = td.bags[static_cast<std::size_t>(t)];
    for (std::size_t i = 0; i < bag.size(); ++i) {
      const Vertex v = bag[i];
      if (v < 0 || v >= n) {
        out.push_back("bag " + std::to_string(t + 1) + " holds out-of-range vertex " + vname(v));
        continue;
      }
      if (i > 0 && bag[i - 1] >= v) out.push_back("bag " + std::to_string(t + 1) + " is not sorted and duplicate-free");
      member[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)] = 1;
    }
  }

  // Tree shape.
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(b));
  bool edges_ok = true;
  for (auto [x, y] : td.tree) {
    if (x < 0 || y < 0 || x >= b || y >= b || x == y) {
      out.push_back("tree edge " + std::to_string(x + 1) + "-" + std::to_string(y + 1) + " is invalid");
      edges_ok = false;
      continue;
    }
    adj[static_cast<std::size_t>(x)].push_back(y);
    adj[static_cast<std::size_t>(y)].push_back(x);
  }
  if (static_cast<int>(td.tree.size()) != b - 1)
    out.push_back("tree has " + std::to_string(td.tree.size()) + " edges, expected " + std::to_string(b - 1));
  {
    std::vector<char> seen(static_cast<std::size_t>(b), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int s : adj[static_cast<std::size_t>(t)])
        if (!seen[static_cast<std::size_t>(s)]) {
          seen[static_cast<std::size_t>(s)] = 1;
          ++reached;
          stack.push_back(s);
        }
    }
    if (reached != b) out.push_back("tree is disconnected");
  }

  for (Vertex v = 0; v < n; ++v) {
    int bags_with = 0;
    for (int t = 0; t < b; ++t) bags_with += member[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)];
    if (bags_with == 0) {
      out.push_back("vertex " + vname(v) + " appears in no bag");
      continue;
    }
    if (!edges_ok) continue;
    int links = 0;
    for (auto [x, y] : td.tree)
      if (member[static_cast<std::size_t>(x)][static_cast<std::size_t>(v)] &&
          member[static_cast<std::size_t>(y)][static_cast<std::size_t>(v)])
        ++links;
    if (links != bags_with - 1) out.push_back("vertex " + vname(v) + ": bags containing it are not connected in the tree");
  }

  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    bool covered = false;
    for (int t = 0; t < b && !covered; ++t)
      covered = member[static_cast<std::size_t>(t)][static_cast<std::size_t>(ed.u)] &&
                member[static_cast<std::size_t>(t)][static_cast<std::size_t>(ed.v)];
    if (!covered) out.push_back("edge " + format_edge(g, e) + " is not contained in any bag");
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class NiceBuilder {
 public:
  NiceBuilder(const Graph& g, EdgePlacement placement)
      : g_(g), placement_(placement), introduced_(static_cast<std::size_t>(g.num_edges()), 0) {}

  int leaf() { return add({NiceKind::Leaf, -1, -1, {-1, -1}, {}}); }

  int introduce(int child, Vertex v) {
    auto bag = bag_of(child);
    bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
    int cur = add({NiceKind::IntroduceVertex, v, -1, {child, -1}, std::move(bag)});
    if (placement_ == EdgePlacement::Early) cur = introduce_edges_at(cur, v);
    return cur;
  }

  int forget(int child, Vertex v) {
    const int below = introduce_edges_at(child, v);
    auto bag = bag_of(below);
    bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
    return add({NiceKind::Forget, v, -1, {below, -1}, std::move(bag)});
  }

  int join(int left, int right) { return add({NiceKind::Join, -1, -1, {left, right}, bag_of(left)}); }

  int reshape(int node, const std::vector<Vertex>& target) {
    const std::vector<Vertex> current = bag_of(node);
    for (Vertex v : current)
      if (!contains(target, v)) node = forget(node, v);
    for (Vertex v : target)
      if (!contains(current, v)) node = introduce(node, v);
    return node;
  }

  NiceDecomposition finish(int root) && { return NiceDecomposition{std::move(nodes_), root}; }

 private:
  // Introduces every not-yet-introduced edge between v and the rest of the bag.
  int introduce_edges_at(int node, Vertex v) {
    std::vector<EdgeId> pending;
    for (const Incidence& inc : g_.incident(v))
      if (!introduced_[static_cast<std::size_t>(inc.edge)] && contains(bag_of(node), inc.neighbor))
        pending.push_back(inc.edge);
    std::sort(pending.begin(), pending.end());
    for (EdgeId e : pending) {
      introduced_[static_cast<std::size_t>(e)] = 1;
      node = add({NiceKind::IntroduceEdge, -1, e, {node, -1}, bag_of(node)});
    }
    return node;
  }

  const std::vector<Vertex>& bag_of(int node) const { return nodes_[static_cast<std::size_t>(node)].bag; }

  int add(NiceNode node) {
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
  }

  const Graph& g_;
  EdgePlacement placement_;
  std::vector<char> introduced_;
  std::vector<NiceNode> nodes_;
};

}  // namespace

NiceDecomposition make_nice(const Graph& g, const TreeDecomposition& td, EdgePlacement placement) {
  if (auto problems = validate_td(g, td); !problems.empty())
    throw InvalidDecomposition("tree decomposition is invalid: " + problems.front());

  NiceBuilder builder(g, placement);
  const int b = static_cast<int>(td.bags.size());
  if (b == 0) return std::move(builder).finish(builder.leaf());

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(b));
  for (auto [x, y] : td.tree) {
    adj[static_cast<std::size_t>(x)].push_back(y);
    adj[static_cast<std::size_t>(y)].push_back(x);
  }
  std::vector<int> parent(static_cast<std::size_t>(b), -1), order{0};
  std::vector<char> seen(static_cast<std::size_t>(b), 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto& nb = adj[static_cast<std::size_t>(order[i])];
    std::sort(nb.begin(), nb.end());
    for (int s : nb)
      if (!seen[static_cast<std::size_t>(s)]) {
        seen[static_cast<std::size_t>(s)] = 1;
        parent[static_cast<std::size_t>(s)] = order[i];
        order.push_back(s);
      }
  }

  std::vector<int> top(static_cast<std::size_t>(b), -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int t = *it;
    const auto& bag = td.bags[static_cast<std::size_t>(t)];
    int cur = -1;
    for (int s : adj[static_cast<std::size_t>(t)]) {
      if (s == parent[static_cast<std::size_t>(t)]) continue;
      const int branch = builder.reshape(top[static_cast<std::size_t>(s)], bag);
      cur = cur < 0 ? branch : builder.join(cur, branch);
    }
    if (cur < 0) cur = builder.reshape(builder.leaf(), bag);
    top[static_cast<std::size_t>(t)] = cur;
  }
  const int root = builder.reshape(top[0], {});
  return std::move(builder).finish(root);
}

std::vector<std::string> validate_nice(const Graph& g, const NiceDecomposition& nd) {
  std::vector<std::string> out;
  const int count = static_cast<int>(nd.nodes.size());
  const int n = g.num_vertices();
  if (count == 0 || nd.root < 0 || nd.root >= count) {
    out.push_back("decomposition has no valid root");
    return out;
  }
  auto node_name = [](int t) { return "node " + std::to_string(t + 1); };

  std::vector<int> parent(static_cast<std::size_t>(count), -1);
  bool shape_ok = true;
  for (int t = 0; t < count; ++t) {
    const NiceNode& node = nd.nodes[static_cast<std::size_t>(t)];
    for (int c : node.children) {
      if (c < 0) continue;
      if (c >= t) {
        out.push_back(node_name(t) + " lists child " + std::to_string(c + 1) + " that does not precede it");
        shape_ok = false;
      } else if (parent[static_cast<std::size_t>(c)] >= 0) {
        out.push_back(node_name(c) + " has two parents");
        shape_ok = false;
      } else {
        parent[static_cast<std::size_t>(c)] = t;
      }
    }
    for (std::size_t i = 0; i < node.bag.size(); ++i) {
      if (node.bag[i] < 0 || node.bag[i] >= n) out.push_back(node_name(t) + " holds out-of-range vertex " + vname(node.bag[i]));
      if (i > 0 && node.bag[i - 1] >= node.bag[i]) out.push_back(node_name(t) + " bag is not sorted and duplicate-free");
    }
  }
  for (int t = 0; t < count; ++t)
    if (t != nd.root && parent[static_cast<std::size_t>(t)] < 0) {
      out.push_back(node_name(t) + " is not connected to the root");
      shape_ok = false;
    }
  if (parent[static_cast<std::size_t>(nd.root)] >= 0) {
    out.push_back("root has a parent");
    shape_ok = false;
  }
  if (!nd.nodes[static_cast<std::size_t>(nd.root)].bag.empty()) out.push_back("root bag is not empty");

  std::vector<int> forget_at(static_cast<std::size_t>(n), -1), edge_at(static_cast<std::size_t>(g.num_edges()), -1);
  for (int t = 0; t < count; ++t) {
    const NiceNode& node = nd.nodes[static_cast<std::size_t>(t)];
    const int arity = (node.children[0] >= 0) + (node.children[1] >= 0);
    auto child_bag = [&](int i) -> const std::vector<Vertex>& {
      return nd.nodes[static_cast<std::size_t>(node.children[static_cast<std::size_t>(i)])].bag;
    };
    const std::string who = node_name(t) + " (" + to_string(node.kind) + ")";
    switch (node.kind) {
      case NiceKind::Leaf:
        if (arity != 0) out.push_back(who + " has children");
        if (!node.bag.empty()) out.push_back(who + " has a nonempty bag");
        break;
      case NiceKind::IntroduceVertex: {
        if (arity != 1 || node.children[0] < 0) {
          out.push_back(who + " needs exactly one child");
          break;
        }
        if (contains(child_bag(0), node.vertex)) {
          out.push_back(who + " introduces vertex " + vname(node.vertex) + " already in the child bag");
          break;
        }
        auto expect = child_bag(0);
        expect.insert(std::upper_bound(expect.begin(), expect.end(), node.vertex), node.vertex);
        if (expect != node.bag) out.push_back(who + " bag is not child bag plus " + vname(node.vertex));
        break;
      }
      case NiceKind::Forget: {
        if (arity != 1 || node.children[0] < 0) {
          out.push_back(who + " needs exactly one child");
          break;
        }
        if (!contains(child_bag(0), node.vertex)) {
          out.push_back(who + " forgets vertex " + vname(node.vertex) + " missing from the child bag");
          break;
        }
        auto expect = child_bag(0);
        expect.erase(std::lower_bound(expect.begin(), expect.end(), node.vertex));
        if (expect != node.bag) out.push_back(who + " bag is not child bag minus " + vname(node.vertex));
        if (node.vertex >= 0 && node.vertex < n) {
          if (forget_at[static_cast<std::size_t>(node.vertex)] >= 0)
            out.push_back("vertex " + vname(node.vertex) + " forgotten twice");
          forget_at[static_cast<std::size_t>(node.vertex)] = t;
        }
        break;
      }
      case NiceKind::IntroduceEdge: {
        if (arity != 1 || node.children[0] < 0) {
          out.push_back(who + " needs exactly one child");
          break;
        }
        if (node.edge < 0 || node.edge >= g.num_edges()) {
          out.push_back(who + " names a nonexistent edge");
          break;
        }
        if (child_bag(0) != node.bag) out.push_back(who + " bag differs from its child");
        const Edge& ed = g.edge(node.edge);
        if (!contains(node.bag, ed.u) || !contains(node.bag, ed.v))
          out.push_back(who + " introduces edge " + format_edge(g, node.edge) + " without both endpoints in the bag");
        if (edge_at[static_cast<std::size_t>(node.edge)] >= 0)
          out.push_back("edge " + format_edge(g, node.edge) + " introduced twice");
        edge_at[static_cast<std::size_t>(node.edge)] = t;
        break;
      }
      case NiceKind::Join:
        if (arity != 2) {
          out.push_back(who + " needs exactly two children");
          break;
        }
        if (child_bag(0) != node.bag || child_bag(1) != node.bag) out.push_back(who + " bags of the children differ");
        break;
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (forget_at[static_cast<std::size_t>(v)] < 0) out.push_back("vertex " + vname(v) + " is never forgotten");
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (edge_at[static_cast<std::size_t>(e)] < 0) out.push_back("edge " + format_edge(g, e) + " is never introduced");

  if (!shape_ok) return out;

  // Ancestor test via entry/exit times from the root.
  std::vector<int> tin(static_cast<std::size_t>(count), -1), tout(static_cast<std::size_t>(count), -1);
  {
    int clock = 0;
    std::vector<std::pair<int, int>> stack{{nd.root, 0}};
    tin[static_cast<std::size_t>(nd.root)] = clock++;
    while (!stack.empty()) {
      auto& [t, i] = stack.back();
      const auto& ch = nd.nodes[static_cast<std::size_t>(t)].children;
      if (i < 2) {
        const int c = ch[static_cast<std::size_t>(i++)];
        if (c >= 0) {
          tin[static_cast<std::size_t>(c)] = clock++;
          stack.emplace_back(c, 0);
        }
      } else {
        tout[static_cast<std::size_t>(t)] = clock++;
        stack.pop_back();
      }
    }
  }
  auto is_ancestor = [&](int a, int d) {
    return tin[static_cast<std::size_t>(a)] <= tin[static_cast<std::size_t>(d)] &&
           tout[static_cast<std::size_t>(d)] <= tout[static_cast<std::size_t>(a)];
  };
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const int at = edge_at[static_cast<std::size_t>(e)];
    if (at < 0) continue;
    for (Vertex x : {g.edge(e).u, g.edge(e).v}) {
      const int f = forget_at[static_cast<std::size_t>(x)];
      if (f >= 0 && !is_ancestor(f, at))
        out.push_back("edge " + format_edge(g, e) + " is introduced outside the subtree where " + vname(x) + " is forgotten");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == 'c') continue;
    return true;
  }
  return false;
}

}  // namespace

TreeDecomposition parse_td(std::istream& in, int expected_vertices) {
  std::string line, rest;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) throw ParseError(line_no, "missing 's td' header");
  std::istringstream header(line);
  std::string s, fmt;
  long long bags = -1, max_bag = -1, n = -1;
  if (!(header >> s >> fmt >> bags >> max_bag >> n) || s != "s" || fmt != "td" || (header >> rest))
    throw ParseError(line_no, "malformed header, expected 's td <bags> <width+1> <n>'");
  if (bags < 0 || max_bag < 0 || n < 0 || bags > (1 << 26) || n > (1 << 30))
    throw ParseError(line_no, "header counts out of range");
  if (expected_vertices >= 0 && n != expected_vertices)
    throw ParseError(line_no, "decomposition declares " + std::to_string(n) + " vertices, graph has " +
                                  std::to_string(expected_vertices));

  TreeDecomposition td;
  td.num_vertices = static_cast<int>(n);
  td.bags.resize(static_cast<std::size_t>(bags));
  std::vector<char> have(static_cast<std::size_t>(bags), 0);
  while (next_content_line(in, line, line_no)) {
    std::istringstream row(line);
    if (line.find_first_not_of(" \t") != std::string::npos && line[line.find_first_not_of(" \t")] == 'b') {
      std::string tag;
      long long id = 0;
      if (!(row >> tag >> id) || tag != "b") throw ParseError(line_no, "malformed bag line");
      if (id < 1 || id > bags) throw ParseError(line_no, "bag id " + std::to_string(id) + " out of range");
      if (have[static_cast<std::size_t>(id - 1)]++) throw ParseError(line_no, "bag " + std::to_string(id) + " listed twice");
      auto& bag = td.bags[static_cast<std::size_t>(id - 1)];
      std::string tok;
      while (row >> tok) {
        long long v = 0;
        try {
          std::size_t used = 0;
          v = std::stoll(tok, &used);
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          throw ParseError(line_no, "malformed vertex '" + tok + "'");
        }
        if (v < 1 || v > n) throw ParseError(line_no, "bag vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n));
        bag.push_back(static_cast<Vertex>(v - 1));
      }
      std::sort(bag.begin(), bag.end());
      if (std::adjacent_find(bag.begin(), bag.end()) != bag.end())
        throw ParseError(line_no, "bag " + std::to_string(id) + " repeats a vertex");
      if (static_cast<long long>(bag.size()) > max_bag)
        throw ParseError(line_no, "bag " + std::to_string(id) + " is larger than the declared width+1");
    } else {
      long long x = 0, y = 0;
      if (!(row >> x >> y) || (row >> rest)) throw ParseError(line_no, "malformed tree edge line");
      if (x < 1 || y < 1 || x > bags || y > bags) throw ParseError(line_no, "tree edge names a missing bag");
      td.tree.emplace_back(static_cast<int>(x - 1), static_cast<int>(y - 1));
    }
  }
  for (long long i = 0; i < bags; ++i)
    if (!have[static_cast<std::size_t>(i)]) throw ParseError(line_no, "bag " + std::to_string(i + 1) + " is missing");
  return td;
}

TreeDecomposition parse_td(const std::string& text, int expected_vertices) {
  std::istringstream in(text);
  return parse_td(in, expected_vertices);
}

void emit_td(std::ostream& out, const TreeDecomposition& td) {
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << td.num_vertices << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (Vertex v : td.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [x, y] : td.tree) out << x + 1 << ' ' << y + 1 << '\n';
}

std::string to_td_string(const TreeDecomposition& td) {
  std::ostringstream out;
  emit_td(out, td);
  return out.str();
}

void emit_nice(std::ostream& out, const Graph& g, const NiceDecomposition& nd) {
  out << "s nice " << nd.nodes.size() << ' ' << nd.width() + 1 << ' ' << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (std::size_t t = 0; t < nd.nodes.size(); ++t) {
    const NiceNode& node = nd.nodes[t];
    out << "n " << t + 1 << ' ' << to_string(node.kind);
    switch (node.kind) {
      case NiceKind::Leaf: break;
      case NiceKind::IntroduceVertex:
      case NiceKind::Forget: out << ' ' << node.children[0] + 1 << ' ' << node.vertex + 1; break;
      case NiceKind::IntroduceEdge:
        out << ' ' << node.children[0] + 1 << ' ' << g.edge(node.edge).u + 1 << ' ' << g.edge(node.edge).v + 1;
        break;
      case NiceKind::Join: out << ' ' << node.children[0] + 1 << ' ' << node.children[1] + 1; break;
    }
    out << '\n';
  }
  out << "r " << nd.root + 1 << '\n';
}

NiceDecomposition parse_nice(std::istream& in, const Graph& g) {
  std::string line, rest;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) throw ParseError(line_no, "missing 's nice' header");
  std::istringstream header(line);
  std::string s, fmt;
  long long count = -1, max_bag = -1, n = -1, m = -1;
  if (!(header >> s >> fmt >> count >> max_bag >> n >> m) || s != "s" || fmt != "nice" || (header >> rest))
    throw ParseError(line_no, "malformed header, expected 's nice <nodes> <width+1> <n> <m>'");
  if (n != g.num_vertices() || m != g.num_edges()) throw ParseError(line_no, "header does not match the graph");
  if (count < 0 || count > (1 << 28)) throw ParseError(line_no, "node count out of range");

  NiceDecomposition nd;
  nd.nodes.reserve(static_cast<std::size_t>(count));
  auto vertex = [&](long long v) {
    if (v < 1 || v > n) throw ParseError(line_no, "vertex " + std::to_string(v) + " out of range");
    return static_cast<Vertex>(v - 1);
  };
  auto child = [&](long long c) {
    if (c < 1 || c > static_cast<long long>(nd.nodes.size()))
      throw ParseError(line_no, "child " + std::to_string(c) + " does not precede its parent");
    return static_cast<int>(c - 1);
  };
  while (next_content_line(in, line, line_no)) {
    std::istringstream row(line);
    std::string tag;
    row >> tag;
    if (tag == "r") {
      long long r = 0;
      if (!(row >> r) || r < 1 || r > static_cast<long long>(nd.nodes.size())) throw ParseError(line_no, "bad root line");
      nd.root = static_cast<int>(r - 1);
      continue;
    }
    long long id = 0;
    std::string kind;
    if (tag != "n" || !(row >> id >> kind)) throw ParseError(line_no, "malformed node line");
    if (id != static_cast<long long>(nd.nodes.size()) + 1) throw ParseError(line_no, "node ids must be consecutive");
    NiceNode node;
    long long a = 0, b = 0, c = 0;
    if (kind == "leaf") {
      node.kind = NiceKind::Leaf;
    } else if (kind == "introduce" || kind == "forget") {
      if (!(row >> a >> b)) throw ParseError(line_no, "malformed " + kind + " node");
      node.kind = kind == "forget" ? NiceKind::Forget : NiceKind::IntroduceVertex;
      node.children[0] = child(a);
      node.vertex = vertex(b);
    } else if (kind == "introduce-edge") {
      if (!(row >> a >> b >> c)) throw ParseError(line_no, "malformed introduce-edge node");
      node.kind = NiceKind::IntroduceEdge;
      node.children[0] = child(a);
      auto e = g.find_edge(vertex(b), vertex(c));
      if (!e) throw ParseError(line_no, "introduced edge is not in the graph");
      node.edge = *e;
    } else if (kind == "join") {
      if (!(row >> a >> b)) throw ParseError(line_no, "malformed join node");
      node.kind = NiceKind::Join;
      node.children = {child(a), child(b)};
    } else {
      throw ParseError(line_no, "unknown node kind '" + kind + "'");
    }
    if (row >> rest) throw ParseError(line_no, "trailing tokens on node line");

    // Bags are implied by the node kinds.
    const auto& below = node.children[0] >= 0 ? nd.nodes[static_cast<std::size_t>(node.children[0])].bag : node.bag;
    node.bag = below;
    if (node.kind == NiceKind::IntroduceVertex && !contains(node.bag, node.vertex))
      node.bag.insert(std::upper_bound(node.bag.begin(), node.bag.end(), node.vertex), node.vertex);
    if (node.kind == NiceKind::Forget && contains(node.bag, node.vertex))
      node.bag.erase(std::lower_bound(node.bag.begin(), node.bag.end(), node.vertex));
    nd.nodes.push_back(std::move(node));
  }
  if (static_cast<long long>(nd.nodes.size()) != count)
    throw ParseError(line_no, "declared " + std::to_string(count) + " nodes, found " + std::to_string(nd.nodes.size()));
  if (nd.root < 0) throw ParseError(line_no, "missing root line");
  return nd;
}

}  // namespace ueds

#include "ueds/dp.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ueds/errors.hpp"

namespace ueds {

const char* to_string(DpColor c) {
  switch (c) {
    case DpColor::Black: return "b";
    case DpColor::Purple: return "p";
    case DpColor::Green: return "g";
    case DpColor::Red0: return "r0";
    case DpColor::Red1: return "r1";
  }
  return "?";
}

void BagState::set_color(int pos, DpColor c) {
  colors_ = (colors_ & ~(std::uint64_t{7} << (3 * pos))) | (static_cast<std::uint64_t>(c) << (3 * pos));
}

void BagState::set_incidence(int pos, int y) {
  incidences_ = (incidences_ & ~(std::uint64_t{3} << (2 * pos))) | (static_cast<std::uint64_t>(y) << (2 * pos));
}

namespace {

std::uint64_t open_slot(std::uint64_t word, int pos, int bits) {
  const int cut = pos * bits;
  const std::uint64_t low = cut == 0 ? 0 : word & ((std::uint64_t{1} << cut) - 1);
  const std::uint64_t high = cut >= 64 ? 0 : word >> cut;
  return low | (cut + bits >= 64 ? 0 : high << (cut + bits));
}

std::uint64_t close_slot(std::uint64_t word, int pos, int bits) {
  const int cut = pos * bits;
  const std::uint64_t low = cut == 0 ? 0 : word & ((std::uint64_t{1} << cut) - 1);
  const std::uint64_t high = cut + bits >= 64 ? 0 : word >> (cut + bits);
  return low | (cut >= 64 ? 0 : high << cut);
}

}  // namespace

BagState BagState::inserted(int pos, DpColor c, int y) const {
  BagState s;
  s.colors_ = open_slot(colors_, pos, 3);
  s.incidences_ = open_slot(incidences_, pos, 2);
  s.set_color(pos, c);
  s.set_incidence(pos, y);
  return s;
}

BagState BagState::erased(int pos) const {
  BagState s;
  s.colors_ = close_slot(colors_, pos, 3);
  s.incidences_ = close_slot(incidences_, pos, 2);
  return s;
}

namespace {

struct TupleHash {
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    return x ^ (x >> 33);
  }
  std::size_t operator()(const DpTuple& t) const {
    std::uint64_t h = mix(t.state.packed_colors());
    h = mix(h ^ t.state.packed_incidences());
    const std::uint64_t counters = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.n_r)) << 48) ^
                                   (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.n_r1)) << 32) ^
                                   (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.n_c)) << 16) ^
                                   static_cast<std::uint32_t>(t.alpha) ^
                                   (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.beta)) << 56);
    return static_cast<std::size_t>(mix(h ^ counters));
  }
};

// Accumulates tuples, keeping the first backpointer of each distinct tuple.
class TableBuilder {
 public:
  explicit TableBuilder(std::size_t expected) { index_.reserve(expected); }

  void add(const DpTuple& t, Backpointer from) {
    auto [it, inserted] = index_.emplace(t, static_cast<std::uint32_t>(table_.tuples.size()));
    if (!inserted) return;
    table_.tuples.push_back(t);
    table_.from.push_back(from);
  }

  NodeTable take() && { return std::move(table_); }

 private:
  NodeTable table_;
  std::unordered_map<DpTuple, std::uint32_t, TupleHash> index_;
};

int position_in(std::span<const Vertex> bag, Vertex v) {
  auto it = std::lower_bound(bag.begin(), bag.end(), v);
  if (it == bag.end() || *it != v) return -1;
  return static_cast<int>(it - bag.begin());
}

bool single_edge_color(DpColor c) { return c == DpColor::Purple || is_red(c); }

bool allowed_solution_pair(DpColor a, DpColor b) {
  if (a == DpColor::Purple && b == DpColor::Purple) return true;
  if (a == DpColor::Green && is_red(b)) return true;
  if (b == DpColor::Green && is_red(a)) return true;
  return false;
}

bool meets_condition(DpColor c, int y) {
  switch (c) {
    case DpColor::Black: return y == 0;
    case DpColor::Green: return y >= 2;
    default: return y == 1;
  }
}

}  // namespace

NodeTable dp_leaf() {
  NodeTable t;
  t.tuples.push_back(DpTuple{});
  t.from.push_back(Backpointer{});
  return t;
}

NodeTable dp_introduce_vertex(const NodeTable& child, std::span<const Vertex> child_bag, Vertex v,
                              const DpOptions& /*options*/) {
  if (position_in(child_bag, v) >= 0) throw InvalidDecomposition("introduced vertex already in the bag");
  if (static_cast<int>(child_bag.size()) + 1 > BagState::kMaxBag)
    throw ResourceCapExceeded("bag exceeds " + std::to_string(BagState::kMaxBag) + " vertices");
  const int pos = static_cast<int>(std::lower_bound(child_bag.begin(), child_bag.end(), v) - child_bag.begin());
  TableBuilder out(child.size() * 4);
  for (std::uint32_t i = 0; i < child.size(); ++i) {
    const DpTuple& t = child.tuples[i];
    // An isolated vertex cannot already have a black neighbour, so never Red1.
    for (DpColor c : {DpColor::Black, DpColor::Purple, DpColor::Green, DpColor::Red0}) {
      DpTuple next = t;
      next.state = t.state.inserted(pos, c, 0);
      if (c == DpColor::Red0) ++next.n_r;
      out.add(next, {i, 0, false});
    }
  }
  return std::move(out).take();
}

NodeTable dp_introduce_edge(const NodeTable& child, std::span<const Vertex> bag, Vertex u, Vertex v,
                            const DpOptions& options) {
  const int pu = position_in(bag, u);
  const int pv = position_in(bag, v);
  if (pu < 0 || pv < 0 || pu == pv) throw InvalidDecomposition("introduced edge endpoints not in the bag");
  TableBuilder out(child.size() * 2);
  for (std::uint32_t i = 0; i < child.size(); ++i) {
    const DpTuple& t = child.tuples[i];
    const DpColor cu = t.state.color(pu);
    const DpColor cv = t.state.color(pv);

    // Edge left out of A_t.
    {
      DpTuple next = t;
      if (options.red_upgrade) {
        if (cu == DpColor::Red0 && cv == DpColor::Black) {
          next.state.set_color(pu, DpColor::Red1);
          ++next.n_r1;
        } else if (cv == DpColor::Red0 && cu == DpColor::Black) {
          next.state.set_color(pv, DpColor::Red1);
          ++next.n_r1;
        }
      }
      if (cu == DpColor::Black && cv == DpColor::Black) ++next.beta;
      if (!(options.prune && next.beta > 0)) out.add(next, {i, 0, false});
    }

    // Edge put into A_t.
    if (allowed_solution_pair(cu, cv)) {
      DpTuple next = t;
      const int yu = std::min(t.state.incidence(pu) + 1, 2);
      const int yv = std::min(t.state.incidence(pv) + 1, 2);
      next.state.set_incidence(pu, yu);
      next.state.set_incidence(pv, yv);
      ++next.alpha;
      const bool overfull = (single_edge_color(cu) && yu > 1) || (single_edge_color(cv) && yv > 1);
      if (!(options.prune && overfull)) out.add(next, {i, 0, true});
    }
  }
  return std::move(out).take();
}

NodeTable dp_forget(const NodeTable& child, std::span<const Vertex> child_bag, Vertex v, const DpOptions& options) {
  const int pos = position_in(child_bag, v);
  if (pos < 0) throw InvalidDecomposition("forgotten vertex not in the bag");
  TableBuilder out(child.size());
  for (std::uint32_t i = 0; i < child.size(); ++i) {
    const DpTuple& t = child.tuples[i];
    const DpColor c = t.state.color(pos);
    const bool ok = meets_condition(c, t.state.incidence(pos));
    // All edges at v are already introduced, so a failed condition or a
    // missing black neighbour is final.
    if (options.prune && (!ok || c == DpColor::Red0)) continue;
    DpTuple next = t;
    next.state = t.state.erased(pos);
    if (ok) ++next.n_c;
    out.add(next, {i, 0, false});
  }
  return std::move(out).take();
}

NodeTable dp_join(const NodeTable& left, std::span<const Vertex> left_bag, const NodeTable& right,
                  std::span<const Vertex> right_bag, const DpOptions& options) {
  if (!std::equal(left_bag.begin(), left_bag.end(), right_bag.begin(), right_bag.end()))
    throw BagMismatch("join children have different bags");
  const int width = static_cast<int>(left_bag.size());

  // Red0 and Red1 merge, so bucket the right side by colours with red flags folded.
  auto shape = [width](const BagState& s) {
    std::uint64_t key = s.packed_colors();
    for (int p = 0; p < width; ++p)
      if (s.color(p) == DpColor::Red1) key = (key & ~(std::uint64_t{7} << (3 * p))) | (std::uint64_t{3} << (3 * p));
    return key;
  };
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  for (std::uint32_t j = 0; j < right.size(); ++j) buckets[shape(right.tuples[j].state)].push_back(j);

  TableBuilder out(std::max(left.size(), right.size()));
  for (std::uint32_t i = 0; i < left.size(); ++i) {
    const DpTuple& a = left.tuples[i];
    auto hit = buckets.find(shape(a.state));
    if (hit == buckets.end()) continue;
    for (std::uint32_t j : hit->second) {
      const DpTuple& b = right.tuples[j];
      DpTuple next;
      next.n_r = a.n_r + b.n_r;
      next.n_r1 = a.n_r1 + b.n_r1;
      next.n_c = a.n_c + b.n_c;
      next.alpha = a.alpha + b.alpha;
      next.beta = a.beta + b.beta;
      bool dead = false;
      for (int p = 0; p < width; ++p) {
        const DpColor ca = a.state.color(p);
        const DpColor cb = b.state.color(p);
        DpColor c = ca;
        if (is_red(ca)) {
          --next.n_r;
          if (ca == DpColor::Red1 && cb == DpColor::Red1) --next.n_r1;
          c = (ca == DpColor::Red1 || cb == DpColor::Red1) ? DpColor::Red1 : DpColor::Red0;
        }
        const int y = std::min(a.state.incidence(p) + b.state.incidence(p), 2);
        if (single_edge_color(c) && y > 1) dead = true;
        next.state.set_color(p, c);
        next.state.set_incidence(p, y);
      }
      if (options.prune && (dead || next.beta > 0)) continue;
      out.add(next, {i, j, false});
    }
  }
  return std::move(out).take();
}

long double table_size_bound(int width, int n, int m) {
  return std::pow(15.0L, static_cast<long double>(width + 1)) * std::pow(static_cast<long double>(n) + 1, 3.0L) *
         std::pow(static_cast<long double>(m) + 1, 2.0L);
}

DpResult run_dp(const Graph& g, const NiceDecomposition& nd, const DpOptions& options) {
  if (auto problems = validate_nice(g, nd); !problems.empty())
    throw InvalidDecomposition("nice decomposition is invalid: " + problems.front());
  DpResult result;
  result.width = nd.width();
  if (result.width + 1 > BagState::kMaxBag)
    throw ResourceCapExceeded("decomposition width " + std::to_string(result.width) + " exceeds the engine limit of " +
                              std::to_string(BagState::kMaxBag - 1));

  const std::size_t count = nd.nodes.size();
  std::vector<NodeTable> tables(count);
  for (std::size_t t = 0; t < count; ++t) {
    const NiceNode& node = nd.nodes[t];
    auto child_node = [&](int i) -> const NiceNode& {
      return nd.nodes[static_cast<std::size_t>(node.children[static_cast<std::size_t>(i)])];
    };
    auto child_table = [&](int i) -> const NodeTable& {
      return tables[static_cast<std::size_t>(node.children[static_cast<std::size_t>(i)])];
    };
    switch (node.kind) {
      case NiceKind::Leaf: tables[t] = dp_leaf(); break;
      case NiceKind::IntroduceVertex:
        tables[t] = dp_introduce_vertex(child_table(0), child_node(0).bag, node.vertex, options);
        break;
      case NiceKind::IntroduceEdge:
        tables[t] = dp_introduce_edge(child_table(0), node.bag, g.edge(node.edge).u, g.edge(node.edge).v, options);
        break;
      case NiceKind::Forget: tables[t] = dp_forget(child_table(0), child_node(0).bag, node.vertex, options); break;
      case NiceKind::Join:
        tables[t] = dp_join(child_table(0), child_node(0).bag, child_table(1), child_node(1).bag, options);
        break;
    }
    result.stats.push_back({static_cast<int>(t), node.kind, tables[t].size()});
    result.max_table = std::max(result.max_table, tables[t].size());
    if (!options.keep_tables) {
      for (int c : node.children)
        if (c >= 0) tables[static_cast<std::size_t>(c)] = NodeTable{};
    }
  }

  const NodeTable& root = tables[static_cast<std::size_t>(nd.root)];
  bool found = false;
  for (std::uint32_t i = 0; i < root.size(); ++i) {
    const DpTuple& t = root.tuples[i];
    if (t.n_r != t.n_r1 || t.n_c != g.num_vertices() || t.beta != 0) continue;
    if (!found || t.alpha > result.gamma_prime) {
      result.gamma_prime = t.alpha;
      result.root_tuple = i;
      found = true;
    }
  }
  if (!found) throw Error("dynamic program found no accepting root tuple");
  if (options.keep_tables) result.tables = std::move(tables);
  return result;
}

EdgeSet extract_witness(const Graph& g, const NiceDecomposition& nd, const DpResult& result) {
  if (result.tables.size() != nd.nodes.size())
    throw PreconditionViolated("witness extraction needs the tables kept by run_dp");
  EdgeSet witness(g.num_edges());
  std::vector<std::pair<int, std::uint32_t>> stack{{nd.root, result.root_tuple}};
  while (!stack.empty()) {
    auto [t, i] = stack.back();
    stack.pop_back();
    const NiceNode& node = nd.nodes[static_cast<std::size_t>(t)];
    const Backpointer& from = result.tables[static_cast<std::size_t>(t)].from.at(i);
    if (node.kind == NiceKind::IntroduceEdge && from.took_edge) witness.insert(node.edge);
    if (node.children[0] >= 0) stack.emplace_back(node.children[0], from.first);
    if (node.children[1] >= 0) stack.emplace_back(node.children[1], from.second);
  }
  return witness;
}

std::vector<std::string> format_diagnostics(const DpResult& result) {
  std::vector<std::string> lines;
  lines.reserve(result.stats.size() + 1);
  for (const DpNodeStat& s : result.stats)
    lines.push_back("node=" + std::to_string(s.node + 1) + " type=" + to_string(s.kind) +
                    " tuples=" + std::to_string(s.tuples));
  lines.push_back("gamma_prime=" + std::to_string(result.gamma_prime));
  return lines;
}

}  // namespace ueds

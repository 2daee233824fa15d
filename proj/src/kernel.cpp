#include "ueds/kernel.hpp"

#include <algorithm>

#include "ueds/errors.hpp"

namespace ueds {

const char* to_string(VertexColor c) {
  switch (c) {
    case VertexColor::Blue: return "blue";
    case VertexColor::Purple: return "purple";
    case VertexColor::Red: return "red";
    case VertexColor::Green: return "green";
  }
  return "?";
}

VertexColoring color_vertices(const Graph& g) {
  const int n = g.num_vertices();
  VertexColoring c;
  c.color.assign(static_cast<std::size_t>(n), VertexColor::Green);
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) == 0) throw PreconditionViolated("vertex " + std::to_string(v + 1) + " is isolated");
    if (g.degree(v) == 1) c.color[static_cast<std::size_t>(v)] = VertexColor::Blue;
  }
  auto is = [&](Vertex v, VertexColor col) { return c.color[static_cast<std::size_t>(v)] == col; };
  for (Vertex v = 0; v < n; ++v) {
    if (is(v, VertexColor::Blue)) continue;
    for (const Incidence& inc : g.incident(v))
      if (is(inc.neighbor, VertexColor::Blue)) c.color[static_cast<std::size_t>(v)] = VertexColor::Purple;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!is(v, VertexColor::Green)) continue;
    const auto inc = g.incident(v);
    if (std::all_of(inc.begin(), inc.end(), [&](const Incidence& i) { return is(i.neighbor, VertexColor::Purple); }))
      c.color[static_cast<std::size_t>(v)] = VertexColor::Red;
  }
  for (Vertex v = 0; v < n; ++v) {
    switch (c.color[static_cast<std::size_t>(v)]) {
      case VertexColor::Blue: c.blue.push_back(v); break;
      case VertexColor::Purple: c.purple.push_back(v); break;
      case VertexColor::Red: c.red.push_back(v); break;
      case VertexColor::Green: c.green.push_back(v); break;
    }
  }
  return c;
}

KernelInstance KernelInstance::of(const Graph& g, int k) {
  KernelInstance in{g, k, {}};
  in.original.resize(static_cast<std::size_t>(g.num_vertices()));
  for (Vertex v = 0; v < g.num_vertices(); ++v) in.original[static_cast<std::size_t>(v)] = v;
  return in;
}

KernelInstance KernelInstance::without(std::span<const Vertex> removed, int new_k) const {
  std::vector<char> drop(static_cast<std::size_t>(graph.num_vertices()), 0);
  for (Vertex v : removed) drop.at(static_cast<std::size_t>(v)) = 1;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < graph.num_vertices(); ++v)
    if (!drop[static_cast<std::size_t>(v)]) keep.push_back(v);
  std::vector<Vertex> old_id;
  KernelInstance out{graph.induced_subgraph(keep, &old_id), new_k, {}};
  out.original.reserve(old_id.size());
  for (Vertex v : old_id) out.original.push_back(original[static_cast<std::size_t>(v)]);
  return out;
}

std::string TraceEntry::to_string() const {
  std::string s = "rule=" + std::to_string(rule) + " action=";
  switch (action) {
    case Action::DeleteVertex: s += "delete-vertex " + std::to_string(u + 1); break;
    case Action::DeleteEdge: s += "delete-edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")"; break;
    case Action::DecideYes: s += "decide-yes"; break;
  }
  return s + " n=" + std::to_string(n) + " k=" + std::to_string(k);
}

std::int64_t kernel_vertex_bound(int k) {
  const auto kk = static_cast<std::int64_t>(k);
  return 4 * kk * kk - 2;
}

namespace {

// Deletes `victims` one at a time so every trace line carries the running n.
RuleStep delete_each(const KernelInstance& in, int rule, std::span<const Vertex> victims) {
  RuleStep step{in.without(victims, in.k), {}};
  int n = in.graph.num_vertices();
  for (Vertex v : victims)
    step.trace.push_back({rule, TraceEntry::Action::DeleteVertex, in.original[static_cast<std::size_t>(v)], -1, --n, in.k});
  return step;
}

}  // namespace

std::optional<RuleStep> rule1_isolated_vertex(const KernelInstance& in) {
  for (Vertex v = 0; v < in.graph.num_vertices(); ++v) {
    if (in.graph.degree(v) == 0) {
      const Vertex victim[] = {v};
      return delete_each(in, 1, victim);
    }
  }
  return std::nullopt;
}

std::optional<RuleStep> rule2_isolated_edge(const KernelInstance& in) {
  const Graph& g = in.graph;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (g.degree(ed.u) == 1 && g.degree(ed.v) == 1) {
      const Vertex victims[] = {ed.u, ed.v};
      RuleStep step{in.without(victims, in.k - 1), {}};
      step.trace.push_back({2, TraceEntry::Action::DeleteEdge, in.original[static_cast<std::size_t>(ed.u)],
                            in.original[static_cast<std::size_t>(ed.v)], step.instance.graph.num_vertices(), in.k - 1});
      return step;
    }
  }
  return std::nullopt;
}

std::optional<RuleStep> rule3_prune_blue_twins(const KernelInstance& in) {
  const Graph& g = in.graph;
  const VertexColoring col = color_vertices(g);
  for (Vertex p : col.purple) {
    std::vector<Vertex> blue;
    for (const Incidence& inc : g.incident(p))
      if (col.color[static_cast<std::size_t>(inc.neighbor)] == VertexColor::Blue) blue.push_back(inc.neighbor);
    if (blue.size() < 2) continue;
    std::sort(blue.begin(), blue.end());
    return delete_each(in, 3, std::span<const Vertex>(blue).subspan(1));
  }
  return std::nullopt;
}

std::optional<DecidedYes> rule4_big_green(const KernelInstance& in) {
  const VertexColoring col = color_vertices(in.graph);
  for (Vertex v : col.green) {
    if (static_cast<std::int64_t>(in.graph.degree(v)) >= 2 * static_cast<std::int64_t>(in.k))
      return DecidedYes{4, "green vertex " + std::to_string(in.original[static_cast<std::size_t>(v)] + 1) +
                               " has degree " + std::to_string(in.graph.degree(v)) + " >= 2k"};
  }
  return std::nullopt;
}

std::optional<DecidedYes> rule5_many_blue(const KernelInstance& in) {
  const VertexColoring col = color_vertices(in.graph);
  if (static_cast<int>(col.blue.size()) >= in.k)
    return DecidedYes{5, std::to_string(col.blue.size()) + " blue vertices give a matching of size >= k"};
  return std::nullopt;
}

std::optional<RuleStep> rule6_remove_red(const KernelInstance& in) {
  const VertexColoring col = color_vertices(in.graph);
  if (col.red.empty()) return std::nullopt;
  return delete_each(in, 6, col.red);
}

std::optional<DecidedYes> rule7_size_bound(const KernelInstance& in) {
  if (rule1_isolated_vertex(in) || rule2_isolated_edge(in) || rule3_prune_blue_twins(in) || rule4_big_green(in) ||
      rule5_many_blue(in) || rule6_remove_red(in))
    throw PreconditionViolated("rule 7 requires rules 1-6 to be exhausted");
  if (static_cast<std::int64_t>(in.graph.num_vertices()) > kernel_vertex_bound(in.k))
    return DecidedYes{7, std::to_string(in.graph.num_vertices()) + " vertices exceed 4k^2-2 = " +
                             std::to_string(kernel_vertex_bound(in.k))};
  return std::nullopt;
}

KernelOutcome kernelize(const Graph& g, int k) {
  if (k < 0) throw PreconditionViolated("kernelize needs k >= 0");
  KernelInstance cur = KernelInstance::of(g, k);
  std::vector<TraceEntry> trace;

  auto decide = [&](DecidedYes d) {
    trace.push_back({d.rule, TraceEntry::Action::DecideYes, -1, -1, cur.graph.num_vertices(), cur.k});
    return KernelOutcome{std::move(d), std::move(trace)};
  };
  auto take = [&](RuleStep step) {
    trace.insert(trace.end(), step.trace.begin(), step.trace.end());
    cur = std::move(step.instance);
  };

  while (true) {
    if (cur.k <= 0) return decide({0, "parameter dropped to " + std::to_string(cur.k)});
    if (auto s = rule1_isolated_vertex(cur)) {
      take(std::move(*s));
      continue;
    }
    if (auto s = rule2_isolated_edge(cur)) {
      take(std::move(*s));
      continue;
    }
    if (auto s = rule3_prune_blue_twins(cur)) {
      take(std::move(*s));
      continue;
    }
    if (auto d = rule4_big_green(cur)) return decide(std::move(*d));
    if (auto d = rule5_many_blue(cur)) return decide(std::move(*d));
    if (auto s = rule6_remove_red(cur)) {
      take(std::move(*s));
      continue;
    }
    if (static_cast<std::int64_t>(cur.graph.num_vertices()) > kernel_vertex_bound(cur.k))
      return decide({7, std::to_string(cur.graph.num_vertices()) + " vertices exceed 4k^2-2 = " +
                            std::to_string(kernel_vertex_bound(cur.k))});
    break;
  }
  return KernelOutcome{KernelOutcome::Reduced{std::move(cur)}, std::move(trace)};
}

}  // namespace ueds

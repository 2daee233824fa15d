#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ueds/graph.hpp"

namespace ueds {

enum class VertexColor : std::uint8_t { Blue, Purple, Red, Green };

const char* to_string(VertexColor c);

/// Blue: degree 1. Purple: not blue, adjacent to a blue vertex. Red: neither,
/// and every neighbour purple. Green: the rest.
struct VertexColoring {
  std::vector<VertexColor> color;
  std::vector<Vertex> blue, purple, red, green;
};

/// Throws PreconditionViolated when `g` has an isolated vertex.
VertexColoring color_vertices(const Graph& g);

/// A graph together with the parameter and the original label of each vertex.
struct KernelInstance {
  Graph graph;
  int k = 0;
  std::vector<Vertex> original;

  static KernelInstance of(const Graph& g, int k);
  /// Drops `removed` (current ids), keeping labels of the survivors.
  KernelInstance without(std::span<const Vertex> removed, int new_k) const;
};

struct TraceEntry {
  enum class Action { DeleteVertex, DeleteEdge, DecideYes };
  int rule = 0;
  Action action = Action::DeleteVertex;
  /// Original labels, 0-based; -1 when unused.
  Vertex u = -1;
  Vertex v = -1;
  int n = 0;
  int k = 0;

  /// "rule=<id> action=<delete-vertex v | delete-edge (u,v) | decide-yes> n=<n'> k=<k'>"
  std::string to_string() const;
};

struct RuleStep {
  KernelInstance instance;
  std::vector<TraceEntry> trace;
};

struct DecidedYes {
  int rule = 0;
  std::string hint;
};

std::optional<RuleStep> rule1_isolated_vertex(const KernelInstance& in);
std::optional<RuleStep> rule2_isolated_edge(const KernelInstance& in);
/// Keeps the lowest-numbered blue neighbour of the lowest-numbered purple vertex
/// that has two or more.
std::optional<RuleStep> rule3_prune_blue_twins(const KernelInstance& in);
std::optional<DecidedYes> rule4_big_green(const KernelInstance& in);
std::optional<DecidedYes> rule5_many_blue(const KernelInstance& in);
std::optional<RuleStep> rule6_remove_red(const KernelInstance& in);
/// Requires rules 1-6 to be inapplicable (PreconditionViolated otherwise).
std::optional<DecidedYes> rule7_size_bound(const KernelInstance& in);

/// 4k^2 - 2.
std::int64_t kernel_vertex_bound(int k);

struct KernelOutcome {
  struct Reduced {
    KernelInstance instance;
  };
  std::variant<Reduced, DecidedYes> result;
  std::vector<TraceEntry> trace;

  bool decided_yes() const { return std::holds_alternative<DecidedYes>(result); }
  const KernelInstance& reduced() const { return std::get<Reduced>(result).instance; }
  const DecidedYes& decision() const { return std::get<DecidedYes>(result); }
};

/// Applies the lowest-numbered applicable rule until none applies. k <= 0 at
/// any point decides yes.
KernelOutcome kernelize(const Graph& g, int k);

}  // namespace ueds

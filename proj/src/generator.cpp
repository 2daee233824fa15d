#include "ueds/generator.hpp"

#include <cmath>
#include <sstream>

#include "ueds/errors.hpp"

namespace ueds {

Family parse_family(const std::string& name) {
  if (name == "gnp") return Family::Gnp;
  if (name == "path") return Family::Path;
  if (name == "cycle") return Family::Cycle;
  if (name == "star") return Family::Star;
  if (name == "tree") return Family::Tree;
  throw InvalidSpec("unknown family '" + name + "' (gnp, path, cycle, star, tree)");
}

const char* to_string(Family f) {
  switch (f) {
    case Family::Gnp: return "gnp";
    case Family::Path: return "path";
    case Family::Cycle: return "cycle";
    case Family::Star: return "star";
    case Family::Tree: return "tree";
  }
  return "?";
}

Graph generate(const GenSpec& spec) {
  if (spec.n < 1) throw InvalidSpec("n must be at least 1");
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw InvalidSpec("p must lie in [0, 1]");
  const int n = spec.n;
  Graph g(n);
  switch (spec.family) {
    case Family::Gnp: {
      SplitMix64 rng(spec.seed);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
          if (rng.uniform() < spec.p) g.add_edge(u, v);
      break;
    }
    case Family::Path:
      for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
      break;
    case Family::Cycle:
      if (n < 3) throw InvalidSpec("a cycle needs n >= 3");
      for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
      g.add_edge(n - 1, 0);
      break;
    case Family::Star:
      for (Vertex v = 1; v < n; ++v) g.add_edge(0, v);
      break;
    case Family::Tree: {
      SplitMix64 rng(spec.seed);
      for (Vertex v = 1; v < n; ++v) g.add_edge(static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(v))), v);
      break;
    }
  }
  return g;
}

std::string describe(const GenSpec& spec) {
  std::ostringstream out;
  out << "ueds gen --family " << to_string(spec.family) << " --n " << spec.n;
  if (spec.family == Family::Gnp) out << " --p " << spec.p;
  if (spec.family == Family::Gnp || spec.family == Family::Tree) out << " --seed " << spec.seed;
  return out.str();
}

}  // namespace ueds

#pragma once

#include <cstdint>
#include <string>

#include "ueds/graph.hpp"

namespace ueds {

/// SplitMix64. Reference stream: state += 0x9E3779B97F4A7C15, then the
/// output mix (z ^ z>>30) * 0xBF58476D1CE4E5B9, (z ^ z>>27) * 0x94D049BB133111EB, z ^ z>>31.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Top 53 bits as a double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound) by modulo reduction (bound > 0).
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

enum class Family { Gnp, Path, Cycle, Star, Tree };

struct GenSpec {
  Family family = Family::Gnp;
  int n = 1;
  double p = 0.5;
  std::uint64_t seed = 0;
};

Family parse_family(const std::string& name);
const char* to_string(Family f);

/// gnp: pairs (u, v), u < v, in lexicographic order, each kept when uniform() < p.
/// tree: for v = 1..n-1 (0-based), edge (below(v), v).
/// path, cycle, star (centre 1) ignore p and seed. Throws InvalidSpec.
Graph generate(const GenSpec& spec);

/// Command line that regenerates the instance.
std::string describe(const GenSpec& spec);

}  // namespace ueds

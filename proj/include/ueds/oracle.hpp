#pragma once

#include <cstdint>
#include <functional>

#include "ueds/graph.hpp"

namespace ueds {

/// Brute-force ground truth for small instances.
struct OracleOptions {
  /// Instances with more edges are refused with InstanceTooLarge. Hard ceiling 64.
  int max_edges = 22;
};

struct OracleResult {
  int gamma_prime = 0;
  /// Numerically smallest mask among the maximum-size minimal EDS.
  EdgeSet witness;
  std::uint64_t count_minimal = 0;
};

/// Calls `visit` for every minimal edge dominating set of `g`, each exactly once,
/// in ascending mask order (bit i = EdgeId i). The empty set is reported only
/// for edgeless graphs.
void enumerate_minimal_eds(const Graph& g, const std::function<void(const EdgeSet&)>& visit,
                           const OracleOptions& options = {});

OracleResult upper_eds_exact(const Graph& g, const OracleOptions& options = {});

/// gamma'(g) >= k. Always true for k <= 0.
bool decide(const Graph& g, int k, const OracleOptions& options = {});

}  // namespace ueds

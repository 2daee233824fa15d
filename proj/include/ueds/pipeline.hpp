#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ueds/decomposition.hpp"
#include "ueds/dp.hpp"
#include "ueds/graph.hpp"
#include "ueds/kernel.hpp"

namespace ueds {

enum class Stage { MatchingEarlyYes, KernelDecided, Dp };
const char* to_string(Stage s);

enum class DecompositionMethod {
  /// Path of bags C + {v} over a greedy-matching vertex cover C.
  Cover,
  /// Greedy min-degree elimination.
  MinDegree,
  /// Whichever of the two is narrower; Cover on ties.
  Narrowest,
};
DecompositionMethod parse_decomposition_method(const std::string& name);
const char* to_string(DecompositionMethod m);

struct SolveOptions {
  bool kernel = true;
  bool want_witness = false;
  /// Largest allowed bag size (width + 1); larger decompositions raise ResourceCapExceeded.
  int max_bag = 14;
  DecompositionMethod decomposition = DecompositionMethod::Narrowest;
  EdgePlacement placement = EdgePlacement::Late;
  DpOptions dp;
};

struct DpSummary {
  DecompositionMethod decomposition = DecompositionMethod::Cover;
  int width = -1;
  std::size_t nice_nodes = 0;
  std::size_t max_table = 0;
  std::vector<std::string> diagnostics;
};

struct SolveReport {
  std::string instance;
  int k = 0;
  bool decision = false;
  Stage stage = Stage::Dp;
  /// For the graph the DP ran on: the kernel when `on_reduced`, else the input.
  std::optional<int> gamma_prime;
  std::optional<std::vector<std::pair<Vertex, Vertex>>> witness;  // original labels, 0-based
  /// The DP ran on a kernel that differs from the input; gamma_prime and the
  /// witness then refer to that kernel and k_reduced applies.
  bool on_reduced = false;
  int k_reduced = 0;
  int reduced_vertices = 0;
  int reduced_edges = 0;
  std::vector<TraceEntry> kernel_trace;
  std::optional<int> kernel_rule;
  std::optional<DpSummary> dp;
  std::vector<std::pair<std::string, double>> timing_ms;
};

/// Minimal-EDS pipeline for "gamma'(g) >= k": greedy matching early exit,
/// optional kernel, then the DP on a vertex-cover based decomposition.
SolveReport solve(const Graph& g, int k, const SolveOptions& options = {}, const std::string& instance = "");

enum class GammaMethod { Auto, Dp, Oracle };
GammaMethod parse_gamma_method(const std::string& name);

struct GammaReport {
  std::string instance;
  GammaMethod method = GammaMethod::Oracle;  // the method actually used
  int gamma_prime = 0;
  std::optional<std::vector<std::pair<Vertex, Vertex>>> witness;
  std::optional<DpSummary> dp;
  std::vector<std::pair<std::string, double>> timing_ms;
};

/// Auto picks the oracle up to 22 edges and the DP beyond.
GammaReport gamma_prime(const Graph& g, GammaMethod method, const SolveOptions& options = {},
                        const std::string& instance = "");

/// Decomposition used by solve and gamma_prime. Throws ResourceCapExceeded
/// when the bag size exceeds `max_bag`.
struct PreparedDecomposition {
  DecompositionMethod method = DecompositionMethod::Cover;
  TreeDecomposition td;
  NiceDecomposition nice;
};
PreparedDecomposition prepare_decomposition(const Graph& g, DecompositionMethod method, EdgePlacement placement,
                                            int max_bag);

struct SelfcheckOptions {
  int count = 200;
  int nmax = 8;
  std::uint64_t seed = 1;
  /// Runs the DP without the r0 -> r1 upgrade.
  bool disable_red_upgrade = false;
};

struct SelfcheckFailure {
  std::string check;
  std::string reproducer;  // regenerating command line plus k where relevant
  std::string detail;
};

struct SelfcheckReport {
  int instances = 0;
  std::uint64_t checks = 0;
  std::vector<SelfcheckFailure> failures;
  std::size_t max_table = 0;
  long double worst_bound_ratio = 0;  // max over nodes of table size / bound
  bool passed() const { return failures.empty(); }
};

/// Seeded random gnp instances: n = 1 + below(nmax), p from {0.2, 0.4, 0.6}, then a graph seed.
SelfcheckReport selfcheck(const SelfcheckOptions& options);

struct BenchRow {
  std::string instance;
  int n = 0;
  int m = 0;
  int width = -1;
  int gamma_prime = 0;
  std::size_t max_table = 0;
  double parse_ms = 0;
  double decomp_ms = 0;
  double dp_ms = 0;
  std::string status = "ok";
};

/// One row per *.gr file of `dir`, in name order. Failures become rows with
/// status "error: ...".
std::vector<BenchRow> bench(const std::string& dir, const SolveOptions& options = {});
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

nlohmann::ordered_json to_json(const SolveReport& r, bool with_timing = true);
nlohmann::ordered_json to_json(const GammaReport& r, bool with_timing = true);
nlohmann::ordered_json to_json(const SelfcheckReport& r);
nlohmann::ordered_json to_json(const Graph& g);
nlohmann::ordered_json to_json(const KernelOutcome& k, const Graph& input, int k_in);

}  // namespace ueds

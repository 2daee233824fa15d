#include "ueds/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "ueds/errors.hpp"
#include "ueds/generator.hpp"
#include "ueds/oracle.hpp"

namespace ueds {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::pair<Vertex, Vertex>> labelled_edges(const Graph& g, const EdgeSet& m,
                                                      const std::vector<Vertex>* original = nullptr) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (EdgeId e : m.members()) {
    Vertex u = g.edge(e).u;
    Vertex v = g.edge(e).v;
    if (original) {
      u = (*original)[static_cast<std::size_t>(u)];
      v = (*original)[static_cast<std::size_t>(v)];
    }
    out.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct DpRun {
  DpResult result;
  DpSummary summary;
  std::optional<EdgeSet> witness;
  double decomp_ms = 0;
  double dp_ms = 0;
};

DpRun run_pipeline_dp(const Graph& g, const SolveOptions& options, bool want_witness) {
  DpRun run;
  auto t0 = Clock::now();
  PreparedDecomposition prep = prepare_decomposition(g, options.decomposition, options.placement, options.max_bag);
  run.decomp_ms = ms_since(t0);

  DpOptions dp = options.dp;
  dp.keep_tables = dp.keep_tables || want_witness;
  t0 = Clock::now();
  run.result = run_dp(g, prep.nice, dp);
  if (want_witness) run.witness = extract_witness(g, prep.nice, run.result);
  run.dp_ms = ms_since(t0);

  run.summary.decomposition = prep.method;
  run.summary.width = run.result.width;
  run.summary.nice_nodes = prep.nice.nodes.size();
  run.summary.max_table = run.result.max_table;
  run.summary.diagnostics = format_diagnostics(run.result);
  run.result.tables.clear();
  return run;
}

}  // namespace

const char* to_string(Stage s) {
  switch (s) {
    case Stage::MatchingEarlyYes: return "matching-early-yes";
    case Stage::KernelDecided: return "kernel-decided";
    case Stage::Dp: return "dp";
  }
  return "?";
}

DecompositionMethod parse_decomposition_method(const std::string& name) {
  if (name == "cover") return DecompositionMethod::Cover;
  if (name == "min-degree") return DecompositionMethod::MinDegree;
  if (name == "narrowest") return DecompositionMethod::Narrowest;
  throw InvalidSpec("unknown decomposition method '" + name + "' (cover, min-degree, narrowest)");
}

const char* to_string(DecompositionMethod m) {
  switch (m) {
    case DecompositionMethod::Cover: return "cover";
    case DecompositionMethod::MinDegree: return "min-degree";
    case DecompositionMethod::Narrowest: return "narrowest";
  }
  return "?";
}

GammaMethod parse_gamma_method(const std::string& name) {
  if (name == "auto") return GammaMethod::Auto;
  if (name == "dp") return GammaMethod::Dp;
  if (name == "oracle") return GammaMethod::Oracle;
  throw InvalidSpec("unknown method '" + name + "' (auto, dp, oracle)");
}

PreparedDecomposition prepare_decomposition(const Graph& g, DecompositionMethod method, EdgePlacement placement,
                                            int max_bag) {
  PreparedDecomposition prep;
  if (method != DecompositionMethod::MinDegree) {
    const auto cover = vertex_cover_from_matching(g, greedy_maximal_matching(g));
    prep.td = td_from_vertex_cover(g, cover);
    prep.method = DecompositionMethod::Cover;
  }
  if (method != DecompositionMethod::Cover) {
    TreeDecomposition alt = td_min_degree(g);
    if (method == DecompositionMethod::MinDegree || alt.width() < prep.td.width()) {
      prep.td = std::move(alt);
      prep.method = DecompositionMethod::MinDegree;
    }
  }
  if (prep.td.width() + 1 > max_bag)
    throw ResourceCapExceeded("decomposition has bags of " + std::to_string(prep.td.width() + 1) +
                              " vertices, above the cap of " + std::to_string(max_bag) + " (raise --max-width)");
  prep.nice = make_nice(g, prep.td, placement);
  return prep;
}

SolveReport solve(const Graph& g, int k, const SolveOptions& options, const std::string& instance) {
  if (k < 0) throw PreconditionViolated("k must be non-negative");
  SolveReport report;
  report.instance = instance;
  report.k = k;
  report.k_reduced = k;
  report.reduced_vertices = g.num_vertices();
  report.reduced_edges = g.num_edges();

  auto t0 = Clock::now();
  const EdgeSet matching = greedy_maximal_matching(g);
  report.timing_ms.emplace_back("matching", ms_since(t0));
  if (matching.size() >= k) {
    report.decision = true;
    report.stage = Stage::MatchingEarlyYes;
    report.witness = labelled_edges(g, matching);
    return report;
  }

  const Graph* target = &g;
  std::optional<KernelInstance> kernel;
  if (options.kernel) {
    t0 = Clock::now();
    KernelOutcome outcome = kernelize(g, k);
    report.timing_ms.emplace_back("kernel", ms_since(t0));
    report.kernel_trace = outcome.trace;
    if (outcome.decided_yes()) {
      report.kernel_rule = outcome.decision().rule;
      if (!options.want_witness) {
        report.decision = true;
        report.stage = Stage::KernelDecided;
        return report;
      }
    } else if (!outcome.trace.empty()) {
      kernel = outcome.reduced();
      target = &kernel->graph;
      report.on_reduced = true;
      report.k_reduced = kernel->k;
      report.reduced_vertices = target->num_vertices();
      report.reduced_edges = target->num_edges();
    }
  }

  DpRun run = run_pipeline_dp(*target, options, options.want_witness);
  report.timing_ms.emplace_back("decomposition", run.decomp_ms);
  report.timing_ms.emplace_back("dp", run.dp_ms);
  report.stage = Stage::Dp;
  report.gamma_prime = run.result.gamma_prime;
  report.decision = run.result.gamma_prime >= report.k_reduced;
  if (run.witness) report.witness = labelled_edges(*target, *run.witness, kernel ? &kernel->original : nullptr);
  report.dp = std::move(run.summary);
  return report;
}

GammaReport gamma_prime(const Graph& g, GammaMethod method, const SolveOptions& options,
                        const std::string& instance) {
  GammaReport report;
  report.instance = instance;
  if (method == GammaMethod::Auto) method = g.num_edges() <= OracleOptions{}.max_edges ? GammaMethod::Oracle : GammaMethod::Dp;
  report.method = method;
  if (method == GammaMethod::Oracle) {
    const auto t0 = Clock::now();
    OracleResult r = upper_eds_exact(g);
    report.timing_ms.emplace_back("oracle", ms_since(t0));
    report.gamma_prime = r.gamma_prime;
    if (options.want_witness) report.witness = labelled_edges(g, r.witness);
    return report;
  }
  DpRun run = run_pipeline_dp(g, options, options.want_witness);
  report.timing_ms.emplace_back("decomposition", run.decomp_ms);
  report.timing_ms.emplace_back("dp", run.dp_ms);
  report.gamma_prime = run.result.gamma_prime;
  if (run.witness) report.witness = labelled_edges(g, *run.witness);
  report.dp = std::move(run.summary);
  return report;
}

// ---------------------------------------------------------------------------
// selfcheck

namespace {

class Checker {
 public:
  Checker(SelfcheckReport& report, std::string reproducer) : report_(report), reproducer_(std::move(reproducer)) {}

  void expect(bool ok, const std::string& check, const std::string& detail, std::optional<int> k = std::nullopt) {
    ++report_.checks;
    if (ok) return;
    std::string repro = reproducer_;
    if (k) repro += " -k " + std::to_string(*k);
    report_.failures.push_back({check, repro, detail});
  }

 private:
  SelfcheckReport& report_;
  std::string reproducer_;
};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

}  // namespace

SelfcheckReport selfcheck(const SelfcheckOptions& options) {
  static constexpr double kProbabilities[] = {0.2, 0.4, 0.6};
  if (options.nmax < 1) throw InvalidSpec("nmax must be at least 1");
  SelfcheckReport report;
  SplitMix64 rng(options.seed);
  const OracleOptions oracle{64};

  for (int i = 0; i < options.count; ++i) {
    GenSpec spec;
    spec.family = Family::Gnp;
    spec.n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(options.nmax)));
    spec.p = kProbabilities[rng.below(3)];
    spec.seed = rng.next();
    const Graph g = generate(spec);
    const int m = g.num_edges();
    Checker check(report, describe(spec));
    ++report.instances;

    const OracleResult truth = upper_eds_exact(g, oracle);

    // Both decompositions must be valid; the DP runs on the narrower one.
    const auto cover = vertex_cover_from_matching(g, greedy_maximal_matching(g));
    const TreeDecomposition cover_td = td_from_vertex_cover(g, cover);
    check.expect(validate_td(g, cover_td).empty(), "cover-td-valid", join(validate_td(g, cover_td)));
    check.expect(validate_nice(g, make_nice(g, cover_td)).empty(), "cover-nice-valid",
                 join(validate_nice(g, make_nice(g, cover_td))));
    const PreparedDecomposition prep =
        prepare_decomposition(g, DecompositionMethod::Narrowest, EdgePlacement::Late, BagState::kMaxBag);
    check.expect(validate_td(g, prep.td).empty(), "td-valid", join(validate_td(g, prep.td)));
    check.expect(validate_nice(g, prep.nice).empty(), "nice-valid", join(validate_nice(g, prep.nice)));

    DpOptions dp_options;
    dp_options.red_upgrade = !options.disable_red_upgrade;
    dp_options.keep_tables = true;
    std::optional<DpResult> dp;
    try {
      dp = run_dp(g, prep.nice, dp_options);
    } catch (const Error& e) {
      check.expect(false, "oracle-dp-equal", std::string("dp failed: ") + e.what());
    }
    if (dp) {
      check.expect(dp->gamma_prime == truth.gamma_prime, "oracle-dp-equal",
                   "oracle " + std::to_string(truth.gamma_prime) + ", dp " + std::to_string(dp->gamma_prime));
      const long double bound = table_size_bound(dp->width, g.num_vertices(), m);
      for (const DpNodeStat& s : dp->stats) {
        report.max_table = std::max(report.max_table, s.tuples);
        report.worst_bound_ratio = std::max(report.worst_bound_ratio, static_cast<long double>(s.tuples) / bound);
        check.expect(static_cast<long double>(s.tuples) <= bound, "table-bound",
                     "node " + std::to_string(s.node + 1) + " holds " + std::to_string(s.tuples) + " tuples");
      }
      const EdgeSet w = extract_witness(g, prep.nice, *dp);
      check.expect(w.size() == dp->gamma_prime && is_minimal_eds(g, w), "dp-witness",
                   "witness of size " + std::to_string(w.size()) + " is not a minimal EDS of size " +
                       std::to_string(dp->gamma_prime));
    }

    const EdgeSet matching = greedy_maximal_matching(g);
    check.expect(is_minimal_eds(g, matching), "matching-minimal", "greedy matching is not a minimal EDS");
    check.expect(certificate_violations(g, truth.witness).empty(), "star-certificate",
                 join(certificate_violations(g, truth.witness)));

    for (int k = 1; k <= m; ++k) {
      const bool expected = truth.gamma_prime >= k;
      const KernelOutcome out = kernelize(g, k);
      if (out.decided_yes()) {
        check.expect(expected, "kernel-preserves", "decided yes by rule " + std::to_string(out.decision().rule), k);
        continue;
      }
      const KernelInstance& red = out.reduced();
      check.expect(red.graph.num_vertices() <= kernel_vertex_bound(red.k), "kernel-size",
                   std::to_string(red.graph.num_vertices()) + " vertices for k'=" + std::to_string(red.k), k);
      check.expect(decide(red.graph, red.k, oracle) == expected, "kernel-preserves",
                   "kernel answer differs from the input answer", k);
    }

    for (int k : {truth.gamma_prime, truth.gamma_prime + 1}) {
      if (k < 1) continue;
      SolveOptions so;
      so.max_bag = BagState::kMaxBag;
      so.dp.red_upgrade = !options.disable_red_upgrade;
      bool got = false;
      try {
        got = solve(g, k, so).decision;
      } catch (const Error& e) {
        check.expect(false, "solve-decision", std::string("solve failed: ") + e.what(), k);
        continue;
      }
      check.expect(got == (truth.gamma_prime >= k), "solve-decision", got ? "answered yes" : "answered no", k);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// bench

std::vector<BenchRow> bench(const std::string& dir, const SolveOptions& options) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".gr") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<BenchRow> rows;
  for (const auto& path : files) {
    BenchRow row;
    row.instance = path.filename().string();
    try {
      auto t0 = Clock::now();
      std::ifstream in(path);
      if (!in) throw Error("cannot open " + path.string());
      const Graph g = parse_graph(in);
      row.parse_ms = ms_since(t0);
      row.n = g.num_vertices();
      row.m = g.num_edges();
      DpRun run = run_pipeline_dp(g, options, false);
      row.width = run.summary.width;
      row.gamma_prime = run.result.gamma_prime;
      row.max_table = run.summary.max_table;
      row.decomp_ms = run.decomp_ms;
      row.dp_ms = run.dp_ms;
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  auto quoted = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  out << "instance,n,m,width,gamma_prime,max_table,parse_ms,decomp_ms,dp_ms,status\n";
  for (const BenchRow& r : rows)
    out << quoted(r.instance) << ',' << r.n << ',' << r.m << ',' << r.width << ',' << r.gamma_prime << ','
        << r.max_table << ',' << r.parse_ms << ',' << r.decomp_ms << ',' << r.dp_ms << ',' << quoted(r.status) << '\n';
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::ordered_json;

ordered_json edges_json(const std::vector<std::pair<Vertex, Vertex>>& edges) {
  ordered_json a = ordered_json::array();
  for (auto [u, v] : edges) a.push_back({u + 1, v + 1});
  return a;
}

ordered_json timing_json(const std::vector<std::pair<std::string, double>>& timing) {
  ordered_json t = ordered_json::object();
  for (const auto& [name, ms] : timing) t[name] = ms;
  return t;
}

ordered_json dp_json(const DpSummary& d) {
  return ordered_json{{"decomposition", to_string(d.decomposition)},
                      {"width", d.width},
                      {"nice_nodes", d.nice_nodes},
                      {"max_table", d.max_table}};
}

}  // namespace

ordered_json to_json(const SolveReport& r, bool with_timing) {
  ordered_json j;
  j["instance"] = r.instance;
  j["k"] = r.k;
  j["decision"] = r.decision ? "yes" : "no";
  j["stage"] = to_string(r.stage);
  j["gamma_prime"] = r.gamma_prime ? ordered_json(*r.gamma_prime) : ordered_json(nullptr);
  j["witness"] = r.witness ? edges_json(*r.witness) : ordered_json(nullptr);
  j["on_reduced"] = r.on_reduced;
  if (r.on_reduced)
    j["reduced"] = {{"n", r.reduced_vertices}, {"m", r.reduced_edges}, {"k", r.k_reduced}};
  ordered_json trace = ordered_json::array();
  for (const TraceEntry& t : r.kernel_trace) trace.push_back(t.to_string());
  j["kernel_trace"] = std::move(trace);
  if (r.kernel_rule) j["kernel_rule"] = *r.kernel_rule;
  j["dp"] = r.dp ? dp_json(*r.dp) : ordered_json(nullptr);
  if (with_timing) j["timing_ms"] = timing_json(r.timing_ms);
  return j;
}

ordered_json to_json(const GammaReport& r, bool with_timing) {
  ordered_json j;
  j["instance"] = r.instance;
  j["method"] = r.method == GammaMethod::Oracle ? "oracle" : "dp";
  j["gamma_prime"] = r.gamma_prime;
  j["witness"] = r.witness ? edges_json(*r.witness) : ordered_json(nullptr);
  j["dp"] = r.dp ? dp_json(*r.dp) : ordered_json(nullptr);
  if (with_timing) j["timing_ms"] = timing_json(r.timing_ms);
  return j;
}

ordered_json to_json(const SelfcheckReport& r) {
  ordered_json j;
  j["instances"] = r.instances;
  j["checks"] = r.checks;
  j["max_table"] = r.max_table;
  j["worst_bound_ratio"] = static_cast<double>(r.worst_bound_ratio);
  ordered_json f = ordered_json::array();
  for (const auto& x : r.failures) f.push_back({{"check", x.check}, {"reproducer", x.reproducer}, {"detail", x.detail}});
  j["failures"] = std::move(f);
  j["passed"] = r.passed();
  return j;
}

ordered_json to_json(const Graph& g) {
  ordered_json edges = ordered_json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u + 1, e.v + 1});
  return ordered_json{{"n", g.num_vertices()}, {"m", g.num_edges()}, {"edges", std::move(edges)}};
}

ordered_json to_json(const KernelOutcome& k, const Graph& input, int k_in) {
  ordered_json j;
  j["n"] = input.num_vertices();
  j["m"] = input.num_edges();
  j["k"] = k_in;
  ordered_json trace = ordered_json::array();
  for (const TraceEntry& t : k.trace) trace.push_back(t.to_string());
  if (k.decided_yes()) {
    j["outcome"] = "decided-yes";
    j["rule"] = k.decision().rule;
    j["reason"] = k.decision().hint;
  } else {
    const KernelInstance& red = k.reduced();
    j["outcome"] = "reduced";
    ordered_json labels = ordered_json::array();
    for (Vertex v : red.original) labels.push_back(v + 1);
    j["reduced"] = {{"n", red.graph.num_vertices()},
                    {"m", red.graph.num_edges()},
                    {"k", red.k},
                    {"original_labels", std::move(labels)},
                    {"graph", to_gr_string(red.graph)}};
  }
  j["trace"] = std::move(trace);
  return j;
}

}  // namespace ueds

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ueds/decomposition.hpp"
#include "ueds/errors.hpp"
#include "ueds/generator.hpp"
#include "ueds/kernel.hpp"
#include "ueds/oracle.hpp"
#include "ueds/pipeline.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

ueds::Graph load(const std::string& path) {
  if (path == "-") return ueds::parse_graph(std::cin);
  std::ifstream in(path);
  if (!in) throw ueds::ParseError(0, "cannot open " + path);
  try {
    return ueds::parse_graph(in);
  } catch (const ueds::ParseError& e) {
    throw ueds::ParseError(0, path + ": " + e.what());
  }
}

void write_to(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ueds::Error("cannot write " + path);
  out << text;
}

std::string format_witness(const std::vector<std::pair<ueds::Vertex, ueds::Vertex>>& w) {
  std::string s;
  for (auto [u, v] : w) s += (s.empty() ? "" : " ") + ("(" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")");
  return s.empty() ? "{}" : s;
}

ueds::EdgePlacement parse_placement(const std::string& s) {
  if (s == "late") return ueds::EdgePlacement::Late;
  if (s == "early") return ueds::EdgePlacement::Early;
  throw ueds::InvalidSpec("unknown edge placement '" + s + "' (late, early)");
}

struct Globals {
  bool json = false;
  bool no_timing = false;
};

void print_timing(const std::vector<std::pair<std::string, double>>& timing, const Globals& g) {
  if (g.no_timing) return;
  for (const auto& [name, ms] : timing) std::cout << "time_ms." << name << ": " << ms << "\n";
}

void print_diagnostics(const std::optional<ueds::DpSummary>& dp) {
  if (!dp) return;
  for (const auto& line : dp->diagnostics) std::cout << line << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper edge domination: exact solver, kernel, and tree-decomposition DP"};
  app.require_subcommand(1);
  Globals globals;
  app.add_flag("--json", globals.json, "Emit structured output as JSON");
  app.add_flag("--no-timing", globals.no_timing, "Omit timing fields");

  // Shared by solve / gamma / bench.
  int max_width = 14;
  std::string decomposition = "narrowest";
  std::string placement = "late";
  bool diagnostics = false;
  auto add_dp_options = [&](CLI::App* sub) {
    sub->add_option("--max-width", max_width, "Largest bag size (width + 1) the DP accepts")
        ->capture_default_str()
        ->check(CLI::Range(1, ueds::BagState::kMaxBag));
    sub->add_option("--decomposition", decomposition, "cover, min-degree, or narrowest")->capture_default_str();
    sub->add_option("--edge-placement", placement, "late or early")->capture_default_str();
  };

  std::string file;
  int k = 0;

  auto* solve_cmd = app.add_subcommand("solve", "Decide whether a minimal EDS of size >= k exists");
  solve_cmd->add_option("file", file, ".gr file ('-' for stdin)")->required();
  solve_cmd->add_option("-k", k, "Target size")->required()->check(CLI::NonNegativeNumber);
  bool no_kernel = false;
  bool witness = false;
  solve_cmd->add_flag("--no-kernel", no_kernel, "Skip kernelization");
  solve_cmd->add_flag("--witness", witness, "Report a witness edge set");
  solve_cmd->add_flag("--dp-trace", diagnostics, "Print per-node DP table sizes");
  add_dp_options(solve_cmd);

  auto* gamma_cmd = app.add_subcommand("gamma", "Compute the upper edge domination number");
  gamma_cmd->add_option("file", file, ".gr file ('-' for stdin)")->required();
  std::string method = "auto";
  gamma_cmd->add_option("--method", method, "auto, dp, or oracle")->capture_default_str();
  gamma_cmd->add_flag("--witness", witness, "Report a witness edge set");
  gamma_cmd->add_flag("--dp-trace", diagnostics, "Print per-node DP table sizes");
  add_dp_options(gamma_cmd);

  auto* kernel_cmd = app.add_subcommand("kernelize", "Apply the reduction rules and print the trace");
  kernel_cmd->add_option("file", file, ".gr file ('-' for stdin)")->required();
  kernel_cmd->add_option("-k", k, "Parameter")->required()->check(CLI::NonNegativeNumber);
  std::string kernel_out;
  kernel_cmd->add_option("--emit", kernel_out, "Write the reduced graph as .gr");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force enumeration of minimal EDS");
  oracle_cmd->add_option("file", file, ".gr file ('-' for stdin)")->required();
  int oracle_max = ueds::OracleOptions{}.max_edges;
  oracle_cmd->add_option("--max-edges", oracle_max, "Refuse larger instances")
      ->capture_default_str()
      ->check(CLI::Range(0, 64));

  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph");
  std::string family = "gnp";
  ueds::GenSpec spec;
  std::string gen_out = "-";
  gen_cmd->add_option("--family", family, "gnp, path, cycle, star, tree")->capture_default_str();
  gen_cmd->add_option("--n", spec.n, "Vertex count")->required();
  gen_cmd->add_option("--p", spec.p, "Edge probability (gnp)")->capture_default_str();
  gen_cmd->add_option("--seed", spec.seed, "64-bit seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "Output path ('-' for stdout)")->capture_default_str();

  auto* decomp_cmd = app.add_subcommand("decomp", "Build and validate a tree decomposition");
  decomp_cmd->add_option("file", file, ".gr file ('-' for stdin)")->required();
  std::string emit_td_path;
  std::string emit_nice_path;
  std::string decomp_method = "cover";
  decomp_cmd->add_option("--emit-td", emit_td_path, "Write the decomposition in .td format ('-' for stdout)");
  decomp_cmd->add_option("--emit-nice", emit_nice_path, "Write the nice decomposition ('-' for stdout)");
  decomp_cmd->add_option("--method", decomp_method, "cover, min-degree, or narrowest")->capture_default_str();
  decomp_cmd->add_option("--edge-placement", placement, "late or early")->capture_default_str();

  auto* self_cmd = app.add_subcommand("selfcheck", "Cross-check all modules on seeded random graphs");
  ueds::SelfcheckOptions self;
  std::string fault;
  self_cmd->add_option("--count", self.count, "Number of instances")->capture_default_str()->check(CLI::NonNegativeNumber);
  self_cmd->add_option("--nmax", self.nmax, "Largest vertex count")->capture_default_str()->check(CLI::Range(1, 12));
  self_cmd->add_option("--seed", self.seed, "Seed")->capture_default_str();
  self_cmd->add_option("--fault", fault, "Inject a fault: disable-red-upgrade")
      ->check(CLI::IsMember({"disable-red-upgrade"}));

  auto* bench_cmd = app.add_subcommand("bench", "Run the DP over every .gr file of a directory");
  std::string bench_dir;
  std::string bench_out = "-";
  bench_cmd->add_option("dir", bench_dir, "Corpus directory")->required();
  bench_cmd->add_option("--out", bench_out, "CSV path ('-' for stdout)")->capture_default_str();
  add_dp_options(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    ueds::SolveOptions options;
    options.max_bag = max_width;
    options.decomposition = ueds::parse_decomposition_method(decomposition);
    options.placement = parse_placement(placement);
    options.want_witness = witness;

    if (*solve_cmd) {
      const ueds::Graph g = load(file);
      options.kernel = !no_kernel;
      const ueds::SolveReport r = ueds::solve(g, k, options, file);
      if (globals.json) {
        auto j = ueds::to_json(r, !globals.no_timing);
        if (diagnostics && r.dp) j["dp_trace"] = r.dp->diagnostics;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "decision: " << (r.decision ? "yes" : "no") << "\n";
        std::cout << "stage: " << ueds::to_string(r.stage) << "\n";
        if (r.kernel_rule) std::cout << "kernel_rule: " << *r.kernel_rule << "\n";
        if (r.on_reduced)
          std::cout << "reduced: n=" << r.reduced_vertices << " m=" << r.reduced_edges << " k=" << r.k_reduced << "\n";
        if (r.gamma_prime) std::cout << "gamma_prime" << (r.on_reduced ? "_reduced" : "") << ": " << *r.gamma_prime << "\n";
        if (r.witness) std::cout << "witness" << (r.on_reduced ? "_reduced" : "") << ": " << format_witness(*r.witness) << "\n";
        if (r.dp) std::cout << "width: " << r.dp->width << " (" << ueds::to_string(r.dp->decomposition) << ")\n";
        if (diagnostics) print_diagnostics(r.dp);
        print_timing(r.timing_ms, globals);
      }
      return r.decision ? kExitYes : kExitNo;
    }

    if (*gamma_cmd) {
      const ueds::Graph g = load(file);
      const ueds::GammaReport r = ueds::gamma_prime(g, ueds::parse_gamma_method(method), options, file);
      if (globals.json) {
        auto j = ueds::to_json(r, !globals.no_timing);
        if (diagnostics && r.dp) j["dp_trace"] = r.dp->diagnostics;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "gamma_prime: " << r.gamma_prime << "\n";
        std::cout << "method: " << (r.method == ueds::GammaMethod::Oracle ? "oracle" : "dp") << "\n";
        if (r.witness) std::cout << "witness: " << format_witness(*r.witness) << "\n";
        if (r.dp) std::cout << "width: " << r.dp->width << " (" << ueds::to_string(r.dp->decomposition) << ")\n";
        if (diagnostics) print_diagnostics(r.dp);
        print_timing(r.timing_ms, globals);
      }
      return kExitYes;
    }

    if (*kernel_cmd) {
      const ueds::Graph g = load(file);
      const ueds::KernelOutcome out = ueds::kernelize(g, k);
      if (!kernel_out.empty() && !out.decided_yes()) write_to(kernel_out, ueds::to_gr_string(out.reduced().graph));
      if (globals.json) {
        std::cout << ueds::to_json(out, g, k).dump(2) << "\n";
      } else {
        for (const auto& t : out.trace) std::cout << t.to_string() << "\n";
        if (out.decided_yes())
          std::cout << "outcome: decided-yes (rule " << out.decision().rule << ": " << out.decision().hint << ")\n";
        else
          std::cout << "outcome: reduced n=" << out.reduced().graph.num_vertices()
                    << " m=" << out.reduced().graph.num_edges() << " k=" << out.reduced().k << "\n";
      }
      return kExitYes;
    }

    if (*oracle_cmd) {
      const ueds::Graph g = load(file);
      const ueds::OracleResult r = ueds::upper_eds_exact(g, {oracle_max});
      std::vector<std::pair<ueds::Vertex, ueds::Vertex>> w;
      for (ueds::EdgeId e : r.witness.members()) w.emplace_back(g.edge(e).u, g.edge(e).v);
      if (globals.json) {
        nlohmann::ordered_json j;
        j["instance"] = file;
        j["gamma_prime"] = r.gamma_prime;
        j["minimal_eds_count"] = r.count_minimal;
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (auto [u, v] : w) a.push_back({u + 1, v + 1});
        j["witness"] = std::move(a);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "gamma_prime: " << r.gamma_prime << "\n";
        std::cout << "minimal_eds_count: " << r.count_minimal << "\n";
        std::cout << "witness: " << format_witness(w) << "\n";
      }
      return kExitYes;
    }

    if (*gen_cmd) {
      spec.family = ueds::parse_family(family);
      const ueds::Graph g = ueds::generate(spec);
      if (globals.json) {
        auto j = ueds::to_json(g);
        j["command"] = ueds::describe(spec);
        write_to(gen_out, j.dump(2) + "\n");
      } else {
        write_to(gen_out, "c " + ueds::describe(spec) + "\n" + ueds::to_gr_string(g));
      }
      return kExitYes;
    }

    if (*decomp_cmd) {
      const ueds::Graph g = load(file);
      const ueds::PreparedDecomposition prep = ueds::prepare_decomposition(
          g, ueds::parse_decomposition_method(decomp_method), parse_placement(placement), ueds::BagState::kMaxBag);
      const auto td_problems = ueds::validate_td(g, prep.td);
      const auto nice_problems = ueds::validate_nice(g, prep.nice);
      if (!emit_td_path.empty()) write_to(emit_td_path, ueds::to_td_string(prep.td));
      if (!emit_nice_path.empty()) {
        std::ostringstream s;
        ueds::emit_nice(s, g, prep.nice);
        write_to(emit_nice_path, s.str());
      }
      const bool to_stdout = emit_td_path == "-" || emit_nice_path == "-";
      if (globals.json) {
        nlohmann::ordered_json j;
        j["instance"] = file;
        j["method"] = ueds::to_string(prep.method);
        j["width"] = prep.td.width();
        j["bags"] = prep.td.bags.size();
        j["nice_nodes"] = prep.nice.nodes.size();
        j["td_violations"] = td_problems;
        j["nice_violations"] = nice_problems;
        (to_stdout ? std::cerr : std::cout) << j.dump(2) << "\n";
      } else {
        std::ostream& out = to_stdout ? std::cerr : std::cout;
        out << "method: " << ueds::to_string(prep.method) << "\nwidth: " << prep.td.width()
            << "\nbags: " << prep.td.bags.size() << "\nnice_nodes: " << prep.nice.nodes.size() << "\n";
        for (const auto& p : td_problems) out << "td violation: " << p << "\n";
        for (const auto& p : nice_problems) out << "nice violation: " << p << "\n";
      }
      return td_problems.empty() && nice_problems.empty() ? kExitYes : kExitNo;
    }

    if (*self_cmd) {
      self.disable_red_upgrade = fault == "disable-red-upgrade";
      const ueds::SelfcheckReport r = ueds::selfcheck(self);
      if (globals.json) {
        std::cout << ueds::to_json(r).dump(2) << "\n";
      } else {
        for (const auto& f : r.failures)
          std::cout << "FAIL " << f.check << ": " << f.detail << "\n  reproduce: " << f.reproducer << "\n";
        std::cout << "selfcheck: " << r.instances << " instances, " << r.checks << " checks, " << r.failures.size()
                  << " failures, max table " << r.max_table << "\n";
      }
      return r.passed() ? kExitYes : kExitNo;
    }

    if (*bench_cmd) {
      const auto rows = ueds::bench(bench_dir, options);
      std::ostringstream csv;
      ueds::write_bench_csv(csv, rows);
      write_to(bench_out, csv.str());
      return kExitYes;
    }
  } catch (const ueds::ResourceCapExceeded& e) {
    std::cerr << "ueds: " << e.what() << "\n";
    return kExitCap;
  } catch (const ueds::ParseError& e) {
    std::cerr << "ueds: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ueds::InvalidSpec& e) {
    std::cerr << "ueds: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ueds: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

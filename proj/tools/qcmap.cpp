// Command-line front end: generate random circuits, map them onto a device,
// verify mapper output, run benchmark sweeps, and dump dependency graphs.
//
// Exit codes: 0 success, 1 usage, 2 input parse error, 3 routing error,
// 4 verification failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcmap/bench.hpp"
#include "qcmap/circuit.hpp"
#include "qcmap/coupling.hpp"
#include "qcmap/depgraph.hpp"
#include "qcmap/qasm.hpp"
#include "qcmap/router_exact.hpp"
#include "qcmap/router_heuristic.hpp"
#include "qcmap/verify.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitRouting = 3;
constexpr int kExitVerify = 4;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

void print_diagnostics(const std::string& path, const std::vector<qcmap::ParseDiagnostic>& diags) {
  for (const auto& d : diags)
    std::cerr << path << ':' << d.line << ": "
              << (d.severity == qcmap::ParseDiagnostic::Severity::error ? "error: " : "warning: ")
              << d.message << '\n';
}

std::optional<qcmap::Circuit> load_circuit(const std::string& path) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << path << ": cannot read file\n";
    return std::nullopt;
  }
  qcmap::ParseResult res = qcmap::parse(*text);
  print_diagnostics(path, res.diagnostics);
  return res.circuit;
}

// Built-in device specs (lnn:<n>, grid:<r>x<c>, t4) or a coupling file path.
std::optional<qcmap::CouplingGraph> load_coupling(const std::string& spec) {
  try {
    if (spec == "t4") return qcmap::CouplingGraph::t4();
    if (spec.rfind("lnn:", 0) == 0) return qcmap::CouplingGraph::lnn(std::stoi(spec.substr(4)));
    if (spec.rfind("grid:", 0) == 0) {
      const std::string dims = spec.substr(5);
      const size_t x = dims.find('x');
      if (x == std::string::npos) throw std::invalid_argument("grid wants grid:<rows>x<cols>");
      return qcmap::CouplingGraph::grid(std::stoi(dims.substr(0, x)), std::stoi(dims.substr(x + 1)));
    }
  } catch (const std::exception& ex) {
    std::cerr << "bad coupling spec '" << spec << "': " << ex.what() << '\n';
    return std::nullopt;
  }
  const auto text = read_file(spec);
  if (!text) {
    std::cerr << spec << ": cannot read file\n";
    return std::nullopt;
  }
  qcmap::CouplingParseResult res = qcmap::parse_coupling(*text);
  print_diagnostics(spec, res.diagnostics);
  if (res.graph && !res.graph->connected())
    std::cerr << spec << ": warning: device graph is not connected; routing will refuse it\n";
  return res.graph;
}

// "trivial", or a comma-separated forward permutation like "2,0,1".
std::optional<qcmap::Layout> parse_layout_arg(const std::string& s, int n) {
  if (s == "trivial") return qcmap::Layout::identity(n);
  std::vector<int> fwd;
  std::istringstream iss(s);
  std::string part;
  while (std::getline(iss, part, ',')) {
    try {
      fwd.push_back(std::stoi(part));
    } catch (const std::exception&) {
      std::cerr << "bad layout entry '" << part << "'\n";
      return std::nullopt;
    }
  }
  if (static_cast<int>(fwd.size()) != n) {
    std::cerr << "layout has " << fwd.size() << " entries, device has " << n << " qubits\n";
    return std::nullopt;
  }
  try {
    return qcmap::Layout::from_forward(fwd);
  } catch (const std::exception& ex) {
    std::cerr << "bad layout: " << ex.what() << '\n';
    return std::nullopt;
  }
}

std::optional<qcmap::RuleSet> parse_rules_arg(const std::string& s) {
  if (s == "full") return qcmap::RuleSet::full;
  if (s == "std-dag") return qcmap::RuleSet::standard_dag;
  if (s == "fixed-layer") return qcmap::RuleSet::fixed_layer;
  std::cerr << "unknown rule set '" << s << "' (full, std-dag, fixed-layer)\n";
  return std::nullopt;
}

std::optional<std::vector<qcmap::Formulation>> parse_formulations_arg(const std::string& s) {
  using qcmap::Formulation;
  if (s == "all")
    return std::vector<Formulation>{Formulation::proposed, Formulation::no_bridge,
                                    Formulation::std_dag, Formulation::fixed_layer};
  std::vector<Formulation> out;
  std::istringstream iss(s);
  std::string part;
  while (std::getline(iss, part, ',')) {
    const auto f = qcmap::parse_formulation(part);
    if (!f) {
      std::cerr << "unknown formulation '" << part << "'\n";
      return std::nullopt;
    }
    out.push_back(*f);
  }
  if (out.empty()) {
    std::cerr << "empty formulation list\n";
    return std::nullopt;
  }
  return out;
}

std::string file_stem(const std::string& path) {
  const size_t slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const size_t dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name.resize(dot);
  return name;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circuit mapper for coupling-constrained devices"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a seeded random circuit");
  int gen_qubits = 5, gen_gates = 100;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--qubits,-q", gen_qubits, "register width")->check(CLI::Range(2, 1 << 20));
  gen->add_option("--gates,-g", gen_gates, "gate count")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed,-s", gen_seed, "rng seed");
  gen->add_option("--output,-o", gen_out, "output file (default stdout)");

  // map
  auto* map = app.add_subcommand("map", "map a circuit onto a device");
  std::string map_in, map_coupling, map_algo = "heuristic", map_form = "proposed";
  std::string map_layout, map_out;
  double map_alpha = 0.5;
  int map_lookahead = 10, map_guard = 8;
  std::uint64_t map_max_states = 2'000'000;
  bool map_no_postprocess = false, map_no_expand = false, map_no_bridge = false;
  map->add_option("input", map_in, "OpenQASM 2.0 circuit")->required();
  map->add_option("--coupling,-c", map_coupling, "device: lnn:<n>, grid:<r>x<c>, t4, or a file")
      ->required();
  map->add_option("--algo,-a", map_algo, "exact or heuristic (default heuristic)")
      ->check(CLI::IsMember({"exact", "heuristic"}));
  map->add_option("--formulation,-f", map_form,
                  "proposed, no-bridge, std-dag, fixed-layer (default proposed)");
  map->add_option("--initial-layout,-l", map_layout,
                  "trivial, all (exact only), or comma-separated forward permutation");
  map->add_option("--alpha", map_alpha, "heuristic look-ahead discount");
  map->add_option("--lookahead-depth", map_lookahead, "heuristic look-ahead depth");
  map->add_flag("--no-bridge", map_no_bridge, "disable bridges regardless of formulation");
  map->add_flag("--no-postprocess", map_no_postprocess, "keep leading swaps");
  map->add_option("--max-states", map_max_states, "exact search state budget");
  map->add_option("--guard", map_guard, "max device size for all-layout seeding");
  map->add_flag("--no-expand", map_no_expand, "emit swap/bridge ops un-expanded");
  map->add_option("--output,-o", map_out, "output file (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "check a routed circuit against its source");
  std::string ver_logical, ver_routed, ver_coupling;
  int ver_trials = 8;
  double ver_tol = 1e-9;
  std::uint64_t ver_seed = 0x5eed;
  ver->add_option("logical", ver_logical, "source circuit")->required();
  ver->add_option("routed", ver_routed, "routed circuit with layout headers")->required();
  ver->add_option("--coupling,-c", ver_coupling, "also check compliance against this device");
  ver->add_option("--trials", ver_trials, "random-state trials")->check(CLI::PositiveNumber);
  ver->add_option("--tol", ver_tol, "fidelity tolerance");
  ver->add_option("--seed", ver_seed, "rng seed for trial states");

  // bench
  auto* bench = app.add_subcommand("bench", "route a batch and tabulate results");
  std::vector<std::string> bench_files;
  std::string bench_random, bench_coupling, bench_algos = "heuristic";
  std::string bench_forms = "all", bench_csv, bench_layout = "trivial";
  std::uint64_t bench_seed = 1;
  double bench_alpha = 0.5, bench_tol = 1e-9;
  int bench_lookahead = 10, bench_trials = 8, bench_guard = 8;
  std::uint64_t bench_max_states = 2'000'000;
  bool bench_no_postprocess = false, bench_no_verify = false, bench_sabotage = false;
  bool bench_no_bridge = false;
  bench->add_option("inputs", bench_files, "OpenQASM circuit files");
  bench->add_option("--random,-r", bench_random, "generate tasks: <count>,<qubits>,<gates>");
  bench->add_option("--seed,-s", bench_seed, "base seed for --random");
  bench->add_option("--coupling,-c", bench_coupling, "device: lnn:<n>, grid:<r>x<c>, t4, or a file")
      ->required();
  bench->add_option("--algos,-a", bench_algos, "comma list of exact,heuristic (default heuristic)");
  bench->add_option("--formulations,-f", bench_forms, "comma list or 'all' (default all)");
  bench->add_option("--initial-layout,-l", bench_layout,
                    "exact seeding: trivial, all, or a permutation (default trivial)");
  bench->add_option("--alpha", bench_alpha, "heuristic look-ahead discount");
  bench->add_option("--lookahead-depth", bench_lookahead, "heuristic look-ahead depth");
  bench->add_flag("--no-bridge", bench_no_bridge, "disable bridges regardless of formulation");
  bench->add_flag("--no-postprocess", bench_no_postprocess, "keep leading swaps");
  bench->add_option("--max-states", bench_max_states, "exact search state budget");
  bench->add_option("--guard", bench_guard, "max device size for all-layout seeding");
  bench->add_option("--trials", bench_trials, "equivalence trials per row");
  bench->add_option("--tol", bench_tol, "fidelity tolerance");
  bench->add_flag("--no-verify", bench_no_verify, "skip verification");
  bench->add_flag("--sabotage-verify", bench_sabotage,
                  "debug: corrupt outputs so verification must fail");
  bench->add_option("--csv", bench_csv, "write CSV to this file");

  // depgraph-dot
  auto* dot = app.add_subcommand("depgraph-dot", "dump a dependency graph in DOT format");
  std::string dot_in, dot_rules = "full", dot_out;
  bool dot_reduce = false;
  dot->add_option("input", dot_in, "OpenQASM 2.0 circuit")->required();
  dot->add_option("--rules", dot_rules, "full, std-dag, fixed-layer (default full)");
  dot->add_flag("--reduce", dot_reduce, "transitively reduce first");
  dot->add_option("--output,-o", dot_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const qcmap::Circuit c = qcmap::gen_random(gen_qubits, gen_gates, gen_seed);
      if (!write_output(gen_out, qcmap::emit_circuit(c))) {
        std::cerr << gen_out << ": cannot write\n";
        return kExitInput;
      }
      return 0;
    }

    if (map->parsed()) {
      const auto circuit = load_circuit(map_in);
      if (!circuit) return kExitInput;
      const auto device = load_coupling(map_coupling);
      if (!device) return kExitInput;
      const auto form = qcmap::parse_formulation(map_form);
      if (!form) {
        std::cerr << "unknown formulation '" << map_form << "'\n";
        return kExitInput;
      }
      if (circuit->num_qubits() > device->num_qubits()) {
        std::cerr << "circuit uses " << circuit->num_qubits() << " qubits, device has only "
                  << device->num_qubits() << '\n';
        return kExitInput;
      }
      const qcmap::Circuit padded = circuit->padded(device->num_qubits());
      const qcmap::DependencyGraph dep = qcmap::build(padded, qcmap::formulation_rules(*form));
      const bool bridges = !map_no_bridge && qcmap::formulation_bridges(*form);

      qcmap::MappingResult res;
      const auto t0 = std::chrono::steady_clock::now();
      if (map_algo == "exact") {
        qcmap::ExactOptions opts;
        opts.allow_bridge = bridges;
        opts.max_states = map_max_states;
        opts.max_qubits_guard = map_guard;
        if (map_layout.empty() || map_layout == "all") {
          // all layouts: leave opts.initial_layout empty
        } else {
          const auto l = parse_layout_arg(map_layout, device->num_qubits());
          if (!l) return kExitInput;
          opts.initial_layout = *l;
        }
        res = qcmap::solve_exact(dep, *device, opts);
      } else {
        std::string spec = map_layout.empty() ? "trivial" : map_layout;
        if (spec == "all") {
          std::cerr << "--initial-layout all requires --algo exact\n";
          return kExitInput;
        }
        const auto l = parse_layout_arg(spec, device->num_qubits());
        if (!l) return kExitInput;
        res = qcmap::route_heuristic(dep, *device, *l, {map_alpha, map_lookahead}, bridges,
                                     !map_no_postprocess);
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

      if (!write_output(map_out, qcmap::emit(res.routed, !map_no_expand))) {
        std::cerr << map_out << ": cannot write\n";
        return kExitInput;
      }
      std::cerr << "mapped " << map_in << ": algo=" << map_algo << " formulation="
                << qcmap::formulation_name(*form) << " swaps=" << res.stats.num_swaps
                << " bridges=" << res.stats.num_bridges << " added_cnots=" << res.stats.added_cnots
                << " time_s=" << qcmap::format_seconds(secs);
      if (map_algo == "exact") std::cerr << " states=" << res.states;
      std::cerr << '\n';
      return 0;
    }

    if (ver->parsed()) {
      const auto logical_text = read_file(ver_logical);
      if (!logical_text) {
        std::cerr << ver_logical << ": cannot read file\n";
        return kExitInput;
      }
      const auto routed_text = read_file(ver_routed);
      if (!routed_text) {
        std::cerr << ver_routed << ": cannot read file\n";
        return kExitInput;
      }
      qcmap::ParseResult logical = qcmap::parse(*logical_text);
      print_diagnostics(ver_logical, logical.diagnostics);
      if (!logical.circuit) return kExitInput;
      qcmap::RoutedFileParse routed = qcmap::parse_routed(*routed_text);
      print_diagnostics(ver_routed, routed.diagnostics);
      if (!routed.ok()) return kExitInput;

      const int n = routed.circuit->num_qubits();
      if (logical.circuit->num_qubits() > n) {
        std::cerr << "routed register is narrower than the logical circuit\n";
        return kExitInput;
      }
      if (n > qcmap::kSimQubitCap) {
        std::cerr << "register too wide to simulate (cap " << qcmap::kSimQubitCap << ")\n";
        return kExitInput;
      }

      bool compliant = true;
      if (!ver_coupling.empty()) {
        const auto device = load_coupling(ver_coupling);
        if (!device) return kExitInput;
        if (device->num_qubits() != n) {
          std::cerr << "device size does not match routed register\n";
          return kExitInput;
        }
        for (const qcmap::Gate& g : routed.circuit->gates())
          if (g.is_cx() && !device->adjacent(g.q0, g.q1)) {
            std::cerr << "compliance violation: cx q[" << g.q0 << "],q[" << g.q1
                      << "] is not a coupling edge\n";
            compliant = false;
          }
      }

      const qcmap::Circuit logical_padded = logical.circuit->padded(n);
      double min_fid = 1.0;
      for (int t = 0; t < ver_trials; ++t) {
        const auto psi = qcmap::StateVector::random(n, ver_seed + static_cast<std::uint64_t>(t));
        const auto want = qcmap::simulate(logical_padded, psi);
        auto got = qcmap::permute_wires(psi, routed.initial_layout->forward());
        got = qcmap::simulate(*routed.circuit, std::move(got));
        got = qcmap::permute_wires(got, routed.final_layout->inverse());
        min_fid = std::min(min_fid, qcmap::fidelity(want, got));
      }
      const bool equivalent = min_fid >= 1.0 - ver_tol;
      std::cout << (compliant && equivalent ? "PASS" : "FAIL") << " min_fidelity=" << min_fid
                << " trials=" << ver_trials;
      if (!ver_coupling.empty()) std::cout << " compliant=" << (compliant ? "yes" : "no");
      std::cout << '\n';
      return compliant && equivalent ? 0 : kExitVerify;
    }

    if (bench->parsed()) {
      std::vector<qcmap::BenchTask> tasks;
      for (const std::string& path : bench_files) {
        const auto circuit = load_circuit(path);
        if (!circuit) return kExitInput;
        tasks.push_back({file_stem(path), *circuit});
      }
      if (!bench_random.empty()) {
        int count = 0, qubits = 0, gates = 0;
        if (std::sscanf(bench_random.c_str(), "%d,%d,%d", &count, &qubits, &gates) != 3 ||
            count <= 0 || qubits < 2 || gates < 0) {
          std::cerr << "--random wants <count>,<qubits>,<gates>\n";
          return kExitInput;
        }
        for (int i = 0; i < count; ++i)
          tasks.push_back({"rand-" + std::to_string(i),
                           qcmap::gen_random(qubits, gates, bench_seed + static_cast<std::uint64_t>(i))});
      }
      if (tasks.empty()) {
        std::cerr << "nothing to bench: pass circuit files or --random\n";
        return kExitInput;
      }
      const auto device = load_coupling(bench_coupling);
      if (!device) return kExitInput;
      const auto forms = parse_formulations_arg(bench_forms);
      if (!forms) return kExitInput;

      qcmap::BenchConfig cfg;
      cfg.device = *device;
      cfg.formulations = *forms;
      cfg.algos.clear();
      {
        std::istringstream iss(bench_algos);
        std::string part;
        while (std::getline(iss, part, ',')) {
          if (part != "exact" && part != "heuristic") {
            std::cerr << "unknown algo '" << part << "'\n";
            return kExitInput;
          }
          cfg.algos.push_back(part);
        }
      }
      if (bench_layout != "all") {
        const auto l = parse_layout_arg(bench_layout, device->num_qubits());
        if (!l) return kExitInput;
        cfg.exact.initial_layout = *l;
      }
      cfg.exact.max_states = bench_max_states;
      cfg.exact.max_qubits_guard = bench_guard;
      cfg.heuristic = {bench_alpha, bench_lookahead};
      cfg.heuristic_postprocess = !bench_no_postprocess;
      cfg.allow_bridge = !bench_no_bridge;
      cfg.verify = !bench_no_verify;
      cfg.verify_trials = bench_trials;
      cfg.verify_tol = bench_tol;
      cfg.sabotage_verify = bench_sabotage;

      const std::vector<qcmap::BenchRow> rows = qcmap::run_bench(tasks, cfg);
      std::cout << qcmap::render_table(rows);
      if (!bench_csv.empty() && !write_output(bench_csv, qcmap::render_csv(rows))) {
        std::cerr << bench_csv << ": cannot write\n";
        return kExitInput;
      }
      for (const qcmap::BenchRow& r : rows)
        if (r.failed()) return kExitVerify;
      return 0;
    }

    if (dot->parsed()) {
      const auto circuit = load_circuit(dot_in);
      if (!circuit) return kExitInput;
      const auto rules = parse_rules_arg(dot_rules);
      if (!rules) return kExitInput;
      qcmap::DependencyGraph d = qcmap::build(*circuit, *rules);
      if (dot_reduce) d = qcmap::reduce_transitive(d);
      if (!write_output(dot_out, qcmap::to_dot(d))) {
        std::cerr << dot_out << ": cannot write\n";
        return kExitInput;
      }
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitRouting;
  }
  return 0;
}

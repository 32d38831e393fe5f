#pragma once

// Benchmark plumbing: seeded random circuits, the four routing formulations,
// and a driver that routes task x algo x formulation cells, times the routing
// call, replays every output through the verifier, and renders CSV or a
// plain-text table.

#include <chrono>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcmap/circuit.hpp"
#include "qcmap/coupling.hpp"
#include "qcmap/depgraph.hpp"
#include "qcmap/router_exact.hpp"
#include "qcmap/router_heuristic.hpp"
#include "qcmap/verify.hpp"

namespace qcmap {

/// Seeded random circuit: per gate one kind draw (0 rz, 1 h, 2..3 cx), then
/// the operand draws. Raw mt19937_64 words are reduced by modulo and the
/// angle uses the top 53 bits, so the stream is identical on every platform.
inline Circuit gen_random(int num_qubits, int num_gates, std::uint64_t seed) {
  if (num_qubits < 2) throw std::invalid_argument("gen_random: need at least two qubits");
  Circuit c(num_qubits);
  std::mt19937_64 rng(seed);
  const double two_pi = 2.0 * 3.14159265358979323846;
  const auto un = [&](int bound) { return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };
  for (int i = 0; i < num_gates; ++i) {
    switch (un(4)) {
      case 0: {
        const int q = un(num_qubits);
        const double angle = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0) * two_pi;
        c.add_rz(q, angle);
        break;
      }
      case 1:
        c.add_h(un(num_qubits));
        break;
      default: {
        const int control = un(num_qubits);
        int target = un(num_qubits - 1);
        if (target >= control) ++target;
        c.add_cx(control, target);
        break;
      }
    }
  }
  return c;
}

/// The four experiment formulations: rule set + whether bridges are allowed.
enum class Formulation { proposed, no_bridge, std_dag, fixed_layer };

inline const char* formulation_name(Formulation f) {
  switch (f) {
    case Formulation::proposed: return "proposed";
    case Formulation::no_bridge: return "no-bridge";
    case Formulation::std_dag: return "std-dag";
    case Formulation::fixed_layer: return "fixed-layer";
  }
  return "?";
}

inline std::optional<Formulation> parse_formulation(const std::string& s) {
  if (s == "proposed") return Formulation::proposed;
  if (s == "no-bridge") return Formulation::no_bridge;
  if (s == "std-dag") return Formulation::std_dag;
  if (s == "fixed-layer") return Formulation::fixed_layer;
  return std::nullopt;
}

inline RuleSet formulation_rules(Formulation f) {
  switch (f) {
    case Formulation::std_dag: return RuleSet::standard_dag;
    case Formulation::fixed_layer: return RuleSet::fixed_layer;
    default: return RuleSet::full;
  }
}

inline bool formulation_bridges(Formulation f) { return f != Formulation::no_bridge; }

struct BenchTask {
  std::string name;
  Circuit circuit;
};

struct BenchConfig {
  CouplingGraph device;
  std::vector<std::string> algos = {"heuristic"};  // "exact" and/or "heuristic"
  std::vector<Formulation> formulations = {Formulation::proposed};
  ExactOptions exact;  // initial_layout empty = all layouts
  HeuristicParams heuristic;
  std::optional<Layout> heuristic_layout;  // default: trivial
  bool heuristic_postprocess = true;
  /// Force bridges off everywhere, on top of whatever the formulation says.
  bool allow_bridge = true;
  bool verify = true;
  int verify_trials = 8;
  double verify_tol = 1e-9;
  std::uint64_t verify_seed = 0x5eedULL;
  /// Debug: append a stray gate to every routed circuit so the equivalence
  /// check must fail. Exercises the failure path end to end.
  bool sabotage_verify = false;
};

struct BenchRow {
  std::string name;
  int qubits = 0;
  int gates = 0;
  Formulation formulation = Formulation::proposed;
  std::string algo;
  bool ran = false;
  MappingStats stats;
  double time_s = 0.0;
  bool verified = false;
  std::string error;

  bool failed() const { return !ran || !verified; }
};

inline std::vector<BenchRow> run_bench(const std::vector<BenchTask>& tasks, const BenchConfig& cfg) {
  std::vector<BenchRow> rows;
  for (const BenchTask& task : tasks) {
    for (const std::string& algo : cfg.algos) {
      for (Formulation form : cfg.formulations) {
        BenchRow row;
        row.name = task.name;
        row.qubits = task.circuit.num_qubits();
        row.gates = task.circuit.num_gates();
        row.formulation = form;
        row.algo = algo;
        try {
          const Circuit padded = task.circuit.padded(cfg.device.num_qubits());
          const DependencyGraph dep = build(padded, formulation_rules(form));
          const bool bridges = cfg.allow_bridge && formulation_bridges(form);
          const auto t0 = std::chrono::steady_clock::now();
          MappingResult res;
          if (algo == "exact") {
            ExactOptions opts = cfg.exact;
            opts.allow_bridge = bridges;
            res = solve_exact(dep, cfg.device, opts);
          } else if (algo == "heuristic") {
            const Layout l0 = cfg.heuristic_layout ? *cfg.heuristic_layout
                                                   : Layout::identity(cfg.device.num_qubits());
            res = route_heuristic(dep, cfg.device, l0, cfg.heuristic, bridges,
                                  cfg.heuristic_postprocess);
          } else {
            throw std::invalid_argument("unknown algo '" + algo + "'");
          }
          row.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          row.stats = res.stats;
          row.ran = true;

          if (cfg.sabotage_verify)
            res.routed.ops.push_back(OriginalOp{Gate{-1, GateKind::h, 0.0, 0, -1}, 0, -1});

          if (cfg.verify) {
            const bool compliant = check_compliance(res.routed, cfg.device).ok;
            bool equivalent = true;
            if (cfg.device.num_qubits() <= kSimQubitCap) {
              equivalent = check_equivalence(padded, res.routed, cfg.verify_trials, cfg.verify_tol,
                                             cfg.verify_seed)
                               .ok;
            }
            row.verified = compliant && equivalent;
            if (!row.verified) row.error = compliant ? "equivalence failed" : "compliance failed";
          } else {
            row.verified = true;
          }
        } catch (const std::exception& ex) {
          row.ran = false;
          row.verified = false;
          row.error = ex.what();
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

inline std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", s);
  return buf;
}

inline std::string render_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "name,qubits,gates,formulation,algo,swaps,bridges,added_cnots,time_s,verified\n";
  for (const BenchRow& r : rows) {
    out << r.name << ',' << r.qubits << ',' << r.gates << ',' << formulation_name(r.formulation)
        << ',' << r.algo << ',' << r.stats.num_swaps << ',' << r.stats.num_bridges << ','
        << r.stats.added_cnots << ',' << format_seconds(r.time_s) << ','
        << (r.failed() ? "false" : "true") << '\n';
  }
  return out.str();
}

/// Human-oriented rendering: one row per cell plus per (algo, formulation)
/// averages. Failed rows print no numbers at all, only the FAILED marker and
/// the error text, and they are left out of the averages.
inline std::string render_table(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  char line[256];
  out << "# time_s covers routing only; bridges shown in parentheses below\n";
  std::snprintf(line, sizeof(line), "%-14s %6s %6s %-12s %-9s %6s %8s %7s %9s %s\n", "name",
                "qubits", "gates", "formulation", "algo", "swaps", "bridges", "cnots+", "time_s",
                "verified");
  out << line;
  for (const BenchRow& r : rows) {
    if (r.failed()) {
      std::snprintf(line, sizeof(line), "%-14s %6d %6d %-12s %-9s %6s %8s %7s %9s FAILED %s\n",
                    r.name.c_str(), r.qubits, r.gates, formulation_name(r.formulation),
                    r.algo.c_str(), "-", "-", "-", "-", r.error.c_str());
    } else {
      std::snprintf(line, sizeof(line), "%-14s %6d %6d %-12s %-9s %6d %8d %7d %9s ok\n",
                    r.name.c_str(), r.qubits, r.gates, formulation_name(r.formulation),
                    r.algo.c_str(), r.stats.num_swaps, r.stats.num_bridges, r.stats.added_cnots,
                    format_seconds(r.time_s).c_str());
    }
    out << line;
  }
  // Averages over the rows that passed, grouped by algo and formulation.
  struct Agg {
    std::string algo;
    Formulation form;
    int count = 0;
    double actions = 0, bridges = 0, cnots = 0, time = 0;
  };
  std::vector<Agg> aggs;
  for (const BenchRow& r : rows) {
    if (r.failed()) continue;
    Agg* a = nullptr;
    for (Agg& cand : aggs)
      if (cand.algo == r.algo && cand.form == r.formulation) a = &cand;
    if (!a) {
      aggs.push_back({r.algo, r.formulation, 0, 0, 0, 0, 0});
      a = &aggs.back();
    }
    ++a->count;
    a->actions += r.stats.num_swaps + r.stats.num_bridges;
    a->bridges += r.stats.num_bridges;
    a->cnots += r.stats.added_cnots;
    a->time += r.time_s;
  }
  if (!aggs.empty()) out << "\naverages (bridges in parens):\n";
  for (const Agg& a : aggs) {
    std::snprintf(line, sizeof(line),
                  "  %-9s %-12s  n=%-3d  actions=%.2f (%.2f)  added_cnots=%.2f  time_s=%.4f\n",
                  a.algo.c_str(), formulation_name(a.form), a.count, a.actions / a.count,
                  a.bridges / a.count, a.cnots / a.count, a.time / a.count);
    out << line;
  }
  return out.str();
}

}  // namespace qcmap

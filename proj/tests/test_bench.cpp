#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "qcmap/bench.hpp"
#include "qcmap/qasm.hpp"

using namespace qcmap;

TEST_CASE("gen_random is deterministic and well formed") {
  const Circuit a = gen_random(5, 40, 7);
  const Circuit b = gen_random(5, 40, 7);
  REQUIRE(emit_circuit(a) == emit_circuit(b));
  REQUIRE(emit_circuit(a) != emit_circuit(gen_random(5, 40, 8)));
  REQUIRE(a.num_qubits() == 5);
  REQUIRE(a.num_gates() == 40);
  for (int i = 0; i < a.num_gates(); ++i) {
    const Gate& g = a.gate(i);
    if (g.is_cx()) REQUIRE(g.q0 != g.q1);
    if (g.kind == GateKind::rz) {
      REQUIRE(g.angle >= 0.0);
      REQUIRE(g.angle < 6.2831853071795872);
    }
  }
  REQUIRE_THROWS_AS(gen_random(1, 4, 0), std::invalid_argument);
  REQUIRE(gen_random(5, 0, 3).num_gates() == 0);
}

TEST_CASE("gen_random kind frequencies") {
  const Circuit c = gen_random(6, 10000, 123);
  int rz = 0, h = 0, cx = 0;
  for (int i = 0; i < c.num_gates(); ++i) {
    switch (c.gate(i).kind) {
      case GateKind::rz: ++rz; break;
      case GateKind::h: ++h; break;
      default: ++cx; break;
    }
  }
  // One kind word mod 4: expect 1/4, 1/4, 1/2 within a wide margin.
  REQUIRE(std::abs(rz / 10000.0 - 0.25) < 0.02);
  REQUIRE(std::abs(h / 10000.0 - 0.25) < 0.02);
  REQUIRE(std::abs(cx / 10000.0 - 0.50) < 0.02);
}

TEST_CASE("formulation names round trip") {
  for (Formulation f : {Formulation::proposed, Formulation::no_bridge, Formulation::std_dag,
                        Formulation::fixed_layer}) {
    REQUIRE(parse_formulation(formulation_name(f)) == f);
  }
  REQUIRE_FALSE(parse_formulation("swap-only").has_value());
  REQUIRE(formulation_rules(Formulation::proposed) == RuleSet::full);
  REQUIRE(formulation_rules(Formulation::no_bridge) == RuleSet::full);
  REQUIRE(formulation_rules(Formulation::std_dag) == RuleSet::standard_dag);
  REQUIRE(formulation_rules(Formulation::fixed_layer) == RuleSet::fixed_layer);
  REQUIRE(formulation_bridges(Formulation::proposed));
  REQUIRE_FALSE(formulation_bridges(Formulation::no_bridge));
}

namespace {

BenchConfig demo_config() {
  BenchConfig cfg;
  cfg.device = CouplingGraph::t4();
  cfg.algos = {"exact", "heuristic"};
  cfg.formulations = {Formulation::proposed, Formulation::no_bridge};
  cfg.exact.initial_layout = Layout::identity(4);
  return cfg;
}

}  // namespace

TEST_CASE("run_bench fills one row per cell") {
  Circuit narrow(3);
  narrow.add_cx(0, 2);
  const std::vector<BenchTask> tasks = {{"demo", qct::commute_demo()}, {"narrow", narrow}};
  const auto rows = run_bench(tasks, demo_config());
  REQUIRE(rows.size() == 8);
  for (const BenchRow& r : rows) {
    INFO(r.name << " " << r.algo << " " << formulation_name(r.formulation) << ": " << r.error);
    REQUIRE(r.ran);
    REQUIRE(r.verified);
    REQUIRE_FALSE(r.failed());
    REQUIRE(r.time_s >= 0.0);
  }
  REQUIRE(rows[0].name == "demo");
  REQUIRE(rows[0].qubits == 4);
  REQUIRE(rows[0].gates == 5);
  // Exact, proposed, trivial layout: the known one-bridge optimum.
  REQUIRE(rows[0].stats == MappingStats{0, 1, 3});
  // Exact, no bridges: one swap instead.
  REQUIRE(rows[1].stats == MappingStats{1, 0, 3});
  // The narrow task reports its own width, not the device's.
  REQUIRE(rows[4].qubits == 3);
}

TEST_CASE("allow_bridge=false overrides the formulation") {
  BenchConfig cfg = demo_config();
  cfg.allow_bridge = false;
  const auto rows = run_bench({{"demo", qct::commute_demo()}}, cfg);
  for (const BenchRow& r : rows) {
    REQUIRE(r.verified);
    REQUIRE(r.stats.num_bridges == 0);
  }
}

TEST_CASE("unknown algo fails its rows only") {
  BenchConfig cfg = demo_config();
  cfg.algos = {"exact", "annealer"};
  cfg.formulations = {Formulation::proposed};
  const auto rows = run_bench({{"demo", qct::commute_demo()}}, cfg);
  REQUIRE(rows.size() == 2);
  REQUIRE_FALSE(rows[0].failed());
  REQUIRE(rows[1].failed());
  REQUIRE_FALSE(rows[1].ran);
  REQUIRE(rows[1].error.find("annealer") != std::string::npos);
}

TEST_CASE("sabotage flips verification and the renderers show it") {
  BenchConfig cfg = demo_config();
  cfg.algos = {"heuristic"};
  cfg.formulations = {Formulation::proposed};
  cfg.sabotage_verify = true;
  const auto rows = run_bench({{"demo", qct::commute_demo()}}, cfg);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].ran);
  REQUIRE_FALSE(rows[0].verified);
  REQUIRE(rows[0].error == "equivalence failed");

  const std::string table = render_table(rows);
  REQUIRE(table.find("FAILED equivalence failed") != std::string::npos);
  // No numbers and no averages from a failed row.
  REQUIRE(table.find("averages (") == std::string::npos);

  const std::string csv = render_csv(rows);
  REQUIRE(csv.find(",false\n") != std::string::npos);
}

TEST_CASE("renderers on a passing run") {
  BenchConfig cfg = demo_config();
  const auto rows = run_bench({{"demo", qct::commute_demo()}}, cfg);

  const std::string csv = render_csv(rows);
  REQUIRE(csv.rfind("name,qubits,gates,formulation,algo,swaps,bridges,added_cnots,time_s,verified\n",
                    0) == 0);
  REQUIRE(csv.find("demo,4,5,proposed,exact,0,1,3,") != std::string::npos);
  REQUIRE(csv.find("demo,4,5,no-bridge,exact,1,0,3,") != std::string::npos);
  REQUIRE(csv.find(",true\n") != std::string::npos);
  REQUIRE(csv.find("false") == std::string::npos);

  const std::string table = render_table(rows);
  REQUIRE(table.rfind("# time_s covers routing only", 0) == 0);
  REQUIRE(table.find(" ok") != std::string::npos);
  REQUIRE(table.find("FAILED") == std::string::npos);
  REQUIRE(table.find("averages (bridges in parens):") != std::string::npos);
  // Exact proposed on the demo: one bridge per row, so actions 1.00 of which
  // 1.00 bridges; the no-bridge cell shows (0.00).
  REQUIRE(table.find("exact     proposed      n=1    actions=1.00 (1.00)") != std::string::npos);
  REQUIRE(table.find("exact     no-bridge     n=1    actions=1.00 (0.00)") != std::string::npos);
}

TEST_CASE("verification can be skipped") {
  BenchConfig cfg = demo_config();
  cfg.verify = false;
  cfg.sabotage_verify = true;  // would fail if the replay ran
  const auto rows = run_bench({{"demo", qct::commute_demo()}}, cfg);
  for (const BenchRow& r : rows) REQUIRE(r.verified);
}

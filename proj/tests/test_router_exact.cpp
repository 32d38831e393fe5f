#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "qcmap/bench.hpp"
#include "qcmap/qasm.hpp"
#include "qcmap/router_exact.hpp"
#include "qcmap/verify.hpp"

using namespace qcmap;

namespace {

// Compact op-stream signature for witness comparisons: g<id>, s(p,q), b<id>(c,m,t).
std::string signature(const RoutedCircuit& r) {
  std::string out;
  for (const RoutedOp& op : r.ops) {
    if (const auto* o = std::get_if<OriginalOp>(&op)) {
      out += "g" + std::to_string(o->gate.id);
    } else if (const auto* s = std::get_if<SwapOp>(&op)) {
      out += "s(" + std::to_string(s->p) + "," + std::to_string(s->q) + ")";
    } else {
      const auto& b = std::get<BridgeOp>(op);
      out += "b" + std::to_string(b.gate_id) + "(" + std::to_string(b.control) + "," +
             std::to_string(b.middle) + "," + std::to_string(b.target) + ")";
    }
    out += " ";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

}  // namespace

TEST_CASE("demo on the star: one swap without bridges") {
  const DependencyGraph d = build(qct::commute_demo(), RuleSet::full);
  const CouplingGraph g = CouplingGraph::t4();
  ExactOptions opts;
  opts.allow_bridge = false;
  opts.initial_layout = Layout::identity(4);
  const MappingResult res = solve_exact(d, g, opts);
  REQUIRE(res.cost == 1);
  REQUIRE(res.stats.num_swaps == 1);
  REQUIRE(res.stats.num_bridges == 0);
  REQUIRE(res.stats.added_cnots == 3);
  REQUIRE(signature(res.routed) == "g0 g3 g4 s(1,2) g1 g2");
  REQUIRE(res.routed.final_layout.forward() == std::vector<int>{0, 2, 1, 3});
  REQUIRE(res.states > 0);
  REQUIRE(check_compliance(res.routed, g).ok);
  REQUIRE(check_equivalence(qct::commute_demo(), res.routed).ok);
}

TEST_CASE("demo on the star: bridges win with zero swaps") {
  const DependencyGraph d = build(qct::commute_demo(), RuleSet::full);
  const CouplingGraph g = CouplingGraph::t4();
  ExactOptions opts;
  opts.initial_layout = Layout::identity(4);
  const MappingResult res = solve_exact(d, g, opts);
  REQUIRE(res.cost == 1);
  REQUIRE(res.stats.num_swaps == 0);
  REQUIRE(res.stats.num_bridges == 1);
  REQUIRE(signature(res.routed) == "g0 g3 g4 b1(2,1,3) g2");
  REQUIRE(res.routed.final_layout.forward() == std::vector<int>{0, 1, 2, 3});
  REQUIRE(check_compliance(res.routed, g).ok);
  REQUIRE(check_equivalence(qct::commute_demo(), res.routed).ok);
}

TEST_CASE("demo on the star: fixed layering costs an extra swap") {
  const DependencyGraph d = build(qct::commute_demo(), RuleSet::fixed_layer);
  const CouplingGraph g = CouplingGraph::t4();
  ExactOptions opts;
  opts.allow_bridge = false;
  opts.initial_layout = Layout::identity(4);
  const MappingResult res = solve_exact(d, g, opts);
  REQUIRE(res.cost == 2);
  REQUIRE(res.stats.num_swaps == 2);
  REQUIRE(check_equivalence(qct::commute_demo(), res.routed).ok);
}

TEST_CASE("all-layout seeding proves no free placement exists") {
  const DependencyGraph d = build(qct::commute_demo(), RuleSet::full);
  const CouplingGraph g = CouplingGraph::t4();
  ExactOptions opts;
  opts.allow_bridge = false;
  const MappingResult res = solve_exact(d, g, opts);
  // The interaction path 0-1-2-3 does not embed in a star, so every one of
  // the 24 seeds still needs one action.
  REQUIRE(res.cost == 1);
  REQUIRE(res.states >= 24);
  REQUIRE(check_equivalence(qct::commute_demo(), res.routed).ok);
}

TEST_CASE("circuits without long-range cnots route for free") {
  Circuit c(3);
  c.add_h(0);
  c.add_cx(0, 1);
  c.add_rz(2, 0.5);
  const DependencyGraph d = build(c, RuleSet::full);
  ExactOptions opts;
  opts.initial_layout = Layout::identity(3);
  const MappingResult res = solve_exact(d, CouplingGraph::lnn(3), opts);
  REQUIRE(res.cost == 0);
  REQUIRE(res.routed.ops.size() == 3);
  REQUIRE(res.states == 1);
}

TEST_CASE("input validation") {
  const DependencyGraph d = build(qct::gap_cx(), RuleSet::full);
  ExactOptions opts;
  opts.initial_layout = Layout::identity(3);
  REQUIRE_THROWS_AS(solve_exact(d, CouplingGraph(3, {{0, 1}}), opts), std::invalid_argument);
  REQUIRE_THROWS_AS(solve_exact(d, CouplingGraph::lnn(4), opts), std::invalid_argument);

  ExactOptions bad_layout;
  bad_layout.initial_layout = Layout::identity(4);
  REQUIRE_THROWS_AS(solve_exact(d, CouplingGraph::lnn(3), bad_layout), std::invalid_argument);
}

TEST_CASE("the qubit guard blocks factorial seeding") {
  const DependencyGraph d = build(qct::gap_cx(), RuleSet::full);
  ExactOptions opts;
  opts.max_qubits_guard = 2;
  REQUIRE_THROWS_AS(solve_exact(d, CouplingGraph::lnn(3), opts), std::runtime_error);
  opts.max_qubits_guard = 3;
  REQUIRE(solve_exact(d, CouplingGraph::lnn(3), opts).cost == 0);
}

TEST_CASE("the state budget aborts runaway searches") {
  Circuit c(5);
  for (int i = 0; i < 6; ++i) {
    c.add_cx(0, 4);
    c.add_cx(1, 3);
    c.add_cx(2, 4);
    c.add_h(0);
  }
  const DependencyGraph d = build(c, RuleSet::full);
  ExactOptions opts;
  opts.initial_layout = Layout::identity(5);
  opts.max_states = 16;
  REQUIRE_THROWS_AS(solve_exact(d, CouplingGraph::lnn(5), opts), std::runtime_error);
}

TEST_CASE("no-bridge runs never emit a bridge op") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Circuit c = gen_random(4, 8, seed);
    const DependencyGraph d = build(c, RuleSet::full);
    ExactOptions opts;
    opts.allow_bridge = false;
    const MappingResult res = solve_exact(d, CouplingGraph::lnn(4), opts);
    for (const RoutedOp& op : res.routed.ops) REQUIRE_FALSE(std::holds_alternative<BridgeOp>(op));
  }
}

TEST_CASE("exact cost matches the reference solver") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const Circuit c = gen_random(4, 8, seed);
    const DependencyGraph d = build(c, RuleSet::full);
    for (const CouplingGraph& g : {CouplingGraph::lnn(4), CouplingGraph::t4()}) {
      for (bool bridge : {false, true}) {
        ExactOptions opts;
        opts.allow_bridge = bridge;
        const MappingResult res = solve_exact(d, g, opts);
        REQUIRE(res.cost == qct::oracle_cost(d, g, std::nullopt, bridge));
        REQUIRE(check_compliance(res.routed, g).ok);
        REQUIRE(check_equivalence(c, res.routed).ok);
      }
    }
  }
}

TEST_CASE("formulation costs are monotone") {
  for (std::uint64_t seed = 200; seed < 206; ++seed) {
    const Circuit c = gen_random(4, 12, seed);
    const CouplingGraph g = CouplingGraph::lnn(4);
    auto cost = [&](Formulation f) {
      ExactOptions opts;
      opts.allow_bridge = formulation_bridges(f);
      return solve_exact(build(c, formulation_rules(f)), g, opts).cost;
    };
    const int proposed = cost(Formulation::proposed);
    const int no_bridge = cost(Formulation::no_bridge);
    const int std_dag = cost(Formulation::std_dag);
    const int fixed = cost(Formulation::fixed_layer);
    REQUIRE(proposed <= no_bridge);
    REQUIRE(proposed <= std_dag);
    REQUIRE(std_dag <= fixed);
  }
}

TEST_CASE("routed output survives an emit and reparse round trip") {
  const DependencyGraph d = build(qct::commute_demo(), RuleSet::full);
  const CouplingGraph g = CouplingGraph::t4();
  ExactOptions opts;
  opts.initial_layout = Layout::identity(4);
  const MappingResult res = solve_exact(d, g, opts);
  const RoutedFileParse back = parse_routed(emit(res.routed, true));
  REQUIRE(back.ok());
  REQUIRE(back.initial_layout->forward() == res.routed.initial_layout.forward());
  REQUIRE(back.final_layout->forward() == res.routed.final_layout.forward());
  for (const Gate& gate : back.circuit->gates())
    if (gate.is_cx()) REQUIRE(g.adjacent(gate.q0, gate.q1));
}

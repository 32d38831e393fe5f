#pragma once

// Exact mapper: breadth-first dynamic programming over search states
// (layout, blocking set). Each transition applies one swap or one bridge and
// costs one action (three added CNOTs either way), so plain BFS wave order
// yields cost-optimal terminals; the first state whose blocking set empties
// wins.
//
// Determinism: seeds enumerate layouts in lexicographic order; within a
// state, bridge transitions are generated before swap transitions (so among
// equal-cost witnesses a bridge resolution is preferred), bridges ordered by
// blocking gate id, swaps by sorted edge order. Bridges at distance two are
// layout-neutral, so only the lowest middle wire is materialized; the others
// would reach identical states.
//
// States are deduplicated on (layout, blocking set): the executed set is
// exactly the complement of what the blocking set reaches in the dependency
// graph, so it is recomputed on demand rather than stored.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qcmap/circuit.hpp"
#include "qcmap/coupling.hpp"
#include "qcmap/depgraph.hpp"

namespace qcmap {

struct ExactOptions {
  bool allow_bridge = true;
  /// Fixed seed layout; empty means try every layout (small devices only).
  std::optional<Layout> initial_layout;
  /// Refuse all-layout seeding above this device size (factorial blowup).
  int max_qubits_guard = 8;
  /// Abort if the visited-state count exceeds this.
  std::uint64_t max_states = 2'000'000;
};

struct SearchAction {
  enum class Kind : std::uint8_t { seed, swap, bridge };
  Kind kind = Kind::seed;
  std::int16_t p = -1;  // swap wires
  std::int16_t q = -1;
  std::uint16_t gate_id = 0;  // bridged source gate
  std::int16_t control = -1, middle = -1, target = -1;
};

struct SearchRecord {
  static constexpr std::uint32_t kNoParent = 0xffffffffu;
  std::uint32_t parent = kNoParent;
  std::uint32_t layout_id = 0;
  std::uint32_t f = 0;  // actions so far; BFS pops these in nondecreasing order
  SearchAction action;
  std::vector<std::uint16_t> blocking;
};

struct SearchRecords {
  std::vector<SearchRecord> records;
  std::vector<Layout> layouts;
};

struct MappingResult {
  RoutedCircuit routed;
  MappingStats stats;
  /// Actions taken (swaps + bridges); the exact solver's optimality objective.
  int cost = 0;
  /// Search states materialized (exact solver diagnostics; 0 for heuristic).
  std::uint64_t states = 0;
};

namespace detail {

struct StateKey {
  std::uint32_t layout_id = 0;
  std::vector<std::uint16_t> blocking;
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  size_t operator()(const StateKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(k.layout_id);
    for (std::uint16_t b : k.blocking) mix(std::uint64_t{b} + 1);
    return static_cast<size_t>(h);
  }
};

struct VecIntHash {
  size_t operator()(const std::vector<int>& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::uint64_t>(x) + 1;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

inline std::vector<std::uint16_t> narrow_blocking(const std::vector<int>& blocking) {
  std::vector<std::uint16_t> out;
  out.reserve(blocking.size());
  for (int g : blocking) out.push_back(static_cast<std::uint16_t>(g));
  return out;
}

// Frontier whose blocking set is `blocking`: resolved = everything the
// blocking set cannot reach.
inline Frontier frontier_from_blocking(const DependencyGraph& d,
                                       const std::vector<std::uint16_t>& blocking) {
  const int n = d.num_gates();
  std::vector<char> unresolved(static_cast<size_t>(n), 0);
  std::vector<int> stack;
  for (std::uint16_t g : blocking) {
    unresolved[g] = 1;
    stack.push_back(g);
  }
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int s : d.successors(u))
      if (!unresolved[static_cast<size_t>(s)]) {
        unresolved[static_cast<size_t>(s)] = 1;
        stack.push_back(s);
      }
  }
  Frontier f;
  f.blocking.assign(blocking.begin(), blocking.end());
  f.resolved.assign((static_cast<size_t>(n) + 63) / 64, 0);
  for (int g = 0; g < n; ++g)
    if (!unresolved[static_cast<size_t>(g)]) mark_resolved(f, g);
  return f;
}

}  // namespace detail

/// Replays the action chain ending at `terminal` into a routed circuit.
inline RoutedCircuit reconstruct(const DependencyGraph& d, const CouplingGraph& c,
                                 const SearchRecords& rec, std::uint32_t terminal) {
  std::vector<std::uint32_t> chain;
  for (std::uint32_t i = terminal; i != SearchRecord::kNoParent; i = rec.records.at(i).parent)
    chain.push_back(i);
  std::reverse(chain.begin(), chain.end());

  RoutedCircuit out;
  out.num_physical = c.num_qubits();
  Layout l = rec.layouts.at(rec.records.at(chain.front()).layout_id);
  out.initial_layout = l;

  auto emit_log = [&](const std::vector<int>& log) {
    for (int id : log) {
      const Gate& g = d.circuit().gate(id);
      out.ops.push_back(OriginalOp{g, l.phys(g.q0), g.is_cx() ? l.phys(g.q1) : -1});
    }
  };

  Frontier f = advance(d, make_initial_frontier(d), l, c);
  emit_log(f.executed_log);
  for (size_t i = 1; i < chain.size(); ++i) {
    const SearchAction& a = rec.records.at(chain[i]).action;
    if (a.kind == SearchAction::Kind::swap) {
      out.ops.push_back(SwapOp{a.p, a.q});
      l = layout_swap(l, a.p, a.q);
      f = advance(d, f, l, c);
    } else {
      out.ops.push_back(BridgeOp{a.gate_id, a.control, a.middle, a.target});
      f = advance(d, resolve_gate(d, f, a.gate_id), l, c);
    }
    emit_log(f.executed_log);
  }
  if (!f.done(d.num_gates()))
    throw std::logic_error("reconstruct: terminal state does not resolve the circuit");
  out.final_layout = l;
  return out;
}

inline MappingResult solve_exact(const DependencyGraph& d, const CouplingGraph& c,
                                 const ExactOptions& opts = {}) {
  const int n = c.num_qubits();
  if (!c.connected()) throw std::invalid_argument("solve_exact: coupling graph is not connected");
  if (d.circuit().num_qubits() != n)
    throw std::invalid_argument("solve_exact: circuit width != device size (pad the circuit)");
  if (d.num_gates() >= 0xffff) throw std::invalid_argument("solve_exact: too many gates");
  if (!opts.initial_layout && n > opts.max_qubits_guard)
    throw std::runtime_error(
        "solve_exact: all-layout seeding refused for " + std::to_string(n) + " qubits (guard " +
        std::to_string(opts.max_qubits_guard) + "); fix an initial layout or raise the guard");
  if (opts.initial_layout && opts.initial_layout->num_qubits() != n)
    throw std::invalid_argument("solve_exact: initial layout size mismatch");

  SearchRecords rec;
  std::unordered_map<std::vector<int>, std::uint32_t, detail::VecIntHash> layout_ids;
  auto intern = [&](const Layout& l) -> std::uint32_t {
    auto [it, fresh] = layout_ids.try_emplace(l.forward(), static_cast<std::uint32_t>(rec.layouts.size()));
    if (fresh) rec.layouts.push_back(l);
    return it->second;
  };

  std::unordered_map<detail::StateKey, std::uint32_t, detail::StateKeyHash> visited;
  std::optional<std::uint32_t> terminal;

  // Returns true when the freshly inserted state is terminal.
  auto try_insert = [&](std::uint32_t parent, std::uint32_t layout_id, const SearchAction& action,
                        const std::vector<int>& blocking) -> bool {
    detail::StateKey key{layout_id, detail::narrow_blocking(blocking)};
    auto [it, fresh] = visited.try_emplace(std::move(key), static_cast<std::uint32_t>(rec.records.size()));
    if (!fresh) return false;
    if (rec.records.size() >= opts.max_states)
      throw std::runtime_error("solve_exact: state budget exhausted (" +
                               std::to_string(opts.max_states) + " states)");
    const std::uint32_t f = parent == SearchRecord::kNoParent ? 0 : rec.records[parent].f + 1;
    rec.records.push_back({parent, layout_id, f, action, it->first.blocking});
    if (blocking.empty()) terminal = it->second;
    return blocking.empty();
  };

  // Seed wave: cost-zero states, one per candidate layout.
  auto seed = [&](const Layout& l) -> bool {
    const Frontier f = advance(d, make_initial_frontier(d), l, c);
    return try_insert(SearchRecord::kNoParent, intern(l), SearchAction{}, f.blocking);
  };
  if (opts.initial_layout) {
    seed(*opts.initial_layout);
  } else {
    std::vector<int> fwd(static_cast<size_t>(n));
    std::iota(fwd.begin(), fwd.end(), 0);
    do {
      if (seed(Layout::from_forward(fwd))) break;
    } while (std::next_permutation(fwd.begin(), fwd.end()));
  }

  std::uint32_t wave = 0;
  for (std::uint32_t head = 0; head < rec.records.size() && !terminal; ++head) {
    if (rec.records[head].f < wave)
      throw std::logic_error("solve_exact: BFS wave order violated");
    wave = rec.records[head].f;
    const Layout l = rec.layouts[rec.records[head].layout_id];  // copy: rec grows
    const std::uint32_t layout_id = rec.records[head].layout_id;
    const Frontier f = detail::frontier_from_blocking(d, rec.records[head].blocking);

    if (opts.allow_bridge) {
      for (int g : f.blocking) {
        const Gate& gate = d.circuit().gate(g);
        const int pc = l.phys(gate.q0);
        const int pt = l.phys(gate.q1);
        if (c.dist(pc, pt) != 2) continue;
        const int m = c.middles(pc, pt).front();
        const Frontier next = advance(d, resolve_gate(d, f, g), l, c);
        SearchAction a;
        a.kind = SearchAction::Kind::bridge;
        a.gate_id = static_cast<std::uint16_t>(g);
        a.control = static_cast<std::int16_t>(pc);
        a.middle = static_cast<std::int16_t>(m);
        a.target = static_cast<std::int16_t>(pt);
        if (try_insert(head, layout_id, a, next.blocking)) break;
      }
      if (terminal) break;
    }

    for (auto [p, q] : c.edges()) {
      const Layout l2 = layout_swap(l, p, q);
      const Frontier next = advance(d, f, l2, c);
      SearchAction a;
      a.kind = SearchAction::Kind::swap;
      a.p = static_cast<std::int16_t>(p);
      a.q = static_cast<std::int16_t>(q);
      if (try_insert(head, intern(l2), a, next.blocking)) break;
    }
  }

  if (!terminal) throw std::logic_error("solve_exact: search exhausted without a terminal state");

  MappingResult res;
  res.routed = reconstruct(d, c, rec, *terminal);
  res.stats = stats(res.routed);
  res.cost = res.stats.num_swaps + res.stats.num_bridges;
  if (res.cost != static_cast<int>(rec.records[*terminal].f))
    throw std::logic_error("solve_exact: reconstructed cost disagrees with search depth");
  res.states = rec.records.size();
  return res;
}

}  // namespace qcmap

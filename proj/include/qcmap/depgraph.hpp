#pragma once

// Gate dependency graphs. Three rule sets decide when two gates sharing a
// qubit must keep their order:
//
//  - full: the commutation-aware rules. On each shared qubit, look at the
//    symbol every intervening gate (endpoints included) puts on that wire
//    (rz/control are Z-like, rx/target are X-like, h is neither). The pair
//    commutes on that wire iff the whole window is Z-like or all X-like; a
//    dependence edge is added iff some shared wire forbids commuting.
//  - standard_dag: consecutive gates on each wire's timeline depend on each
//    other, commuting or not.
//  - fixed_layer: standard_dag plus a total order between consecutive CNOT
//    layers (ASAP layering), which pins the CNOT schedule of the original
//    circuit.
//
// The graph owns a copy of its circuit; routers take the graph alone.
// Frontier bookkeeping (the "blocking set" of gates waiting for routing) also
// lives here: advance() greedily executes every compliant frontier gate,
// lowest id first, until only non-executable CNOTs remain.

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcmap/circuit.hpp"
#include "qcmap/coupling.hpp"

namespace qcmap {

enum class RuleSet { full, standard_dag, fixed_layer };

inline const char* rule_set_name(RuleSet r) {
  switch (r) {
    case RuleSet::full: return "full";
    case RuleSet::standard_dag: return "standard-dag";
    case RuleSet::fixed_layer: return "fixed-layer";
  }
  return "?";
}

/// What a gate looks like from one of its wires.
enum class Symbol : std::uint8_t { rz, control, rx, target, h };

inline Symbol gate_symbol_on(const Gate& g, int qubit) {
  if (!g.acts_on(qubit)) throw std::invalid_argument("gate_symbol_on: gate does not touch qubit");
  switch (g.kind) {
    case GateKind::rz: return Symbol::rz;
    case GateKind::rx: return Symbol::rx;
    case GateKind::h: return Symbol::h;
    case GateKind::cx: return qubit == g.q0 ? Symbol::control : Symbol::target;
  }
  return Symbol::h;
}

inline bool z_like(Symbol s) { return s == Symbol::rz || s == Symbol::control; }
inline bool x_like(Symbol s) { return s == Symbol::rx || s == Symbol::target; }

class DependencyGraph {
 public:
  DependencyGraph() = default;

  DependencyGraph(Circuit circuit, RuleSet rules, std::vector<std::pair<int, int>> edges)
      : circuit_(std::move(circuit)), rules_(rules) {
    const int n = circuit_.num_gates();
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    succ_.assign(static_cast<size_t>(n), {});
    pred_.assign(static_cast<size_t>(n), {});
    for (auto [a, b] : edges_) {
      if (a < 0 || a >= n || b < 0 || b >= n || a == b)
        throw std::invalid_argument("DependencyGraph: bad edge");
      succ_[static_cast<size_t>(a)].push_back(b);
      pred_[static_cast<size_t>(b)].push_back(a);
    }
    compute_topological_order();
  }

  const Circuit& circuit() const { return circuit_; }
  RuleSet rules() const { return rules_; }
  int num_gates() const { return circuit_.num_gates(); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& successors(int g) const { return succ_.at(static_cast<size_t>(g)); }
  const std::vector<int>& predecessors(int g) const { return pred_.at(static_cast<size_t>(g)); }
  int in_degree(int g) const { return static_cast<int>(predecessors(g).size()); }

  bool has_edge(int a, int b) const {
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(a, b));
  }

  /// Kahn order, lowest gate id first among ready nodes. For full and
  /// standard_dag this equals id order; fixed_layer layer edges can point
  /// against id order, so the computed order is authoritative.
  const std::vector<int>& topological_order() const { return topo_; }

 private:
  void compute_topological_order() {
    const int n = num_gates();
    std::vector<int> indeg(static_cast<size_t>(n));
    for (int g = 0; g < n; ++g) indeg[static_cast<size_t>(g)] = in_degree(g);
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int g = 0; g < n; ++g)
      if (indeg[static_cast<size_t>(g)] == 0) ready.push(g);
    topo_.reserve(static_cast<size_t>(n));
    while (!ready.empty()) {
      const int g = ready.top();
      ready.pop();
      topo_.push_back(g);
      for (int s : succ_[static_cast<size_t>(g)])
        if (--indeg[static_cast<size_t>(s)] == 0) ready.push(s);
    }
    if (static_cast<int>(topo_.size()) != n)
      throw std::logic_error("DependencyGraph: cycle detected");
  }

  Circuit circuit_;
  RuleSet rules_ = RuleSet::full;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
  std::vector<int> topo_;
};

namespace detail {

// Per-qubit timelines: gate ids touching each wire, in program order.
inline std::vector<std::vector<int>> qubit_timelines(const Circuit& c) {
  std::vector<std::vector<int>> tl(static_cast<size_t>(c.num_qubits()));
  for (const Gate& g : c.gates()) {
    tl[static_cast<size_t>(g.q0)].push_back(g.id);
    if (g.is_cx()) tl[static_cast<size_t>(g.q1)].push_back(g.id);
  }
  return tl;
}

}  // namespace detail

inline DependencyGraph build(const Circuit& c, RuleSet rules) {
  std::vector<std::pair<int, int>> edges;
  const auto timelines = detail::qubit_timelines(c);

  if (rules == RuleSet::full) {
    for (size_t q = 0; q < timelines.size(); ++q) {
      const std::vector<int>& tl = timelines[q];
      const int len = static_cast<int>(tl.size());
      // Prefix counts of Z-like / X-like symbols let any window be classified
      // in O(1); a window commutes iff it is homogeneous in one class.
      std::vector<int> zc(static_cast<size_t>(len) + 1, 0), xc(static_cast<size_t>(len) + 1, 0);
      for (int i = 0; i < len; ++i) {
        const Symbol s = gate_symbol_on(c.gate(tl[static_cast<size_t>(i)]), static_cast<int>(q));
        zc[static_cast<size_t>(i) + 1] = zc[static_cast<size_t>(i)] + (z_like(s) ? 1 : 0);
        xc[static_cast<size_t>(i) + 1] = xc[static_cast<size_t>(i)] + (x_like(s) ? 1 : 0);
      }
      for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j) {
          const int w = j - i + 1;
          const bool all_z = zc[static_cast<size_t>(j) + 1] - zc[static_cast<size_t>(i)] == w;
          const bool all_x = xc[static_cast<size_t>(j) + 1] - xc[static_cast<size_t>(i)] == w;
          if (!all_z && !all_x)
            edges.emplace_back(tl[static_cast<size_t>(i)], tl[static_cast<size_t>(j)]);
        }
    }
    return DependencyGraph(c, rules, std::move(edges));
  }

  // standard_dag core, shared by fixed_layer.
  for (const std::vector<int>& tl : timelines)
    for (size_t i = 0; i + 1 < tl.size(); ++i) edges.emplace_back(tl[i], tl[i + 1]);

  if (rules == RuleSet::fixed_layer) {
    // ASAP CNOT layers: a CNOT lands one past the deepest CNOT already
    // scheduled on either of its wires.
    std::vector<int> wire_layer(static_cast<size_t>(c.num_qubits()), 0);
    std::map<int, std::vector<int>> layers;
    for (const Gate& g : c.gates()) {
      if (!g.is_cx()) continue;
      const int layer =
          1 + std::max(wire_layer[static_cast<size_t>(g.q0)], wire_layer[static_cast<size_t>(g.q1)]);
      wire_layer[static_cast<size_t>(g.q0)] = layer;
      wire_layer[static_cast<size_t>(g.q1)] = layer;
      layers[layer].push_back(g.id);
    }
    for (auto it = layers.begin(); it != layers.end(); ++it) {
      auto next = std::next(it);
      if (next == layers.end()) break;
      for (int a : it->second)
        for (int b : next->second) edges.emplace_back(a, b);
    }
  }
  return DependencyGraph(c, rules, std::move(edges));
}

/// Drops every edge implied by a longer path. Reachability is preserved.
inline DependencyGraph reduce_transitive(const DependencyGraph& d) {
  const int n = d.num_gates();
  const size_t words = (static_cast<size_t>(n) + 63) / 64;
  // reach[u] = set of nodes strictly after u on some path.
  std::vector<std::vector<std::uint64_t>> reach(static_cast<size_t>(n),
                                                std::vector<std::uint64_t>(words, 0));
  const std::vector<int>& topo = d.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const int u = *it;
    auto& r = reach[static_cast<size_t>(u)];
    for (int w : d.successors(u)) {
      r[static_cast<size_t>(w) / 64] |= std::uint64_t{1} << (w % 64);
      const auto& rw = reach[static_cast<size_t>(w)];
      for (size_t k = 0; k < words; ++k) r[k] |= rw[k];
    }
  }
  std::vector<std::pair<int, int>> kept;
  for (auto [u, v] : d.edges()) {
    bool redundant = false;
    for (int w : d.successors(u)) {
      if (w == v) continue;
      if (reach[static_cast<size_t>(w)][static_cast<size_t>(v) / 64] & (std::uint64_t{1} << (v % 64))) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.emplace_back(u, v);
  }
  return DependencyGraph(d.circuit(), d.rules(), std::move(kept));
}

/// In-degree-zero gate ids, ascending. Not yet filtered for executability;
/// advance() does that.
inline std::vector<int> initial_frontier(const DependencyGraph& d) {
  std::vector<int> out;
  for (int g = 0; g < d.num_gates(); ++g)
    if (d.in_degree(g) == 0) out.push_back(g);
  return out;
}

/// Routing frontier: the sorted blocking set plus which gates have already
/// been executed (or otherwise resolved, e.g. replaced by a bridge). After
/// advance(), every blocking gate is a CNOT whose endpoints are non-adjacent
/// under the current layout. The pair (layout, blocking) determines the
/// resolved set, but carrying the bitset avoids recomputing it.
struct Frontier {
  std::vector<int> blocking;
  std::vector<std::uint64_t> resolved;
  int resolved_count = 0;
  std::vector<int> executed_log;  // gates advance() ran, in execution order

  bool is_resolved(int g) const {
    return resolved[static_cast<size_t>(g) / 64] & (std::uint64_t{1} << (g % 64));
  }
  bool done(int total) const { return resolved_count == total; }
};

inline Frontier make_initial_frontier(const DependencyGraph& d) {
  Frontier f;
  f.blocking = initial_frontier(d);
  f.resolved.assign((static_cast<size_t>(d.num_gates()) + 63) / 64, 0);
  return f;
}

namespace detail {

inline void mark_resolved(Frontier& f, int g) {
  f.resolved[static_cast<size_t>(g) / 64] |= std::uint64_t{1} << (g % 64);
  ++f.resolved_count;
}

// Removes g from the blocking set, marks it resolved, and admits every
// successor whose predecessors are now all resolved.
inline void settle_gate(const DependencyGraph& d, Frontier& f, int g) {
  auto it = std::lower_bound(f.blocking.begin(), f.blocking.end(), g);
  if (it == f.blocking.end() || *it != g)
    throw std::invalid_argument("settle_gate: gate not in blocking set");
  f.blocking.erase(it);
  mark_resolved(f, g);
  for (int s : d.successors(g)) {
    bool ready = true;
    for (int p : d.predecessors(s))
      if (!f.is_resolved(p)) {
        ready = false;
        break;
      }
    if (ready) {
      auto pos = std::lower_bound(f.blocking.begin(), f.blocking.end(), s);
      f.blocking.insert(pos, s);
    }
  }
}

}  // namespace detail

/// Runs every executable frontier gate (single-qubit gates always; CNOTs when
/// their physical endpoints are adjacent), lowest gate id first, until none
/// remains. executed_log lists what ran, in order.
inline Frontier advance(const DependencyGraph& d, const Frontier& in, const Layout& l,
                        const CouplingGraph& c) {
  Frontier f = in;
  f.executed_log.clear();
  const Circuit& circ = d.circuit();
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (size_t i = 0; i < f.blocking.size(); ++i) {
      const Gate& g = circ.gate(f.blocking[i]);
      const bool runnable = !g.is_cx() || c.adjacent(l.phys(g.q0), l.phys(g.q1));
      if (runnable) {
        f.executed_log.push_back(g.id);
        detail::settle_gate(d, f, g.id);
        progressed = true;
        break;  // restart at the lowest id; settle may have admitted smaller ids
      }
    }
  }
  return f;
}

/// Resolves a blocking gate without executing it on the layout (bridge
/// replacement). The caller typically runs advance() afterwards.
inline Frontier resolve_gate(const DependencyGraph& d, const Frontier& in, int g) {
  Frontier f = in;
  f.executed_log.clear();
  detail::settle_gate(d, f, g);
  return f;
}

/// Longest path length (in edges) from the blocking set to each reachable
/// unresolved CNOT, keeping only gates within max_depth. Blocking gates sit
/// at depth zero and are never relaxed. Paths may run through single-qubit
/// gates; only CNOTs appear in the result.
inline std::map<int, int> lookahead_depths(const DependencyGraph& d, const std::vector<int>& blocking,
                                           int max_depth) {
  std::vector<int> depth(static_cast<size_t>(d.num_gates()), -1);
  std::vector<char> pinned(static_cast<size_t>(d.num_gates()), 0);
  for (int g : blocking) {
    depth[static_cast<size_t>(g)] = 0;
    pinned[static_cast<size_t>(g)] = 1;
  }
  // One sweep in topological order relaxes every path (fixed_layer edges can
  // point against id order, so the stored order matters).
  for (int u : d.topological_order()) {
    const int du = depth[static_cast<size_t>(u)];
    if (du < 0) continue;
    for (int s : d.successors(u)) {
      if (pinned[static_cast<size_t>(s)]) continue;
      if (du + 1 > depth[static_cast<size_t>(s)]) depth[static_cast<size_t>(s)] = du + 1;
    }
  }
  std::map<int, int> out;
  for (int g = 0; g < d.num_gates(); ++g)
    if (depth[static_cast<size_t>(g)] >= 0 && depth[static_cast<size_t>(g)] <= max_depth &&
        d.circuit().gate(g).is_cx())
      out[g] = depth[static_cast<size_t>(g)];
  return out;
}

/// GraphViz rendering for debugging.
inline std::string to_dot(const DependencyGraph& d) {
  std::ostringstream out;
  out << "digraph deps {\n";
  out << "  rankdir=LR;\n";
  out << "  label=\"" << rule_set_name(d.rules()) << "\";\n";
  for (const Gate& g : d.circuit().gates()) {
    out << "  g" << g.id << " [label=\"g" << g.id << ": " << gate_name(g.kind);
    if (g.is_cx())
      out << " q" << g.q0 << ",q" << g.q1;
    else
      out << " q" << g.q0;
    out << "\"];\n";
  }
  for (auto [a, b] : d.edges()) out << "  g" << a << " -> g" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace qcmap

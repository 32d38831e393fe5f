#pragma once

// Greedy mapper with depth-bounded look-ahead. Each round scores every
// coupling edge by how much swapping it shortens the blocked CNOTs plus a
// geometrically discounted horizon of upcoming CNOTs, then applies the best
// swap if it strictly helps the blocking set; distance-two blockers are
// bridged instead when no swap scores at least one. A conservative fallback
// (walk the oldest blocker together along a shortest path) guarantees
// progress on pathological scores.
//
// Tie-breaks are pinned everywhere (lowest edge in sorted order, lowest gate
// id, lowest middle wire), so the routing is a deterministic function of its
// inputs.

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "qcmap/circuit.hpp"
#include "qcmap/coupling.hpp"
#include "qcmap/depgraph.hpp"
#include "qcmap/router_exact.hpp"

namespace qcmap {

struct HeuristicParams {
  double alpha = 0.5;      // per-level look-ahead discount
  int lookahead_depth = 10;  // dependency-graph levels considered
};

/// Swaps before any other activity on their wires are equivalent to starting
/// from a different initial layout; fold them in. A swap folds only when no
/// earlier remaining op of any kind touches either wire, scanned to fixpoint
/// so leading swap chains fold front to back. Physical wire assignments of
/// the remaining ops are untouched; semantics are preserved exactly.
inline RoutedCircuit postprocess_leading_swaps(const RoutedCircuit& r);

/// Per-edge swap scores, parallel to c.edges(). For each candidate swap, the
/// score sums gamma(g) * (dist drop of g's endpoints) over the blocking set
/// (gamma 1) and look-ahead CNOTs (gamma alpha^depth).
inline std::vector<double> score_edges(const DependencyGraph& d, const CouplingGraph& c,
                                       const Layout& l, const std::map<int, int>& depths,
                                       double alpha) {
  std::vector<double> scores(c.edges().size(), 0.0);
  for (const auto& [gid, depth] : depths) {
    const Gate& g = d.circuit().gate(gid);
    const double gamma = depth == 0 ? 1.0 : std::pow(alpha, depth);
    const int pc = l.phys(g.q0);
    const int pt = l.phys(g.q1);
    const int before = c.dist(pc, pt);
    for (size_t e = 0; e < c.edges().size(); ++e) {
      const auto [a, b] = c.edges()[e];
      const int pc2 = pc == a ? b : pc == b ? a : pc;
      const int pt2 = pt == a ? b : pt == b ? a : pt;
      scores[e] += gamma * (before - c.dist(pc2, pt2));
    }
  }
  return scores;
}

inline MappingResult route_heuristic(const DependencyGraph& d, const CouplingGraph& c,
                                     const Layout& initial, const HeuristicParams& params = {},
                                     bool allow_bridge = true, bool postprocess = true) {
  const int n = c.num_qubits();
  if (!c.connected()) throw std::invalid_argument("route_heuristic: coupling graph is not connected");
  if (d.circuit().num_qubits() != n)
    throw std::invalid_argument("route_heuristic: circuit width != device size (pad the circuit)");
  if (initial.num_qubits() != n)
    throw std::invalid_argument("route_heuristic: initial layout size mismatch");

  RoutedCircuit out;
  out.num_physical = n;
  out.initial_layout = initial;
  Layout l = initial;

  auto emit_log = [&](const std::vector<int>& log) {
    for (int id : log) {
      const Gate& g = d.circuit().gate(id);
      out.ops.push_back(OriginalOp{g, l.phys(g.q0), g.is_cx() ? l.phys(g.q1) : -1});
    }
  };

  Frontier f = advance(d, make_initial_frontier(d), l, c);
  emit_log(f.executed_log);

  auto blocking_span = [&]() {
    long span = 0;
    for (int g : f.blocking) {
      const Gate& gate = d.circuit().gate(g);
      span += c.dist(l.phys(gate.q0), l.phys(gate.q1));
    }
    return span;
  };

  // Every round resolves at least one gate or strictly shrinks a potential
  // function, but cap rounds defensively anyway.
  long rounds_left = 1000L + 50L * static_cast<long>(d.num_gates()) * n;
  while (!f.done(d.num_gates())) {
    if (--rounds_left < 0) throw std::logic_error("route_heuristic: no progress");

    const std::map<int, int> depths = lookahead_depths(d, f.blocking, params.lookahead_depth);
    const std::vector<double> scores = score_edges(d, c, l, depths, params.alpha);
    size_t best = 0;
    for (size_t e = 1; e < scores.size(); ++e)
      if (scores[e] > scores[best]) best = e;

    if (allow_bridge && scores[best] < 1.0) {
      // Bridge the oldest distance-two blocker, if any.
      int pick = -1, pc = -1, pt = -1;
      for (int g : f.blocking) {
        const Gate& gate = d.circuit().gate(g);
        const int a = l.phys(gate.q0);
        const int b = l.phys(gate.q1);
        if (c.dist(a, b) == 2) {
          pick = g;
          pc = a;
          pt = b;
          break;
        }
      }
      if (pick >= 0) {
        out.ops.push_back(BridgeOp{pick, pc, c.middles(pc, pt).front(), pt});
        f = advance(d, resolve_gate(d, f, pick), l, c);
        emit_log(f.executed_log);
        continue;
      }
    }

    // Best-scoring swap, accepted only if the blocking set strictly profits.
    const long span_before = blocking_span();
    {
      const auto [p, q] = c.edges()[best];
      const Layout l2 = layout_swap(l, p, q);
      long span_after = 0;
      for (int g : f.blocking) {
        const Gate& gate = d.circuit().gate(g);
        span_after += c.dist(l2.phys(gate.q0), l2.phys(gate.q1));
      }
      if (span_after < span_before) {
        out.ops.push_back(SwapOp{p, q});
        l = l2;
        f = advance(d, f, l, c);
        emit_log(f.executed_log);
        continue;
      }
    }

    // Fallback: march the oldest blocker's endpoints together.
    const Gate& gate = d.circuit().gate(f.blocking.front());
    while (c.dist(l.phys(gate.q0), l.phys(gate.q1)) > 1) {
      const int pc = l.phys(gate.q0);
      const int pt = l.phys(gate.q1);
      const int cur = c.dist(pc, pt);
      bool moved = false;
      for (const auto& [p, q] : c.edges()) {
        if (p != pc && q != pc && p != pt && q != pt) continue;
        const Layout l2 = layout_swap(l, p, q);
        if (c.dist(l2.phys(gate.q0), l2.phys(gate.q1)) < cur) {
          out.ops.push_back(SwapOp{p, q});
          l = l2;
          moved = true;
          break;
        }
      }
      // A shortest-path neighbor always improves on a connected graph.
      if (!moved) throw std::logic_error("route_heuristic: fallback stuck");
    }
    f = advance(d, f, l, c);
    emit_log(f.executed_log);
  }

  out.final_layout = l;
  if (postprocess) out = postprocess_leading_swaps(out);

  MappingResult res;
  res.routed = std::move(out);
  res.stats = stats(res.routed);
  res.cost = res.stats.num_swaps + res.stats.num_bridges;
  return res;
}

inline RoutedCircuit postprocess_leading_swaps(const RoutedCircuit& r) {
  RoutedCircuit out = r;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < out.ops.size(); ++i) {
      const auto* s = std::get_if<SwapOp>(&out.ops[i]);
      if (!s) continue;
      bool blocked = false;
      for (size_t j = 0; j < i && !blocked; ++j)
        blocked = touches(out.ops[j], s->p) || touches(out.ops[j], s->q);
      if (blocked) continue;
      out.initial_layout = layout_swap(out.initial_layout, s->p, s->q);
      out.ops.erase(out.ops.begin() + static_cast<std::ptrdiff_t>(i));
      changed = true;
      break;
    }
  }
  out.final_layout = final_layout_of(out.initial_layout, out.ops);
  return out;
}

}  // namespace qcmap

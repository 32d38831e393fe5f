#pragma once

// Reference cost solver used to cross-check the production mapper. Written
// against the same dependency-graph contract but sharing no search code:
// iterative-deepening DFS over (layout, done-bitmask) with a failed-budget
// memo, instead of breadth-first waves over interned records.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcmap/circuit.hpp"
#include "qcmap/coupling.hpp"
#include "qcmap/depgraph.hpp"

namespace qct {

namespace oracle_detail {

using State = std::pair<std::vector<int>, std::uint64_t>;  // forward map, done set

inline bool ready(const qcmap::DependencyGraph& d, std::uint64_t done, int g) {
  if (done >> g & 1) return false;
  for (int p : d.predecessors(g))
    if (!(done >> p & 1)) return false;
  return true;
}

// Runs every gate that is ready and compliant, to fixpoint. Order is
// irrelevant: executing one gate never disables another.
inline std::uint64_t closure(const qcmap::DependencyGraph& d, const qcmap::CouplingGraph& c,
                             const std::vector<int>& fwd, std::uint64_t done) {
  bool again = true;
  while (again) {
    again = false;
    for (int g = 0; g < d.num_gates(); ++g) {
      if (!ready(d, done, g)) continue;
      const qcmap::Gate& gate = d.circuit().gate(g);
      if (gate.is_cx() && !c.adjacent(fwd[static_cast<size_t>(gate.q0)],
                                      fwd[static_cast<size_t>(gate.q1)]))
        continue;
      done |= std::uint64_t{1} << g;
      again = true;
    }
  }
  return done;
}

struct Search {
  const qcmap::DependencyGraph& d;
  const qcmap::CouplingGraph& c;
  bool allow_bridge;
  std::uint64_t all;
  std::map<State, int> failed;  // state -> highest budget that already failed

  bool dfs(const std::vector<int>& fwd, std::uint64_t done, int budget) {
    if (done == all) return true;
    if (budget == 0) return false;
    State key{fwd, done};
    auto it = failed.find(key);
    if (it != failed.end() && it->second >= budget) return false;

    for (auto [p, q] : c.edges()) {
      std::vector<int> next = fwd;
      for (int& w : next) w = w == p ? q : (w == q ? p : w);
      if (dfs(next, closure(d, c, next, done), budget - 1)) return true;
    }
    if (allow_bridge) {
      for (int g = 0; g < d.num_gates(); ++g) {
        if (!ready(d, done, g)) continue;
        const qcmap::Gate& gate = d.circuit().gate(g);
        if (!gate.is_cx()) continue;
        if (c.dist(fwd[static_cast<size_t>(gate.q0)], fwd[static_cast<size_t>(gate.q1)]) != 2)
          continue;
        const std::uint64_t next = closure(d, c, fwd, done | std::uint64_t{1} << g);
        if (dfs(fwd, next, budget - 1)) return true;
      }
    }
    auto [slot, fresh] = failed.try_emplace(std::move(key), budget);
    if (!fresh && slot->second < budget) slot->second = budget;
    return false;
  }
};

}  // namespace oracle_detail

/// Minimum action count (swaps + bridges) to run the whole circuit, or -1 if
/// max_cost is exhausted. Seeds every layout when `fixed` is empty.
inline int oracle_cost(const qcmap::DependencyGraph& d, const qcmap::CouplingGraph& c,
                       const std::optional<qcmap::Layout>& fixed, bool allow_bridge,
                       int max_cost = 16) {
  if (d.num_gates() > 64) throw std::invalid_argument("oracle_cost: >64 gates");
  std::vector<std::vector<int>> seeds;
  if (fixed) {
    seeds.push_back(fixed->forward());
  } else {
    std::vector<int> fwd(static_cast<size_t>(c.num_qubits()));
    std::iota(fwd.begin(), fwd.end(), 0);
    do {
      seeds.push_back(fwd);
    } while (std::next_permutation(fwd.begin(), fwd.end()));
  }
  const std::uint64_t all =
      d.num_gates() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << d.num_gates()) - 1;
  oracle_detail::Search search{d, c, allow_bridge, all, {}};
  for (int budget = 0; budget <= max_cost; ++budget)
    for (const std::vector<int>& seed : seeds)
      if (search.dfs(seed, oracle_detail::closure(d, c, seed, 0), budget)) return budget;
  return -1;
}

}  // namespace qct

#pragma once

// Statevector simulation and the two checks run on every mapper output:
// compliance (every emitted CNOT sits on a coupling edge) and equivalence
// (routed circuit equals the source up to the boundary layout permutations).
//
// Convention: little-endian basis order. Basis index i assigns bit b of i to
// wire b, so wire 0 is the least significant bit.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcmap/circuit.hpp"
#include "qcmap/coupling.hpp"

namespace qcmap {

using Amplitude = std::complex<double>;

/// Hard cap on simulated register width; 2^20 amplitudes (16 MiB) keeps the
/// equivalence check snappy and guards against accidental huge allocations.
inline constexpr int kSimQubitCap = 20;

class StateVector {
 public:
  StateVector() = default;

  explicit StateVector(int num_qubits) {
    if (num_qubits < 0 || num_qubits > kSimQubitCap)
      throw std::invalid_argument("StateVector: qubit count outside [0, " +
                                  std::to_string(kSimQubitCap) + "]");
    n_ = num_qubits;
    amps_.assign(size_t{1} << n_, Amplitude{0.0, 0.0});
  }

  static StateVector basis(int num_qubits, std::uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.amps_.size()) throw std::invalid_argument("StateVector: basis index out of range");
    s.amps_[index] = {1.0, 0.0};
    return s;
  }

  /// Haar-ish random state: i.i.d. complex Gaussians, normalized. Deterministic
  /// in the seed.
  static StateVector random(int num_qubits, std::uint64_t seed) {
    StateVector s(num_qubits);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double norm2 = 0.0;
    for (Amplitude& a : s.amps_) {
      a = {gauss(rng), gauss(rng)};
      norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (Amplitude& a : s.amps_) a *= inv;
    return s;
  }

  int num_qubits() const { return n_; }
  const std::vector<Amplitude>& amps() const { return amps_; }
  std::vector<Amplitude>& amps() { return amps_; }

  double norm() const {
    double norm2 = 0.0;
    for (const Amplitude& a : amps_) norm2 += std::norm(a);
    return std::sqrt(norm2);
  }

 private:
  int n_ = 0;
  std::vector<Amplitude> amps_;
};

/// |<a|b>|.
inline double fidelity(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("fidelity: register widths differ");
  Amplitude inner{0.0, 0.0};
  for (size_t i = 0; i < a.amps().size(); ++i) inner += std::conj(a.amps()[i]) * b.amps()[i];
  return std::abs(inner);
}

inline void apply_gate(StateVector& s, const PhysGate& g) {
  const int n = s.num_qubits();
  auto& amps = s.amps();
  if (g.q0 < 0 || g.q0 >= n || (g.kind == GateKind::cx && (g.q1 < 0 || g.q1 >= n || g.q1 == g.q0)))
    throw std::invalid_argument("apply_gate: wire out of range");

  if (g.kind == GateKind::cx) {
    const std::uint64_t cbit = std::uint64_t{1} << g.q0;
    const std::uint64_t tbit = std::uint64_t{1} << g.q1;
    for (std::uint64_t i = 0; i < amps.size(); ++i)
      if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
    return;
  }

  // 2x2 on wire q0: pair amplitudes differing in that bit.
  Amplitude m00, m01, m10, m11;
  switch (g.kind) {
    case GateKind::h: {
      const double r = 1.0 / std::sqrt(2.0);
      m00 = {r, 0.0}; m01 = {r, 0.0}; m10 = {r, 0.0}; m11 = {-r, 0.0};
      break;
    }
    case GateKind::rz: {
      m00 = std::polar(1.0, -g.angle / 2.0);
      m01 = {0.0, 0.0}; m10 = {0.0, 0.0};
      m11 = std::polar(1.0, g.angle / 2.0);
      break;
    }
    case GateKind::rx: {
      const double c = std::cos(g.angle / 2.0);
      const double si = std::sin(g.angle / 2.0);
      m00 = {c, 0.0}; m01 = {0.0, -si}; m10 = {0.0, -si}; m11 = {c, 0.0};
      break;
    }
    default:
      throw std::invalid_argument("apply_gate: unhandled gate kind");
  }
  const std::uint64_t bit = std::uint64_t{1} << g.q0;
  for (std::uint64_t i = 0; i < amps.size(); ++i)
    if (!(i & bit)) {
      const Amplitude lo = amps[i];
      const Amplitude hi = amps[i | bit];
      amps[i] = m00 * lo + m01 * hi;
      amps[i | bit] = m10 * lo + m11 * hi;
    }
}

inline StateVector simulate(const Circuit& c, StateVector input) {
  if (input.num_qubits() != c.num_qubits())
    throw std::invalid_argument("simulate: state width != circuit width");
  for (const Gate& g : c.gates()) apply_gate(input, PhysGate{g.kind, g.angle, g.q0, g.q1});
  return input;
}

inline StateVector simulate_phys(const std::vector<PhysGate>& gates, StateVector input) {
  for (const PhysGate& g : gates) apply_gate(input, g);
  return input;
}

inline StateVector simulate_routed(const RoutedCircuit& r, StateVector input) {
  if (input.num_qubits() != r.num_physical)
    throw std::invalid_argument("simulate_routed: state width != register width");
  return simulate_phys(expand_routed(r), std::move(input));
}

/// Rewires amplitudes so that what sat on wire b moves to wire map[b].
/// map must be a permutation of 0..n-1.
inline StateVector permute_wires(const StateVector& s, const std::vector<int>& map) {
  const int n = s.num_qubits();
  if (static_cast<int>(map.size()) != n)
    throw std::invalid_argument("permute_wires: map size mismatch");
  Layout::from_forward(map);  // validates bijection
  StateVector out(n);
  for (std::uint64_t i = 0; i < s.amps().size(); ++i) {
    std::uint64_t j = 0;
    for (int b = 0; b < n; ++b)
      if (i & (std::uint64_t{1} << b)) j |= std::uint64_t{1} << map[static_cast<size_t>(b)];
    out.amps()[j] = s.amps()[i];
  }
  return out;
}

struct ComplianceViolation {
  int op_index = -1;  // index into RoutedCircuit::ops
  PhysCx cx;
};

struct ComplianceReport {
  bool ok = true;
  std::vector<ComplianceViolation> violations;
};

/// Every CNOT in the expanded stream must act on a coupling edge, and every
/// wire index must fit the device.
inline ComplianceReport check_compliance(const RoutedCircuit& r, const CouplingGraph& g) {
  ComplianceReport rep;
  if (r.num_physical != g.num_qubits())
    throw std::invalid_argument("check_compliance: register width != device size");
  auto bad = [&](const PhysCx& cx) { return !g.adjacent(cx.control, cx.target); };
  for (size_t i = 0; i < r.ops.size(); ++i) {
    const RoutedOp& op = r.ops[i];
    if (const auto* o = std::get_if<OriginalOp>(&op)) {
      if (o->gate.is_cx() && bad({o->p0, o->p1}))
        rep.violations.push_back({static_cast<int>(i), {o->p0, o->p1}});
    } else if (const auto* s = std::get_if<SwapOp>(&op)) {
      for (const PhysCx& cx : expand_swap(s->p, s->q))
        if (bad(cx)) {
          rep.violations.push_back({static_cast<int>(i), cx});
          break;
        }
    } else {
      const auto& b = std::get<BridgeOp>(op);
      for (const PhysCx& cx : expand_bridge(b.control, b.middle, b.target))
        if (bad(cx)) {
          rep.violations.push_back({static_cast<int>(i), cx});
          break;
        }
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

struct EquivalenceReport {
  bool ok = false;
  double min_fidelity = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  /// PRNG behind the trial states, so reports pin down reproducibility.
  std::string generator = "mt19937_64";
  std::vector<double> fidelities;
};

/// Checks U_routed == P_out . U_logical . P_in^-1 on random states:
/// feed P_in|psi> through the routed stream, undo the final layout, and
/// compare against the plain simulation of the source circuit.
/// Passes when every trial fidelity >= 1 - tol.
inline EquivalenceReport check_equivalence(const Circuit& logical, const RoutedCircuit& routed,
                                           int trials = 8, double tol = 1e-9,
                                           std::uint64_t seed = 0x5eedULL) {
  if (logical.num_qubits() != routed.num_physical)
    throw std::invalid_argument("check_equivalence: width mismatch (pad the logical circuit)");
  if (routed.num_physical > kSimQubitCap)
    throw std::invalid_argument("check_equivalence: register exceeds simulation cap");
  EquivalenceReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.min_fidelity = 1.0;
  for (int t = 0; t < trials; ++t) {
    const StateVector psi = StateVector::random(logical.num_qubits(), seed + static_cast<std::uint64_t>(t));
    const StateVector want = simulate(logical, psi);
    StateVector got = permute_wires(psi, routed.initial_layout.forward());
    got = simulate_routed(routed, std::move(got));
    got = permute_wires(got, routed.final_layout.inverse());
    const double f = fidelity(want, got);
    rep.fidelities.push_back(f);
    if (f < rep.min_fidelity) rep.min_fidelity = f;
  }
  rep.ok = rep.min_fidelity >= 1.0 - tol;
  return rep;
}

}  // namespace qcmap

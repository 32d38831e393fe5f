#pragma once

// Core circuit values: gates over logical qubits, physical layouts, and the
// routed-op stream produced by the mappers (originals, swaps, bridges).

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qcmap {

enum class GateKind : std::uint8_t { rz, rx, h, cx };

inline const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::rz: return "rz";
    case GateKind::rx: return "rx";
    case GateKind::h: return "h";
    case GateKind::cx: return "cx";
  }
  return "?";
}

/// One gate instance. `id` is the position in the owning circuit's gate list.
/// For cx, q0 is the control and q1 the target; single-qubit gates use q0 only.
struct Gate {
  int id = -1;
  GateKind kind = GateKind::h;
  double angle = 0.0;  // meaningful for rz/rx only
  int q0 = -1;
  int q1 = -1;

  bool is_cx() const { return kind == GateKind::cx; }
  bool acts_on(int qubit) const { return q0 == qubit || (is_cx() && q1 == qubit); }
};

/// Gate list over `num_qubits` logical wires. Append-only; ids are assigned
/// consecutively from zero so gate id doubles as program order.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0) throw std::invalid_argument("Circuit: negative qubit count");
  }

  int num_qubits() const { return num_qubits_; }
  int num_gates() const { return static_cast<int>(gates_.size()); }
  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(int id) const { return gates_.at(static_cast<size_t>(id)); }

  void add_rz(int q, double angle) { push({next_id(), GateKind::rz, angle, check(q), -1}); }
  void add_rx(int q, double angle) { push({next_id(), GateKind::rx, angle, check(q), -1}); }
  void add_h(int q) { push({next_id(), GateKind::h, 0.0, check(q), -1}); }

  void add_cx(int control, int target) {
    if (control == target) throw std::invalid_argument("Circuit: cx with equal operands");
    push({next_id(), GateKind::cx, 0.0, check(control), check(target)});
  }

  int count_cx() const {
    int n = 0;
    for (const Gate& g : gates_) n += g.is_cx();
    return n;
  }

  /// Same gates on a wider register (extra wires idle). Routers require the
  /// logical qubit count to match the device size; callers pad with this.
  Circuit padded(int num_qubits) const {
    if (num_qubits < num_qubits_) throw std::invalid_argument("Circuit: cannot pad to fewer qubits");
    Circuit c(num_qubits);
    c.gates_ = gates_;
    return c;
  }

 private:
  int next_id() const { return static_cast<int>(gates_.size()); }
  int check(int q) const {
    if (q < 0 || q >= num_qubits_) throw std::invalid_argument("Circuit: qubit index out of range");
    return q;
  }
  void push(Gate g) { gates_.push_back(g); }

  int num_qubits_ = 0;
  std::vector<Gate> gates_;
};

/// Bijection logical qubit b -> physical qubit phys(b), with the inverse kept
/// alongside. Sizes of both registers are equal by construction.
class Layout {
 public:
  Layout() = default;

  static Layout identity(int n) {
    std::vector<int> fwd(static_cast<size_t>(n));
    std::iota(fwd.begin(), fwd.end(), 0);
    return from_forward(std::move(fwd));
  }

  static Layout from_forward(std::vector<int> fwd) {
    Layout l;
    const int n = static_cast<int>(fwd.size());
    l.fwd_ = std::move(fwd);
    l.inv_.assign(static_cast<size_t>(n), -1);
    for (int b = 0; b < n; ++b) {
      const int p = l.fwd_[static_cast<size_t>(b)];
      if (p < 0 || p >= n || l.inv_[static_cast<size_t>(p)] != -1)
        throw std::invalid_argument("Layout: forward map is not a permutation");
      l.inv_[static_cast<size_t>(p)] = b;
    }
    return l;
  }

  int num_qubits() const { return static_cast<int>(fwd_.size()); }
  int phys(int b) const { return fwd_.at(static_cast<size_t>(b)); }
  int logical(int p) const { return inv_.at(static_cast<size_t>(p)); }
  const std::vector<int>& forward() const { return fwd_; }
  const std::vector<int>& inverse() const { return inv_; }

  friend bool operator==(const Layout& a, const Layout& b) { return a.fwd_ == b.fwd_; }

 private:
  std::vector<int> fwd_;
  std::vector<int> inv_;
};

/// Layout after exchanging the logical qubits sitting on physical p and q.
inline Layout layout_swap(const Layout& l, int p, int q) {
  const int n = l.num_qubits();
  if (p < 0 || p >= n || q < 0 || q >= n || p == q)
    throw std::invalid_argument("layout_swap: bad physical pair");
  std::vector<int> fwd = l.forward();
  fwd[static_cast<size_t>(l.logical(p))] = q;
  fwd[static_cast<size_t>(l.logical(q))] = p;
  return Layout::from_forward(std::move(fwd));
}

/// A CNOT on physical wires.
struct PhysCx {
  int control = -1;
  int target = -1;
  friend bool operator==(const PhysCx&, const PhysCx&) = default;
};

/// SWAP(p,q) as three CNOTs.
inline std::array<PhysCx, 3> expand_swap(int p, int q) {
  if (p == q) throw std::invalid_argument("expand_swap: equal wires");
  return {PhysCx{p, q}, PhysCx{q, p}, PhysCx{p, q}};
}

/// CX(control,target) across middle wire m as four CNOTs. Valid when control
/// and target sit at distance two with m adjacent to both; leaves the layout
/// unchanged.
inline std::array<PhysCx, 4> expand_bridge(int control, int m, int target) {
  if (control == m || m == target || control == target)
    throw std::invalid_argument("expand_bridge: wires not distinct");
  return {PhysCx{m, target}, PhysCx{control, m}, PhysCx{m, target}, PhysCx{control, m}};
}

/// A source gate placed on physical wires. p1 is -1 for single-qubit gates.
struct OriginalOp {
  Gate gate;
  int p0 = -1;
  int p1 = -1;
};

struct SwapOp {
  int p = -1;
  int q = -1;
};

/// Bridge implementing source CNOT `gate_id` with control/middle/target wires.
struct BridgeOp {
  int gate_id = -1;
  int control = -1;
  int middle = -1;
  int target = -1;
};

using RoutedOp = std::variant<OriginalOp, SwapOp, BridgeOp>;

inline bool touches(const RoutedOp& op, int phys) {
  if (const auto* o = std::get_if<OriginalOp>(&op)) return o->p0 == phys || o->p1 == phys;
  if (const auto* s = std::get_if<SwapOp>(&op)) return s->p == phys || s->q == phys;
  const auto& b = std::get<BridgeOp>(op);
  return b.control == phys || b.middle == phys || b.target == phys;
}

/// Gate on physical wires with the book-keeping stripped; the unit the
/// simulator and the expanded emitter consume.
struct PhysGate {
  GateKind kind = GateKind::h;
  double angle = 0.0;
  int q0 = -1;
  int q1 = -1;
  friend bool operator==(const PhysGate&, const PhysGate&) = default;
};

/// Output of a mapper: op stream over `num_physical` wires plus the layouts at
/// both ends. final_layout equals initial_layout folded through the swaps.
struct RoutedCircuit {
  int num_physical = 0;
  Layout initial_layout;
  Layout final_layout;
  std::vector<RoutedOp> ops;
};

/// initial layout advanced through every swap in `ops`.
inline Layout final_layout_of(const Layout& initial, const std::vector<RoutedOp>& ops) {
  Layout l = initial;
  for (const RoutedOp& op : ops)
    if (const auto* s = std::get_if<SwapOp>(&op)) l = layout_swap(l, s->p, s->q);
  return l;
}

/// Flattens a routed circuit to plain physical gates (swaps and bridges become
/// their CNOT expansions).
inline std::vector<PhysGate> expand_routed(const RoutedCircuit& r) {
  std::vector<PhysGate> out;
  out.reserve(r.ops.size() * 2);
  for (const RoutedOp& op : r.ops) {
    if (const auto* o = std::get_if<OriginalOp>(&op)) {
      out.push_back({o->gate.kind, o->gate.angle, o->p0, o->p1});
    } else if (const auto* s = std::get_if<SwapOp>(&op)) {
      for (const PhysCx& cx : expand_swap(s->p, s->q))
        out.push_back({GateKind::cx, 0.0, cx.control, cx.target});
    } else {
      const auto& b = std::get<BridgeOp>(op);
      for (const PhysCx& cx : expand_bridge(b.control, b.middle, b.target))
        out.push_back({GateKind::cx, 0.0, cx.control, cx.target});
    }
  }
  return out;
}

struct MappingStats {
  int num_swaps = 0;
  int num_bridges = 0;
  int added_cnots = 0;  // 3 per swap, 3 per bridge (4 CNOTs replacing 1)
  friend bool operator==(const MappingStats&, const MappingStats&) = default;
};

inline MappingStats stats(const RoutedCircuit& r) {
  MappingStats s;
  for (const RoutedOp& op : r.ops) {
    if (std::holds_alternative<SwapOp>(op)) ++s.num_swaps;
    else if (std::holds_alternative<BridgeOp>(op)) ++s.num_bridges;
  }
  s.added_cnots = 3 * (s.num_swaps + s.num_bridges);
  return s;
}

}  // namespace qcmap

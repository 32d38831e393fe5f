#pragma once

// Shared test fixtures. The commute demo is the worked example used across
// the suites: two CNOTs that commute past each other on a shared wire let the
// mapper run three of the five gates before any routing action is needed.

#include "qcmap/circuit.hpp"
#include "qcmap/coupling.hpp"

namespace qct {

// Five gates on four qubits:
//   g0 = cx b0,b1   g1 = cx b2,b3   g2 = cx b1,b2   g3 = rz b1   g4 = cx b1,b0
// On the T device with the trivial layout, g1 is the only gate that cannot
// run immediately: g3 and g4 slide past it through the commutation window.
inline qcmap::Circuit commute_demo() {
  qcmap::Circuit c(4);
  c.add_cx(0, 1);
  c.add_cx(2, 3);
  c.add_cx(1, 2);
  c.add_rz(1, 0.25 * 3.14159265358979323846);
  c.add_cx(1, 0);
  return c;
}

// Smallest routing-required instance: one CNOT spanning a distance-2 pair.
inline qcmap::Circuit gap_cx() {
  qcmap::Circuit c(3);
  c.add_cx(0, 2);
  return c;
}

}  // namespace qct

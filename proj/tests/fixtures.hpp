// Copyright 2026 The qctk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCT_TESTS_FIXTURES_HPP
#define QCT_TESTS_FIXTURES_HPP

#include <random>
#include <vector>

#include "qct/circuit.hpp"

namespace qct::tests {

// One QAOA layer on a triangle graph: mixer-prep H's, three ZZ interaction
// blocks (cx, rz, cx), then the RX mixer. 15 gates on 3 qubits.
inline const char* kQaoaTriangle = R"(
OPENQASM 2.0;
include "qelib1.inc";
qreg q[3];
h q[0];
h q[1];
h q[2];
cx q[0],q[1];
rz(5.67) q[1];
cx q[0],q[1];
cx q[1],q[2];
rz(5.67) q[2];
cx q[1],q[2];
cx q[0],q[2];
rz(5.67) q[2];
cx q[0],q[2];
rx(1.26) q[0];
rx(1.26) q[1];
rx(1.26) q[2];
)";

// Random measurement-free circuit over the emittable gate set.
inline Circuit random_circuit(std::mt19937_64& rng, int n_wires, int n_gates,
                              bool with_swap = false) {
  std::vector<GateKind> kinds = {GateKind::X,  GateKind::Y,  GateKind::Z,
                                 GateKind::H,  GateKind::RX, GateKind::RY,
                                 GateKind::RZ, GateKind::CNOT, GateKind::CZ};
  if (with_swap) kinds.push_back(GateKind::SWAP);
  std::uniform_int_distribution<size_t> pick(0, kinds.size() - 1);
  std::uniform_int_distribution<int> wire(0, n_wires - 1);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  Circuit c(n_wires);
  for (int i = 0; i < n_gates; ++i) {
    GateKind k = kinds[pick(rng)];
    int a = wire(rng);
    if (k == GateKind::CNOT || k == GateKind::CZ || k == GateKind::SWAP) {
      int b = wire(rng);
      while (b == a) b = wire(rng);
      c.add(k, {a, b});
    } else {
      c.add(k, {a}, gate_has_param(k) ? angle(rng) : 0.0);
    }
  }
  return c;
}

}  // namespace qct::tests

#endif

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

#ifndef QCT_CIRCUIT_HPP
#define QCT_CIRCUIT_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qct/errors.hpp"

namespace qct {

enum class GateKind {
  X,
  Y,
  Z,
  H,
  RX,
  RY,
  RZ,
  CNOT,
  SWAP,
  CZ,
  TOFFOLI,
  GENERALIZED_TOFFOLI,  // multi-controlled X; wires = controls..., target
  MEASURE,
  AGGREGATE  // composite instruction referring to a stored subcircuit
};

const char* gate_name(GateKind k);
bool gate_has_param(GateKind k);

struct Gate {
  GateKind kind = GateKind::X;
  std::vector<int> wires;  // ordered operands; controls before targets
  double theta = 0.0;      // RX/RY/RZ parameter, radians
  int subcircuit = -1;     // AGGREGATE only: index into Circuit::subcircuits
  int id = -1;             // unique within the owning circuit

  int arity() const { return static_cast<int>(wires.size()); }
};

// Gate classes used for durations, reliabilities and noise assignment.
enum class GateClass { ONE_Q, TWO_Q, MULTI_Q, MEASURE, AGGREGATE };
GateClass gate_class(const Gate& g);

struct Circuit {
  int n_wires = 0;
  std::vector<int> wire_dim;  // per-wire level count, 2 or 3
  std::vector<Gate> gates;
  std::vector<Circuit> subcircuits;  // bodies of AGGREGATE gates

  Circuit() = default;
  explicit Circuit(int n, int dim = 2)
      : n_wires(n), wire_dim(static_cast<size_t>(n), dim) {}

  // Appends a gate, validating operands; returns a reference to it.
  Gate& add(GateKind k, std::vector<int> wires, double theta = 0.0);
  Gate& add_aggregate(Circuit sub, std::vector<int> wires);

  // Checks the structural invariants (measure-at-end per wire, operand
  // ranges, aggregate references); throws on violation.
  void validate() const;

  bool operator==(const Circuit& other) const;

private:
  int next_id_ = 0;
  Gate& push(Gate g);
};

// Unitary of a single gate over its own operands, each of dimension d.
// MEASURE maps to the identity (readout is modeled via error rates, not
// state collapse). Throws UndefinedAtDimension where no matrix exists.
Eigen::MatrixXcd gate_unitary(const Gate& g, int d = 2);

// Replaces every SWAP by CNOT(a,b) CNOT(b,a) CNOT(a,b).
Circuit decompose_swap(const Circuit& c);

}  // namespace qct

#endif

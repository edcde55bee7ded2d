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

#ifndef QCT_QUTRIT_HPP
#define QCT_QUTRIT_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qct/errors.hpp"

namespace qct {

// Single-target qutrit gate with zero or more (wire, activation) controls.
// The action applies to the target only when every control wire holds its
// activation state (1 or 2).
enum class TritAction {
  PLUS_ONE,   // |0>->|1>->|2>->|0>
  MINUS_ONE,  // inverse cycle
  FLIP_01,    // X on the 01 subspace, |2> untouched
  U01         // generic 2x2 unitary on the 01 subspace
};

struct QutritGate {
  std::vector<std::pair<int, int>> controls;  // (wire, activation in {1,2})
  int target = 0;
  TritAction action = TritAction::PLUS_ONE;
  Eigen::Matrix2cd u01 = Eigen::Matrix2cd::Identity();  // U01 payload

  int n_controls() const { return static_cast<int>(controls.size()); }
  std::vector<int> wires() const;
};

struct QutritCircuit {
  int n_wires = 0;
  std::vector<QutritGate> gates;

  QutritCircuit() = default;
  explicit QutritCircuit(int n) : n_wires(n) {}
  QutritGate& add(QutritGate g);
};

// 3x3 matrix of the action on a single qutrit.
Eigen::Matrix3cd action_matrix(TritAction a, const Eigen::Matrix2cd& u01);
QutritGate inverse_gate(const QutritGate& g);

// Fig-7-style Toffoli on 3 qutrit wires: elevate q1 to |2>, conditionally
// flip q2, restore q1.
QutritCircuit toffoli_via_qutrit();

// Ancilla-free multi-controlled NOT on N+1 wires via a balanced control
// tree: |1>-activated gates pair the leaves, |2>-activated gates combine
// subtree roots, one |2>-controlled flip hits the target, then the tree is
// uncomputed in mirror order.
QutritCircuit generalized_toffoli(int n_controls);

// Rewrites a two-control gate into <=6 two-qutrit and <=7 single-qutrit
// gates with identical 27x27 unitary. Gates with fewer controls pass
// through unchanged.
QutritCircuit decompose_ternary(const QutritGate& g);

// decompose_ternary applied to every gate of c.
QutritCircuit decompose_all(const QutritCircuit& c);

struct CostReport {
  int n_controls = 0;
  int depth = 0;
  int two_qudit_count = 0;
  int single_qudit_count = 0;
};

// Greedy layering depth and gate counts; requires a fully decomposed
// circuit (only 1- and 2-qutrit gates).
CostReport cost_report(const QutritCircuit& c, int n_controls = 0);

// Line-oriented serialization:
//   gate <name> controls=[(w,s),...] target=<w>
std::string emit_qutrit(const QutritCircuit& c);
QutritCircuit parse_qutrit(const std::string& text);

}  // namespace qct

#endif

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

#ifndef QCT_MAPPER_HPP
#define QCT_MAPPER_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qct/circuit.hpp"
#include "qct/device.hpp"
#include "qct/scheduler.hpp"

namespace qct {

struct Mapping {
  std::vector<int> assign;  // program qubit -> hardware qubit, injective
  void validate(int n_hw) const;
};

struct ObjectiveWeights {
  double omega = 0.5;  // readout-term weight; 0.5 recovers the log product
};

struct RoutedCircuit {
  Circuit circuit;  // over hardware qubits, all 2q gates on edges
  int swap_count = 0;
  double log_reliability = 0.0;
  std::vector<int> final_assign;  // program -> hardware after routing SWAPs
};

// Sum of 2(1-w)ln(1-eps_2q) over two-qubit gates (SWAP counts as three),
// 2w ln(1-eps_ro) over readouts and ln(1-eps_1q) over single-qubit gates,
// for a circuit already expressed over hardware qubits. At w = 0.5 the
// exponential of the objective is the plain reliability product.
double log_reliability_objective(const Circuit& hw_circuit,
                                 const DeviceModel& dev,
                                 const ObjectiveWeights& w);

// SWAP chains along the most reliable path are prepended to each
// non-adjacent two-qubit gate, moving the first operand toward the second.
RoutedCircuit route(const Circuit& c, const Mapping& m, const DeviceModel& dev,
                    const ObjectiveWeights& w = {});

// Exhaustive search over injective mappings (program qubits <= 6, device
// qubits <= 16), maximizing the routed objective.
std::pair<Mapping, RoutedCircuit> exact_map(const Circuit& c,
                                            const DeviceModel& dev,
                                            const ObjectiveWeights& w);

// Interaction-frequency greedy placement refined by seeded simulated
// annealing over reassignment moves; never worse than its greedy start.
std::pair<Mapping, RoutedCircuit> heuristic_map(const Circuit& c,
                                                const DeviceModel& dev,
                                                const ObjectiveWeights& w,
                                                std::uint64_t seed);

struct CoherenceReport {
  bool pass = true;
  std::vector<int> violators;  // hardware qubits whose last gate ends late
};

// Last gate end per hardware qubit must not exceed that qubit's T2.
CoherenceReport coherence_check(const Schedule& s, const Circuit& hw_circuit,
                                const DeviceModel& dev);

}  // namespace qct

#endif

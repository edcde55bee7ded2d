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

#ifndef QCT_SCHEDULER_HPP
#define QCT_SCHEDULER_HPP

#include <string>
#include <vector>

#include "qct/circuit.hpp"
#include "qct/device.hpp"
#include "qct/gdg.hpp"

namespace qct {

// True iff the gates at positions i and j commute: symbolic rules
// (disjoint wires, diagonal x diagonal, control-side Z/RZ vs CNOT,
// target-side X/RX vs CNOT) plus an exact matrix check on at most 4 joint
// wires. Throws TooLargeForMatrixCheck when neither applies.
bool commutes(const Circuit& c, int i, int j);

// True iff the composite unitary of the given gate positions is diagonal
// in the computational basis (symbolic for Z/RZ/CZ, matrix check
// otherwise, at most 4 wires).
bool is_diagonal(const Circuit& c, const std::vector<int>& gate_indices);

// Greedy left-to-right replacement of contiguous runs whose composite is
// diagonal (at least 2 gates, at most 3 wires) by AGGREGATE gates.
Circuit aggregate_diagonal_blocks(const Circuit& c);

// Expands AGGREGATE gates back to their stored gate sequences.
Circuit flatten(const Circuit& c);

struct Schedule {
  std::vector<double> start_ns;
  std::vector<double> end_ns;
  double makespan = 0.0;
};

// Greedy list scheduling over the commutativity-relaxed dependency graph;
// ties broken by critical path then gate position. Never slower than
// source-order ASAP scheduling without commutativity.
Schedule cls_schedule(const Circuit& c, const GateDependencyGraph& gdg,
                      const DeviceModel& dev);
Schedule cls_schedule(const Circuit& c, const GateDependencyGraph& gdg,
                      const std::vector<double>& durations_ns);

// Source-order as-soon-as-possible schedule ignoring commutativity; the
// dominance baseline.
Schedule asap_schedule(const Circuit& c, const std::vector<double>& durations_ns);

std::vector<double> gate_durations(const Circuit& c, const DeviceModel& dev);

// CSV rows: gate_id,start_ns,end_ns,wires (wires space-separated).
std::string schedule_to_csv(const Circuit& c, const Schedule& s);

}  // namespace qct

#endif

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

#ifndef QCT_DEVICE_HPP
#define QCT_DEVICE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qct/circuit.hpp"

namespace qct {

// Default calibration values used for unlisted fields.
inline constexpr double kDefaultEps1q = 0.002;
inline constexpr double kDefaultEpsRo = 0.04;
inline constexpr double kDefaultEps2q = 0.07;
inline constexpr double kDefaultT2Us = 40.0;

struct DeviceModel {
  int n_qubits = 0;
  std::vector<std::pair<int, int>> edges;                // stored with a < b
  std::map<std::pair<int, int>, double> eps_2q;          // keyed (a,b), a < b
  std::vector<double> eps_1q;
  std::vector<double> eps_ro;
  std::vector<double> t2_us;
  std::map<std::string, double> durations_ns;            // "1q","2q","measure"

  bool has_edge(int a, int b) const;
  double edge_eps(int a, int b) const;          // IllegalSite if not an edge
  double duration(GateClass cls) const;         // per-class duration in ns
  const std::vector<int>& neighbors(int q) const;
  void validate() const;

  // Uniform model on given edges with paper-average defaults.
  static DeviceModel uniform(int n_qubits,
                             std::vector<std::pair<int, int>> edges);
  // n-qubit path graph, uniform rates.
  static DeviceModel line(int n_qubits);

private:
  mutable std::vector<std::vector<int>> adj_;   // built lazily
};

struct CalibrationSnapshot {
  std::string timestamp;
  DeviceModel model;
};

CalibrationSnapshot load_calibration_text(const std::string& json_text);
CalibrationSnapshot load_calibration(const std::string& path);

// Randomized snapshot within plausible day-to-day ranges; deterministic
// per seed. Used to exercise calibration variation.
CalibrationSnapshot random_calibration(int n_qubits,
                                       std::vector<std::pair<int, int>> edges,
                                       std::uint64_t seed);

// 1 - eps for the class of g placed on the given hardware qubits.
double gate_reliability(const Gate& g, const std::vector<int>& site,
                        const DeviceModel& m);

// Most reliable SWAP route from src to a neighbor of dst plus dst itself.
// Hop reliability is (1-eps_2q)^3 per SWAP; the last edge of the returned
// path carries the gate itself and is excluded from the SWAP product.
std::pair<std::vector<int>, double> best_swap_path(int src, int dst,
                                                   const DeviceModel& m);

}  // namespace qct

#endif

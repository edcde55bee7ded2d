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

#ifndef QCT_PIPELINE_HPP
#define QCT_PIPELINE_HPP

#include <cstdint>
#include <string>

namespace qct {

struct PipelineOptions {
  std::string qasm_text;
  std::string calibration_json;  // empty: uniform line device fitting c
  double omega = 0.5;
  std::string mode = "heuristic";  // or "exact"
  std::uint64_t seed = 0;
  bool pulse = true;
  int verify = -1;  // -1 auto (on below 5 wires), 0 off, 1 on
  long trajectories = 0;  // >0: noisy simulation of the routed circuit
  std::string noise_json;  // empty: default depolarizing spec
};

struct PipelineResult {
  std::string report_json;
  std::string routed_qasm;
  std::string schedule_csv;
};

// parse -> aggregate -> map/route -> re-aggregate -> schedule ->
// optional pulse optimization and noisy simulation -> report.
PipelineResult run_pipeline(const PipelineOptions& opt);

// Thin wrappers behind the CLI subcommands.
struct MapRunResult {
  std::string report_json;
  std::string routed_qasm;
};
MapRunResult run_map(const std::string& qasm_text,
                     const std::string& calibration_json, double omega,
                     const std::string& mode, std::uint64_t seed);

std::string run_simulate(const std::string& circuit_text,
                         const std::string& noise_json, long trajectories,
                         std::uint64_t seed);

std::string run_qutrit_bench(int max_controls);  // CSV

struct PulseOptResult {
  std::string pulse_csv;
  std::string report_json;
};
PulseOptResult run_pulse_opt(const std::string& block_qasm,
                             const std::string& hamiltonian_json,
                             double target_fidelity);

}  // namespace qct

#endif

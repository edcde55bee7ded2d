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

#ifndef QCT_PULSE_HPP
#define QCT_PULSE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "qct/circuit.hpp"

namespace qct {

struct ControlProblem {
  Eigen::MatrixXcd h_drift;
  std::vector<Eigen::MatrixXcd> h_controls;
  double t_ns = 1.0;
  int n_steps = 1;
  Eigen::MatrixXcd u_target;

  void validate() const;
  double dt() const { return t_ns / n_steps; }
};

struct PulseSequence {
  Eigen::MatrixXd amps;  // n_controls x n_steps, rad/ns
  double dt = 1.0;
};

struct GrapeConfig {
  int max_iters = 500;
  double learning_rate = 1.0;
  double fidelity_target = 0.999;
  double gradient_tolerance = 1e-9;
  double u_max = 1.0;
};

// Product of step propagators exp(-i dt (H_drift + sum_j u[j,k] H_j)).
Eigen::MatrixXcd propagate(const ControlProblem& p, const PulseSequence& u);

// |Tr(U_target^dag U)|^2 / d^2, invariant under global phase.
double gate_fidelity(const Eigen::MatrixXcd& u,
                     const Eigen::MatrixXcd& u_target);

// Exact dF/du[j,k] via the spectral divided-difference derivative of each
// step propagator.
Eigen::MatrixXd grape_gradient(const ControlProblem& p,
                               const PulseSequence& u);

struct GrapeResult {
  PulseSequence pulse;
  double fidelity = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Gradient ascent with backtracking line search; accepted steps never
// lower the fidelity. Zero-amplitude start when u0 is empty.
GrapeResult grape_optimize(const ControlProblem& p, const PulseSequence& u0,
                           const GrapeConfig& cfg, std::uint64_t seed = 0);

// Device Hamiltonian template: per-qubit X/Y drives scaled by
// drive_strength, fixed ZZ coupling between chain neighbors.
struct HamiltonianSpec {
  int n_qubits = 1;
  double drive_strength = 1.0;      // rad/ns per unit amplitude
  double coupling_strength = 0.25;  // rad/ns

  static HamiltonianSpec from_json_text(const std::string& text);
};

ControlProblem make_control_problem(const HamiltonianSpec& hw,
                                    const Eigen::MatrixXcd& u_target,
                                    double t_ns, int n_steps);

struct DurationResult {
  double t_ns = 0.0;
  GrapeResult best;
};

// Minimal whole-ns duration at which GRAPE reaches cfg.fidelity_target,
// found by doubling then bisection with warm starts.
DurationResult minimal_duration(const HamiltonianSpec& hw,
                                const Eigen::MatrixXcd& u_target,
                                const GrapeConfig& cfg,
                                double t_max_ns = 400.0);

struct BlockPulse {
  int gate_index = -1;  // position in the circuit
  double duration_ns = 0.0;
  double fidelity = 0.0;
  PulseSequence pulse;
};

// Optimizes a pulse for every AGGREGATE gate (and optionally every other
// gate) of c; returns the per-gate duration table for rescheduling.
std::vector<BlockPulse> aggregate_and_optimize(const Circuit& c,
                                               const HamiltonianSpec& hw,
                                               const GrapeConfig& cfg);

std::string pulse_to_csv(const PulseSequence& p);

}  // namespace qct

#endif

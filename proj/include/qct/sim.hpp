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

#ifndef QCT_SIM_HPP
#define QCT_SIM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qct/circuit.hpp"
#include "qct/qutrit.hpp"

namespace qct {

struct QuditState {
  std::vector<int> dims;    // per-wire level count
  Eigen::VectorXcd amp;     // length prod(dims)

  static QuditState zero(const std::vector<int>& dims);
  // Basis state from per-wire digits (wire 0 is the most significant).
  static QuditState basis(const std::vector<int>& dims,
                          const std::vector<int>& digits);
  long dim() const { return amp.size(); }
};

long basis_index(const std::vector<int>& dims, const std::vector<int>& digits);
std::vector<int> basis_digits(const std::vector<int>& dims, long index);

// In-place application of a unitary over a wire subset. u is indexed with
// wires[0] as the most significant local digit.
void apply_unitary(QuditState& s, const Eigen::MatrixXcd& u,
                   const std::vector<int>& wires);

void apply_gate(QuditState& s, const Circuit& c, const Gate& g);
void apply_gate(QuditState& s, const QutritGate& g);

// Full unitary of the gate over its own wires (AGGREGATE bodies expanded).
Eigen::MatrixXcd gate_matrix(const Circuit& c, const Gate& g);
Eigen::MatrixXcd gate_matrix(const QutritGate& g);

// Composite unitary of a gate-index subset of c embedded over the given wire
// set (used for commutation and diagonality checks).
Eigen::MatrixXcd local_unitary(const Circuit& c,
                               const std::vector<int>& gate_indices,
                               const std::vector<int>& wires);

inline constexpr long kDefaultDimCap = 1L << 14;

Eigen::MatrixXcd circuit_unitary(const Circuit& c, long cap = kDefaultDimCap);
Eigen::MatrixXcd circuit_unitary(const QutritCircuit& c,
                                 long cap = kDefaultDimCap);

double states_fidelity(const QuditState& a, const QuditState& b);

// Aligns the global phase of u by its largest-magnitude entry; returns the
// max-norm difference of the aligned matrices.
double phase_aligned_distance(const Eigen::MatrixXcd& u,
                              const Eigen::MatrixXcd& v);

struct NoiseChannel {
  enum class Kind { DEPOLARIZING, DEPHASING, AMPLITUDE_DAMPING, IDLE };
  Kind kind = Kind::DEPOLARIZING;
  double param = 0.0;  // p or gamma; idle stores the derived dephasing p
  std::vector<Eigen::MatrixXcd> kraus;

  static NoiseChannel depolarizing(int d, double p);
  static NoiseChannel dephasing(int d, double p);
  static NoiseChannel amplitude_damping(int d, double gamma);
  static NoiseChannel idle_decoherence(int d, double t2_us, double duration_ns);
  // max-norm of sum K^dag K - I
  double trace_preservation_defect() const;
};

// Per-gate-class channel assignment. Classes: "1q", "2q", "measure". The
// channel is applied independently on every wire a gate touches.
struct NoiseSpec {
  struct ChannelCfg {
    std::string kind;  // depolarizing | dephasing | amplitude_damping
    double param = 0.0;
  };
  std::map<std::string, ChannelCfg> channels;
  bool idle = false;
  double t2_us = 40.0;
  double idle_gate_ns = 50.0;  // per-gate idle window when idle is on

  static NoiseSpec from_json_text(const std::string& text);
  static NoiseSpec default_depolarizing(double p2q = 0.01, double p1q = 0.001);
};

struct FidelityEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long trajectories = 0;
};

// Monte Carlo Kraus-trajectory estimate of mean |<ideal|noisy>|^2. The
// initial state is the all-zeros basis state unless digits are supplied.
// Deterministic per seed.
FidelityEstimate simulate_noisy(const Circuit& c, const NoiseSpec& ns,
                                long trajectories, std::uint64_t seed,
                                const std::vector<int>* initial_digits = nullptr,
                                long cap = kDefaultDimCap);
FidelityEstimate simulate_noisy(const QutritCircuit& c, const NoiseSpec& ns,
                                long trajectories, std::uint64_t seed,
                                const std::vector<int>* initial_digits = nullptr,
                                long cap = kDefaultDimCap);

// Exact density-matrix evolution of the same noise model; oracle for the
// trajectory estimator on small registers (<= 3 wires).
double density_matrix_fidelity(const Circuit& c, const NoiseSpec& ns,
                               const std::vector<int>* initial_digits = nullptr);
double density_matrix_fidelity(const QutritCircuit& c, const NoiseSpec& ns,
                               const std::vector<int>* initial_digits = nullptr);

}  // namespace qct

#endif

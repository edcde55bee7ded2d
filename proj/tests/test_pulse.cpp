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

#include <cmath>

#include "doctest.h"
#include "qct/pulse.hpp"
#include "qct/sim.hpp"

using namespace qct;

namespace {

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

ControlProblem single_qubit_problem(const Eigen::MatrixXcd& target, double t,
                                    int steps) {
  HamiltonianSpec hw;
  hw.n_qubits = 1;
  return make_control_problem(hw, target, t, steps);
}

}  // namespace

TEST_CASE("propagation of a constant drive is a rabi rotation") {
  // H = 0.5 * u * X over time T rotates by angle u*T around X
  Eigen::MatrixXcd target = Eigen::MatrixXcd::Identity(2, 2);
  ControlProblem p = single_qubit_problem(target, 10.0, 20);
  PulseSequence u;
  u.amps = Eigen::MatrixXd::Zero(2, 20);
  u.amps.row(0).setConstant(M_PI / 10.0);  // angle pi: an X gate
  u.dt = p.dt();
  Eigen::MatrixXcd got = propagate(p, u);
  CHECK(phase_aligned_distance(got, pauli_x()) < 1e-10);
  // propagators stay unitary
  CHECK((got.adjoint() * got - Eigen::MatrixXcd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("gate fidelity normalization") {
  Eigen::MatrixXcd x = pauli_x();
  CHECK(gate_fidelity(x, x) == doctest::Approx(1.0));
  std::complex<double> ph(0.0, 1.0);
  CHECK(gate_fidelity(ph * x, x) == doctest::Approx(1.0));  // phase invariant
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Identity(2, 2);
  z(1, 1) = -1.0;
  CHECK(gate_fidelity(z, x) == doctest::Approx(0.0));
}

TEST_CASE("analytic gradient matches finite differences") {
  ControlProblem p = single_qubit_problem(pauli_x(), 8.0, 10);
  PulseSequence u;
  u.amps = Eigen::MatrixXd::Zero(2, 10);
  for (int k = 0; k < 10; ++k) {
    u.amps(0, k) = 0.15 * std::sin(0.7 * k + 0.3);
    u.amps(1, k) = 0.1 * std::cos(1.1 * k);
  }
  u.dt = p.dt();
  Eigen::MatrixXd g = grape_gradient(p, u);
  double h = 1e-6;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 10; k += 3) {
      PulseSequence up = u, dn = u;
      up.amps(j, k) += h;
      dn.amps(j, k) -= h;
      double fd = (gate_fidelity(propagate(p, up), p.u_target) -
                   gate_fidelity(propagate(p, dn), p.u_target)) /
                  (2 * h);
      CHECK(g(j, k) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("gradient vanishes at an optimum") {
  ControlProblem p = single_qubit_problem(pauli_x(), 10.0, 20);
  PulseSequence u;
  u.amps = Eigen::MatrixXd::Zero(2, 20);
  u.amps.row(0).setConstant(M_PI / 10.0);
  u.dt = p.dt();
  CHECK(grape_gradient(p, u).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("identity target converges immediately") {
  ControlProblem p = single_qubit_problem(Eigen::MatrixXcd::Identity(2, 2),
                                          5.0, 10);
  GrapeResult r = grape_optimize(p, {}, {});
  CHECK(r.converged);
  CHECK(r.fidelity >= 0.999);
}

TEST_CASE("grape reaches a single-qubit x gate") {
  ControlProblem p = single_qubit_problem(pauli_x(), 20.0, 32);
  GrapeConfig cfg;
  GrapeResult r = grape_optimize(p, {}, cfg, 1);
  CHECK(r.converged);
  CHECK(r.fidelity >= 0.999);
  // amplitude bound respected
  CHECK(r.pulse.amps.cwiseAbs().maxCoeff() <= cfg.u_max + 1e-12);
  // monotone: restarting from the found pulse cannot do worse
  GrapeResult r2 = grape_optimize(p, r.pulse, cfg, 1);
  CHECK(r2.fidelity >= r.fidelity - 1e-12);
}

TEST_CASE("grape reaches an entangling gate through the zz coupling") {
  HamiltonianSpec hw;
  hw.n_qubits = 2;
  Eigen::MatrixXcd cx = Eigen::MatrixXcd::Identity(4, 4);
  cx(2, 2) = cx(3, 3) = 0.0;
  cx(2, 3) = cx(3, 2) = 1.0;
  ControlProblem p = make_control_problem(hw, cx, 40.0, 32);
  GrapeConfig cfg;
  cfg.fidelity_target = 0.99;
  cfg.max_iters = 400;
  GrapeResult r = grape_optimize(p, {}, cfg, 7);
  CHECK(r.fidelity >= 0.99);
}

TEST_CASE("control problem validation") {
  ControlProblem p = single_qubit_problem(pauli_x(), 10.0, 10);
  p.validate();
  ControlProblem bad = p;
  bad.h_drift(0, 1) = std::complex<double>(0.3, 0.1);  // not Hermitian
  CHECK_THROWS_AS(bad.validate(), Error);
  ControlProblem bad2 = p;
  bad2.n_steps = 0;
  CHECK_THROWS_AS(bad2.validate(), Error);
}

TEST_CASE("hamiltonian spec json") {
  HamiltonianSpec hw = HamiltonianSpec::from_json_text(
      R"({"n_qubits": 2, "drive_strength": 0.8, "coupling_strength": 0.1})");
  CHECK(hw.n_qubits == 2);
  CHECK(hw.drive_strength == doctest::Approx(0.8));
  ControlProblem p =
      make_control_problem(hw, Eigen::MatrixXcd::Identity(4, 4), 10.0, 10);
  CHECK(p.h_controls.size() == 4);  // X and Y drive per qubit
  CHECK(p.h_drift.rows() == 4);
}

TEST_CASE("minimal duration for a block undercuts the serial schedule") {
  HamiltonianSpec hw;
  hw.n_qubits = 1;
  GrapeConfig cfg;
  cfg.fidelity_target = 0.99;
  DurationResult r = minimal_duration(hw, pauli_x(), cfg, 100.0);
  CHECK(r.best.fidelity >= 0.99);
  CHECK(r.t_ns > 0.0);
  CHECK(r.t_ns <= 50.0);  // far below the 50 ns default 1q slot upper bound
}

TEST_CASE("per-gate pulse table covers aggregates") {
  Circuit c(2);
  c.add(GateKind::H, {0});
  Circuit sub(2);
  sub.add(GateKind::CNOT, {0, 1});
  sub.add(GateKind::RZ, {1}, 0.4);
  sub.add(GateKind::CNOT, {0, 1});
  c.add_aggregate(std::move(sub), {0, 1});
  GrapeConfig cfg;
  cfg.fidelity_target = 0.99;
  std::vector<BlockPulse> table = aggregate_and_optimize(c, HamiltonianSpec{2},
                                                         cfg);
  REQUIRE(table.size() == 2);
  double serial = 300.0 + 50.0 + 300.0;  // member durations, scheduled one by one
  for (const BlockPulse& b : table) {
    CHECK(b.fidelity >= 0.99);
    CHECK(b.duration_ns > 0.0);
  }
  CHECK(table[1].duration_ns < serial);
}

TEST_CASE("pulse csv shape") {
  PulseSequence u;
  u.amps = Eigen::MatrixXd::Zero(2, 3);
  u.amps(1, 2) = 0.25;
  u.dt = 1.0;
  std::string csv = pulse_to_csv(u);
  CHECK(csv.find("control_index,step,amplitude") == 0);
  CHECK(csv.find("1,2,0.25") != std::string::npos);
}

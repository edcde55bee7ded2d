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

#include "qct/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "json.hpp"
#include "qct/circuit.hpp"
#include "qct/device.hpp"
#include "qct/gdg.hpp"
#include "qct/mapper.hpp"
#include "qct/pulse.hpp"
#include "qct/qasm.hpp"
#include "qct/qutrit.hpp"
#include "qct/scheduler.hpp"
#include "qct/sim.hpp"

namespace qct {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Commutation oracle that treats pairs too large for the matrix check as
// dependent.
bool commutes_or_dependent(const Circuit& c, int i, int j) {
  try {
    return commutes(c, i, j);
  } catch (const Error& e) {
    if (std::string(e.kind()) == "TooLargeForMatrixCheck") return false;
    throw;
  }
}

// Unitary the routed circuit applies to the program register: program
// basis states enter at the initial placement, leave at the final one,
// with every other hardware qubit in |0>.
double routed_deviation(const Circuit& program, const Circuit& routed_flat,
                        const std::vector<int>& initial_assign,
                        const std::vector<int>& final_assign) {
  int k = program.n_wires;
  int n_hw = routed_flat.n_wires;
  long dp = 1L << k;
  if (n_hw > 12) fail("TooLarge", "verification capped at 12 hardware qubits");
  std::vector<int> hw_dims(static_cast<size_t>(n_hw), 2);
  Eigen::MatrixXcd eff = Eigen::MatrixXcd::Zero(dp, dp);
  for (long col = 0; col < dp; ++col) {
    std::vector<int> digits(static_cast<size_t>(n_hw), 0);
    for (int w = 0; w < k; ++w)
      digits[static_cast<size_t>(initial_assign[static_cast<size_t>(w)])] =
          static_cast<int>((col >> (k - 1 - w)) & 1);
    QuditState s = QuditState::basis(hw_dims, digits);
    for (const Gate& g : routed_flat.gates) apply_gate(s, routed_flat, g);
    for (long idx = 0; idx < s.dim(); ++idx) {
      if (std::abs(s.amp(idx)) < 1e-14) continue;
      std::vector<int> d = basis_digits(hw_dims, idx);
      long row = 0;
      for (int w = 0; w < k; ++w)
        row = (row << 1) |
              d[static_cast<size_t>(final_assign[static_cast<size_t>(w)])];
      eff(row, col) += s.amp(idx);
    }
  }
  Circuit flat = flatten(program);
  return phase_aligned_distance(circuit_unitary(flat), eff);
}

DeviceModel device_for(const std::string& calibration_json, int n_wires) {
  if (!calibration_json.empty())
    return load_calibration_text(calibration_json).model;
  return DeviceModel::line(std::max(2, n_wires));
}

nlohmann::json coherence_json(const CoherenceReport& rep) {
  return {{"pass", rep.pass}, {"violators", rep.violators}};
}

}  // namespace

PipelineResult run_pipeline(const PipelineOptions& opt) {
  nlohmann::json report;
  report["schema"] = 1;
  nlohmann::json timings;
  auto t0 = Clock::now();

  Circuit program = parse_qasm(opt.qasm_text);
  program.validate();
  timings["parse_ms"] = ms_since(t0);

  t0 = Clock::now();
  Circuit aggregated = aggregate_diagonal_blocks(program);
  int n_blocks = 0;
  for (const Gate& g : aggregated.gates)
    if (g.kind == GateKind::AGGREGATE) ++n_blocks;
  timings["aggregate_ms"] = ms_since(t0);

  t0 = Clock::now();
  DeviceModel dev = device_for(opt.calibration_json, program.n_wires);
  ObjectiveWeights w{opt.omega};
  Mapping mapping;
  RoutedCircuit routed;
  if (program.n_wires == 0) {
    routed.circuit = Circuit(dev.n_qubits);
  } else if (opt.mode == "exact") {
    std::tie(mapping, routed) = exact_map(program, dev, w);
  } else {
    std::tie(mapping, routed) = heuristic_map(program, dev, w, opt.seed);
  }
  timings["map_ms"] = ms_since(t0);

  // physical-side aggregation feeds the pulse optimizer and scheduler
  t0 = Clock::now();
  Circuit phys = aggregate_diagonal_blocks(decompose_swap(routed.circuit));
  GateDependencyGraph gdg = build_gdg(phys, commutes_or_dependent);
  std::vector<double> durations = gate_durations(phys, dev);
  nlohmann::json pulse_json = nlohmann::json::array();
  if (opt.pulse) {
    HamiltonianSpec hw;
    GrapeConfig cfg;
    cfg.fidelity_target = 0.99;
    for (const BlockPulse& bp : aggregate_and_optimize(phys, hw, cfg)) {
      durations[static_cast<size_t>(bp.gate_index)] = bp.duration_ns;
      pulse_json.push_back({{"gate_index", bp.gate_index},
                            {"duration_ns", bp.duration_ns},
                            {"fidelity", bp.fidelity}});
    }
  }
  Schedule sched = cls_schedule(phys, gdg, durations);
  CoherenceReport coh = coherence_check(sched, phys, dev);
  timings["schedule_ms"] = ms_since(t0);

  bool do_verify = opt.verify == 1 ||
                   (opt.verify == -1 && program.n_wires > 0 &&
                    program.n_wires < 5 && dev.n_qubits <= 12);
  if (do_verify && program.n_wires > 0) {
    t0 = Clock::now();
    double dev_norm = routed_deviation(program, flatten(routed.circuit),
                                       mapping.assign, routed.final_assign);
    report["verification"] = {{"checked", true},
                              {"max_deviation", dev_norm},
                              {"pass", dev_norm < 1e-9}};
    timings["verify_ms"] = ms_since(t0);
    if (dev_norm >= 1e-9)
      fail("VerificationFailed", "routed unitary deviates from the program");
  } else {
    report["verification"] = {{"checked", false}};
  }

  if (opt.trajectories > 0) {
    t0 = Clock::now();
    NoiseSpec ns = opt.noise_json.empty()
                       ? NoiseSpec::default_depolarizing()
                       : NoiseSpec::from_json_text(opt.noise_json);
    FidelityEstimate est =
        simulate_noisy(flatten(routed.circuit), ns, opt.trajectories, opt.seed);
    report["fidelity"] = {{"mean", est.mean},
                          {"stderr", est.stderr_},
                          {"trajectories", est.trajectories}};
    timings["simulate_ms"] = ms_since(t0);
  }

  report["timings_ms"] = timings;
  report["n_wires"] = program.n_wires;
  report["n_gates"] = static_cast<int>(program.gates.size());
  report["aggregated_blocks"] = n_blocks;
  report["mapping"] = mapping.assign;
  report["final_mapping"] = routed.final_assign;
  report["swap_count"] = routed.swap_count;
  report["log_reliability"] = routed.log_reliability;
  report["makespan_ns"] = sched.makespan;
  report["coherence"] = coherence_json(coh);

  PipelineResult res;
  res.report_json = report.dump(2) + "\n";
  res.routed_qasm = emit_qasm(flatten(routed.circuit));
  res.schedule_csv = schedule_to_csv(phys, sched);
  return res;
}

MapRunResult run_map(const std::string& qasm_text,
                     const std::string& calibration_json, double omega,
                     const std::string& mode, std::uint64_t seed) {
  Circuit program = parse_qasm(qasm_text);
  program.validate();
  DeviceModel dev = device_for(calibration_json, program.n_wires);
  ObjectiveWeights w{omega};
  auto [mapping, routed] = mode == "exact"
                               ? exact_map(program, dev, w)
                               : heuristic_map(program, dev, w, seed);
  Circuit phys = decompose_swap(routed.circuit);
  GateDependencyGraph gdg = build_gdg(phys, commutes_or_dependent);
  Schedule sched = cls_schedule(phys, gdg, dev);
  CoherenceReport coh = coherence_check(sched, phys, dev);
  nlohmann::json report = {{"schema", 1},
                           {"mapping", mapping.assign},
                           {"final_mapping", routed.final_assign},
                           {"swap_count", routed.swap_count},
                           {"log_reliability", routed.log_reliability},
                           {"coherence", coherence_json(coh)}};
  MapRunResult res;
  res.report_json = report.dump(2) + "\n";
  res.routed_qasm = emit_qasm(flatten(routed.circuit));
  return res;
}

std::string run_simulate(const std::string& circuit_text,
                         const std::string& noise_json, long trajectories,
                         std::uint64_t seed) {
  NoiseSpec ns = noise_json.empty() ? NoiseSpec::default_depolarizing()
                                    : NoiseSpec::from_json_text(noise_json);
  FidelityEstimate est;
  bool is_qasm = circuit_text.find("qreg") != std::string::npos ||
                 circuit_text.find("OPENQASM") != std::string::npos;
  if (is_qasm) {
    Circuit c = parse_qasm(circuit_text);
    c.validate();
    est = simulate_noisy(c, ns, trajectories, seed);
  } else {
    QutritCircuit c = parse_qutrit(circuit_text);
    est = simulate_noisy(c, ns, trajectories, seed);
  }
  nlohmann::json out = {{"schema", 1},
                        {"mean", est.mean},
                        {"stderr", est.stderr_},
                        {"trajectories", est.trajectories},
                        {"seed", seed}};
  return out.dump(2) + "\n";
}

std::string run_qutrit_bench(int max_controls) {
  if (max_controls < 2) fail("InvalidN", "need at least 2 controls");
  std::string csv = "n_controls,depth,two_qudit,single_qudit\n";
  for (int n = 2; n <= max_controls; ++n) {
    CostReport r = cost_report(decompose_all(generalized_toffoli(n)), n);
    csv += std::to_string(n) + "," + std::to_string(r.depth) + "," +
           std::to_string(r.two_qudit_count) + "," +
           std::to_string(r.single_qudit_count) + "\n";
  }
  return csv;
}

PulseOptResult run_pulse_opt(const std::string& block_qasm,
                             const std::string& hamiltonian_json,
                             double target_fidelity) {
  Circuit block = parse_qasm(block_qasm);
  block.validate();
  if (block.n_wires > 3) fail("BlockTooLarge", "pulse blocks capped at 3 wires");
  HamiltonianSpec hw = hamiltonian_json.empty()
                           ? HamiltonianSpec{}
                           : HamiltonianSpec::from_json_text(hamiltonian_json);
  hw.n_qubits = std::max(1, block.n_wires);
  GrapeConfig cfg;
  cfg.fidelity_target = target_fidelity;
  Eigen::MatrixXcd target = circuit_unitary(flatten(block));
  DurationResult r = minimal_duration(hw, target, cfg);
  nlohmann::json report = {{"schema", 1},
                           {"duration_ns", r.t_ns},
                           {"fidelity", r.best.fidelity},
                           {"iterations", r.best.iterations},
                           {"n_steps", r.best.pulse.amps.cols()}};
  PulseOptResult res;
  res.pulse_csv = pulse_to_csv(r.best.pulse);
  res.report_json = report.dump(2) + "\n";
  return res;
}

}  // namespace qct

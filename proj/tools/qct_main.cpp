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

// Command-line front end. Talks to the core library exclusively through
// the C interface in qct.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qct.h"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes via a temp file and rename so failures never leave partial output.
void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot replace file: " + path);
}

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { qct_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

int fail_with_last_error(int rc) {
  std::cerr << "error (" << qct_last_error_kind()
            << "): " << qct_last_error_message() << "\n";
  return rc == QCT_OK ? 1 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qctk: circuit scheduling, mapping, qutrit synthesis, pulse "
               "optimization and noisy simulation"};
  app.require_subcommand(1);

  // shared option storage
  std::string qasm_path, device_path, out_path, report_path, schedule_path;
  std::string circuit_path, noise_path, hamiltonian_path, mode = "heuristic";
  double omega = 0.5, target_fidelity = 0.999;
  std::uint64_t seed = 0;
  long trajectories = 1000;
  int max_controls = 31;
  bool no_pulse = false;
  int verify = -1;

  CLI::App* compile = app.add_subcommand("compile", "full pipeline");
  compile->add_option("--qasm", qasm_path, "input program")->required();
  compile->add_option("--device", device_path, "calibration JSON");
  compile->add_option("--omega", omega, "readout weight in [0,1]");
  compile->add_option("--mode", mode, "exact|heuristic");
  compile->add_option("--seed", seed, "random seed");
  compile->add_flag("--no-pulse", no_pulse, "stop after scheduling");
  compile->add_option("--verify", verify,
                      "-1 auto, 0 off, 1 force unitary check");
  compile->add_option("--trajectories", trajectories,
                      "noisy-simulation trajectory count (0 disables)")
      ->capture_default_str();
  compile->add_option("--noise", noise_path, "noise spec JSON");
  compile->add_option("--report", report_path, "report JSON output");
  compile->add_option("--out", out_path, "routed QASM output");
  compile->add_option("--schedule", schedule_path, "schedule CSV output");

  CLI::App* map_cmd = app.add_subcommand("map", "noise-adaptive mapping");
  map_cmd->add_option("--qasm", qasm_path, "input program")->required();
  map_cmd->add_option("--device", device_path, "calibration JSON");
  map_cmd->add_option("--omega", omega, "readout weight in [0,1]");
  map_cmd->add_option("--mode", mode, "exact|heuristic");
  map_cmd->add_option("--seed", seed, "random seed");
  map_cmd->add_option("--out", out_path, "routed QASM output");
  map_cmd->add_option("--report", report_path, "report JSON output");

  CLI::App* sim = app.add_subcommand("simulate", "noisy trajectory sampling");
  sim->add_option("--circuit", circuit_path,
                  "QASM or qutrit-format circuit file")
      ->required();
  sim->add_option("--noise", noise_path, "noise spec JSON");
  sim->add_option("--trajectories", trajectories, "trajectory count")
      ->capture_default_str();
  sim->add_option("--seed", seed, "random seed");
  sim->add_option("--out", out_path, "result JSON output");

  CLI::App* bench = app.add_subcommand("qutrit-bench",
                                       "multi-controlled-NOT cost scaling");
  bench->add_option("--max-controls", max_controls, "largest control count")
      ->capture_default_str();
  bench->add_option("--out", out_path, "costs CSV output");

  CLI::App* popt = app.add_subcommand("pulse-opt", "pulse optimization");
  popt->add_option("--block", qasm_path, "block QASM file")->required();
  popt->add_option("--hamiltonian", hamiltonian_path, "hardware JSON");
  popt->add_option("--target-fidelity", target_fidelity, "stop threshold")
      ->capture_default_str();
  popt->add_option("--out", out_path, "pulse CSV output");
  popt->add_option("--report", report_path, "report JSON output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile->parsed()) {
      nlohmann::json opt = {{"qasm", read_file(qasm_path)},
                            {"omega", omega},
                            {"mode", mode},
                            {"seed", seed},
                            {"pulse", !no_pulse},
                            {"verify", verify},
                            {"trajectories", trajectories}};
      if (!device_path.empty()) opt["calibration"] = read_file(device_path);
      if (!noise_path.empty()) opt["noise"] = read_file(noise_path);
      OwnedString report, routed, sched;
      int rc = qct_compile_run(opt.dump().c_str(), &report.s, &routed.s,
                               &sched.s);
      if (rc != QCT_OK) return fail_with_last_error(rc);
      write_file(report_path.empty() ? "-" : report_path, report.str());
      if (!out_path.empty()) write_file(out_path, routed.str());
      if (!schedule_path.empty()) write_file(schedule_path, sched.str());
    } else if (map_cmd->parsed()) {
      nlohmann::json opt = {{"qasm", read_file(qasm_path)},
                            {"omega", omega},
                            {"mode", mode},
                            {"seed", seed}};
      if (!device_path.empty()) opt["calibration"] = read_file(device_path);
      OwnedString report, routed;
      int rc = qct_map_run(opt.dump().c_str(), &report.s, &routed.s);
      if (rc != QCT_OK) return fail_with_last_error(rc);
      write_file(report_path.empty() ? "-" : report_path, report.str());
      if (!out_path.empty()) write_file(out_path, routed.str());
    } else if (sim->parsed()) {
      nlohmann::json opt = {{"circuit", read_file(circuit_path)},
                            {"trajectories", trajectories},
                            {"seed", seed}};
      if (!noise_path.empty()) opt["noise"] = read_file(noise_path);
      OwnedString result;
      int rc = qct_simulate_run(opt.dump().c_str(), &result.s);
      if (rc != QCT_OK) return fail_with_last_error(rc);
      write_file(out_path.empty() ? "-" : out_path, result.str());
    } else if (bench->parsed()) {
      OwnedString csv;
      int rc = qct_qutrit_bench(max_controls, &csv.s);
      if (rc != QCT_OK) return fail_with_last_error(rc);
      write_file(out_path.empty() ? "-" : out_path, csv.str());
    } else if (popt->parsed()) {
      nlohmann::json opt = {{"block_qasm", read_file(qasm_path)},
                            {"target_fidelity", target_fidelity}};
      if (!hamiltonian_path.empty())
        opt["hamiltonian"] = read_file(hamiltonian_path);
      OwnedString pulse, report;
      int rc = qct_pulse_opt(opt.dump().c_str(), &pulse.s, &report.s);
      if (rc != QCT_OK) return fail_with_last_error(rc);
      write_file(out_path.empty() ? "-" : out_path, pulse.str());
      if (!report_path.empty()) write_file(report_path, report.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

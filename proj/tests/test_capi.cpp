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

#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qct.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  qct_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version string") {
  CHECK(qct_version() != nullptr);
  CHECK(std::strlen(qct_version()) > 0);
}

TEST_CASE("circuit handle round trip") {
  qct_circuit* c = nullptr;
  REQUIRE(qct_circuit_parse_qasm(
              "qreg q[3]; h q[0]; cx q[0],q[1]; measure q[2] -> c[2];"
              " creg c[3];",
          &c) != QCT_OK);  // creg declared after use
  REQUIRE(qct_circuit_parse_qasm(
              "qreg q[3]; creg c[3]; h q[0]; cx q[0],q[1];"
              " measure q[2] -> c[2];",
              &c) == QCT_OK);
  int n = 0;
  size_t g = 0;
  CHECK(qct_circuit_n_wires(c, &n) == QCT_OK);
  CHECK(qct_circuit_n_gates(c, &g) == QCT_OK);
  CHECK(n == 3);
  CHECK(g == 3);
  char* text = nullptr;
  REQUIRE(qct_circuit_emit_qasm(c, &text) == QCT_OK);
  std::string qasm = take(text);
  CHECK(qasm.find("cx q[0],q[1];") != std::string::npos);
  qct_circuit_free(c);
}

TEST_CASE("error codes and thread-local kinds") {
  qct_circuit* c = nullptr;
  CHECK(qct_circuit_parse_qasm("qreg q[1]; frobnicate q[0];", &c) ==
        QCT_ERR_PARSE);
  CHECK(std::string(qct_last_error_kind()) == "UnknownGate");
  CHECK(std::string(qct_last_error_message()).find("frobnicate") !=
        std::string::npos);
  CHECK(qct_circuit_parse_qasm(nullptr, &c) == QCT_ERR_INVALID_ARGUMENT);
  qct_qutrit_circuit* q = nullptr;
  CHECK(qct_generalized_toffoli(1, &q) != QCT_OK);
  CHECK(std::string(qct_last_error_kind()) == "InvalidN");
}

TEST_CASE("qutrit construction pipeline") {
  qct_qutrit_circuit* gt = nullptr;
  REQUIRE(qct_generalized_toffoli(7, &gt) == QCT_OK);
  qct_qutrit_circuit* dec = nullptr;
  REQUIRE(qct_qutrit_decompose(gt, &dec) == QCT_OK);
  int depth = 0, two_q = 0, single_q = 0;
  REQUIRE(qct_qutrit_cost(dec, &depth, &two_q, &single_q) == QCT_OK);
  CHECK(two_q == 37);  // 6N-5 at N=7
  CHECK(depth > 0);
  char* text = nullptr;
  REQUIRE(qct_qutrit_emit(dec, &text) == QCT_OK);
  std::string serialized = take(text);
  qct_qutrit_circuit* back = nullptr;
  REQUIRE(qct_qutrit_parse(serialized.c_str(), &back) == QCT_OK);
  char* text2 = nullptr;
  REQUIRE(qct_qutrit_emit(back, &text2) == QCT_OK);
  CHECK(take(text2) == serialized);
  qct_qutrit_free(gt);
  qct_qutrit_free(dec);
  qct_qutrit_free(back);
}

TEST_CASE("device and routing") {
  qct_device* d = nullptr;
  REQUIRE(qct_device_from_json(R"({"n_qubits": 4,
      "edges": [[0,1],[1,2],[2,3]]})",
                               &d) == QCT_OK);
  int path[8] = {0};
  size_t len = 0;
  double rel = 0.0;
  REQUIRE(qct_best_swap_path(d, 0, 3, path, 8, &len, &rel) == QCT_OK);
  REQUIRE(len == 4);
  CHECK(path[0] == 0);
  CHECK(path[3] == 3);
  CHECK(rel > 0.0);
  CHECK(rel < 1.0);
  CHECK(qct_best_swap_path(d, 0, 3, path, 2, &len, &rel) ==
        QCT_ERR_TOO_LARGE);
  qct_device_free(d);
  CHECK(qct_device_from_json(R"({"n_qubits": 2, "edges": [[0,9]]})", &d) ==
        QCT_ERR_PARSE);
}

TEST_CASE("high-level compile run") {
  nlohmann::json opts;
  opts["qasm"] =
      "qreg q[2]; creg c[2]; h q[0]; cx q[0],q[1];"
      " measure q[0] -> c[0]; measure q[1] -> c[1];";
  opts["mode"] = "exact";
  opts["trajectories"] = 200;
  char* report = nullptr;
  char* routed = nullptr;
  char* sched = nullptr;
  REQUIRE(qct_compile_run(opts.dump().c_str(), &report, &routed, &sched) ==
          QCT_OK);
  nlohmann::json rep = nlohmann::json::parse(take(report));
  CHECK(rep["schema"] == 1);
  CHECK(rep["verification"]["pass"] == true);
  CHECK(rep["coherence"]["pass"] == true);
  CHECK(rep["makespan_ns"].get<double>() > 0.0);
  std::string routed_qasm = take(routed);
  CHECK(routed_qasm.find("OPENQASM") != std::string::npos);
  std::string csv = take(sched);
  CHECK(csv.find("gate_id,start_ns,end_ns,wires") == 0);
}

TEST_CASE("simulate run is deterministic") {
  nlohmann::json opts;
  opts["circuit"] = "qreg q[2]; h q[0]; cx q[0],q[1];";
  opts["trajectories"] = 400;
  opts["seed"] = 9;
  opts["noise"] =
      R"({"channels": {"1q": {"kind": "depolarizing", "p": 0.01},
                       "2q": {"kind": "depolarizing", "p": 0.05}}})";
  char* r1 = nullptr;
  char* r2 = nullptr;
  REQUIRE(qct_simulate_run(opts.dump().c_str(), &r1) == QCT_OK);
  REQUIRE(qct_simulate_run(opts.dump().c_str(), &r2) == QCT_OK);
  std::string a = take(r1), b = take(r2);
  CHECK(a == b);  // byte-identical output per seed
  nlohmann::json ja = nlohmann::json::parse(a);
  CHECK(ja["mean"].get<double>() > 0.5);
  CHECK(ja["mean"].get<double>() < 1.0);
  CHECK(ja["trajectories"] == 400);
}

TEST_CASE("qutrit bench csv") {
  char* csv = nullptr;
  REQUIRE(qct_qutrit_bench(6, &csv) == QCT_OK);
  std::string text = take(csv);
  CHECK(text.find("n_controls,depth,two_qudit,single_qudit") == 0);
  CHECK(text.find("\n6,") != std::string::npos);
}

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

#include "qct.h"

#include <cstring>
#include <string>

#include "json.hpp"
#include "qct/circuit.hpp"
#include "qct/device.hpp"
#include "qct/pipeline.hpp"
#include "qct/qasm.hpp"
#include "qct/qutrit.hpp"

namespace {

thread_local std::string g_err_kind;
thread_local std::string g_err_msg;

int code_for(const std::string& kind) {
  if (kind == "SyntaxError" || kind == "UnknownGate" ||
      kind == "ArityMismatch" || kind == "UndeclaredWire" ||
      kind == "SchemaError" || kind == "GraphError")
    return QCT_ERR_PARSE;
  if (kind == "RangeError" || kind == "DimensionMismatch" ||
      kind == "ShapeMismatch")
    return QCT_ERR_RANGE;
  if (kind == "TooLarge" || kind == "TooLargeForMatrixCheck" ||
      kind == "BlockTooLarge")
    return QCT_ERR_TOO_LARGE;
  if (kind == "UnsupportedGate" || kind == "UnsupportedAction" ||
      kind == "UndefinedAtDimension" || kind == "NotDecomposed" ||
      kind == "InvalidN" || kind == "UnroutedGate")
    return QCT_ERR_UNSUPPORTED;
  if (kind == "Infeasible" || kind == "Unreachable" ||
      kind == "IllegalSite" || kind == "NotConverged" ||
      kind == "VerificationFailed")
    return QCT_ERR_INFEASIBLE;
  return QCT_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_err_kind.clear();
    g_err_msg.clear();
    return QCT_OK;
  } catch (const qct::Error& e) {
    g_err_kind = e.kind();
    g_err_msg = e.what();
    return code_for(g_err_kind);
  } catch (const std::exception& e) {
    g_err_kind = "Internal";
    g_err_msg = e.what();
    return QCT_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int require(bool ok, const char* what) {
  if (ok) return QCT_OK;
  g_err_kind = "InvalidArgument";
  g_err_msg = what;
  return QCT_ERR_INVALID_ARGUMENT;
}

nlohmann::json parse_options(const char* options_json) {
  try {
    return nlohmann::json::parse(options_json);
  } catch (const std::exception& e) {
    qct::fail("SchemaError", std::string("options: ") + e.what());
  }
}

}  // namespace

struct qct_circuit {
  qct::Circuit c;
};
struct qct_qutrit_circuit {
  qct::QutritCircuit c;
};
struct qct_device {
  qct::DeviceModel m;
};

extern "C" {

const char* qct_version(void) { return "1.0.0"; }

const char* qct_last_error_kind(void) { return g_err_kind.c_str(); }
const char* qct_last_error_message(void) { return g_err_msg.c_str(); }

void qct_string_free(char* s) { delete[] s; }

int qct_circuit_parse_qasm(const char* text, qct_circuit** out) {
  if (int rc = require(text && out, "null argument")) return rc;
  return guarded([&] {
    auto* h = new qct_circuit{qct::parse_qasm(text)};
    h->c.validate();
    *out = h;
  });
}

int qct_circuit_emit_qasm(const qct_circuit* c, char** out) {
  if (int rc = require(c && out, "null argument")) return rc;
  return guarded([&] { *out = dup_string(qct::emit_qasm(c->c)); });
}

int qct_circuit_n_wires(const qct_circuit* c, int* out) {
  if (int rc = require(c && out, "null argument")) return rc;
  *out = c->c.n_wires;
  return QCT_OK;
}

int qct_circuit_n_gates(const qct_circuit* c, size_t* out) {
  if (int rc = require(c && out, "null argument")) return rc;
  *out = c->c.gates.size();
  return QCT_OK;
}

void qct_circuit_free(qct_circuit* c) { delete c; }

int qct_generalized_toffoli(int n_controls, qct_qutrit_circuit** out) {
  if (int rc = require(out != nullptr, "null argument")) return rc;
  return guarded([&] {
    *out = new qct_qutrit_circuit{qct::generalized_toffoli(n_controls)};
  });
}

int qct_qutrit_decompose(const qct_qutrit_circuit* c,
                         qct_qutrit_circuit** out) {
  if (int rc = require(c && out, "null argument")) return rc;
  return guarded(
      [&] { *out = new qct_qutrit_circuit{qct::decompose_all(c->c)}; });
}

int qct_qutrit_emit(const qct_qutrit_circuit* c, char** out) {
  if (int rc = require(c && out, "null argument")) return rc;
  return guarded([&] { *out = dup_string(qct::emit_qutrit(c->c)); });
}

int qct_qutrit_parse(const char* text, qct_qutrit_circuit** out) {
  if (int rc = require(text && out, "null argument")) return rc;
  return guarded(
      [&] { *out = new qct_qutrit_circuit{qct::parse_qutrit(text)}; });
}

int qct_qutrit_cost(const qct_qutrit_circuit* c, int* depth, int* two_q,
                    int* single_q) {
  if (int rc = require(c && depth && two_q && single_q, "null argument"))
    return rc;
  return guarded([&] {
    qct::CostReport r = qct::cost_report(c->c);
    *depth = r.depth;
    *two_q = r.two_qudit_count;
    *single_q = r.single_qudit_count;
  });
}

void qct_qutrit_free(qct_qutrit_circuit* c) { delete c; }

int qct_device_from_json(const char* json_text, qct_device** out) {
  if (int rc = require(json_text && out, "null argument")) return rc;
  return guarded([&] {
    *out = new qct_device{qct::load_calibration_text(json_text).model};
  });
}

int qct_best_swap_path(const qct_device* d, int src, int dst, int* path,
                       size_t path_cap, size_t* path_len,
                       double* reliability) {
  if (int rc = require(d && path && path_len && reliability, "null argument"))
    return rc;
  return guarded([&] {
    auto [p, rel] = qct::best_swap_path(src, dst, d->m);
    if (p.size() > path_cap)
      qct::fail("TooLarge", "path buffer too small");
    for (size_t i = 0; i < p.size(); ++i) path[i] = p[i];
    *path_len = p.size();
    *reliability = rel;
  });
}

void qct_device_free(qct_device* d) { delete d; }

int qct_compile_run(const char* options_json, char** report_json,
                    char** routed_qasm, char** schedule_csv) {
  if (int rc = require(options_json && report_json && routed_qasm &&
                           schedule_csv,
                       "null argument"))
    return rc;
  return guarded([&] {
    nlohmann::json j = parse_options(options_json);
    qct::PipelineOptions opt;
    opt.qasm_text = j.value("qasm", "");
    opt.calibration_json = j.value("calibration", "");
    opt.omega = j.value("omega", 0.5);
    opt.mode = j.value("mode", "heuristic");
    opt.seed = j.value("seed", 0ULL);
    opt.pulse = j.value("pulse", true);
    opt.verify = j.value("verify", -1);
    opt.trajectories = j.value("trajectories", 0L);
    opt.noise_json = j.value("noise", "");
    qct::PipelineResult r = qct::run_pipeline(opt);
    *report_json = dup_string(r.report_json);
    *routed_qasm = dup_string(r.routed_qasm);
    *schedule_csv = dup_string(r.schedule_csv);
  });
}

int qct_map_run(const char* options_json, char** report_json,
                char** routed_qasm) {
  if (int rc = require(options_json && report_json && routed_qasm,
                       "null argument"))
    return rc;
  return guarded([&] {
    nlohmann::json j = parse_options(options_json);
    qct::MapRunResult r =
        qct::run_map(j.value("qasm", ""), j.value("calibration", ""),
                     j.value("omega", 0.5), j.value("mode", "heuristic"),
                     j.value("seed", 0ULL));
    *report_json = dup_string(r.report_json);
    *routed_qasm = dup_string(r.routed_qasm);
  });
}

int qct_simulate_run(const char* options_json, char** result_json) {
  if (int rc = require(options_json && result_json, "null argument"))
    return rc;
  return guarded([&] {
    nlohmann::json j = parse_options(options_json);
    *result_json = dup_string(qct::run_simulate(
        j.value("circuit", ""), j.value("noise", ""),
        j.value("trajectories", 1000L), j.value("seed", 0ULL)));
  });
}

int qct_qutrit_bench(int max_controls, char** csv) {
  if (int rc = require(csv != nullptr, "null argument")) return rc;
  return guarded(
      [&] { *csv = dup_string(qct::run_qutrit_bench(max_controls)); });
}

int qct_pulse_opt(const char* options_json, char** pulse_csv,
                  char** report_json) {
  if (int rc = require(options_json && pulse_csv && report_json,
                       "null argument"))
    return rc;
  return guarded([&] {
    nlohmann::json j = parse_options(options_json);
    qct::PulseOptResult r = qct::run_pulse_opt(
        j.value("block_qasm", ""), j.value("hamiltonian", ""),
        j.value("target_fidelity", 0.999));
    *pulse_csv = dup_string(r.pulse_csv);
    *report_json = dup_string(r.report_json);
  });
}

}  // extern "C"

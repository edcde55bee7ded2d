/* Copyright 2026 The qctk Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the qctk shared library. All functions return 0 on
 * success and a negative error code on failure; qct_last_error_message()
 * and qct_last_error_kind() describe the most recent failure on the
 * calling thread. Strings returned through char** parameters are owned by
 * the caller and released with qct_string_free(). */

#ifndef QCT_H
#define QCT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define QCT_OK 0
#define QCT_ERR_INVALID_ARGUMENT -1
#define QCT_ERR_PARSE -2
#define QCT_ERR_RANGE -3
#define QCT_ERR_TOO_LARGE -4
#define QCT_ERR_UNSUPPORTED -5
#define QCT_ERR_INFEASIBLE -6
#define QCT_ERR_INTERNAL -7

typedef struct qct_circuit qct_circuit;
typedef struct qct_qutrit_circuit qct_qutrit_circuit;
typedef struct qct_device qct_device;

const char* qct_version(void);

/* Thread-local description of the last failure. */
const char* qct_last_error_kind(void);
const char* qct_last_error_message(void);

void qct_string_free(char* s);

/* ---- circuits -------------------------------------------------------- */

int qct_circuit_parse_qasm(const char* text, qct_circuit** out);
int qct_circuit_emit_qasm(const qct_circuit* c, char** out);
int qct_circuit_n_wires(const qct_circuit* c, int* out);
int qct_circuit_n_gates(const qct_circuit* c, size_t* out);
void qct_circuit_free(qct_circuit* c);

/* ---- qutrit constructions -------------------------------------------- */

int qct_generalized_toffoli(int n_controls, qct_qutrit_circuit** out);
/* Rewrites every multi-controlled gate into 1-/2-qutrit gates. */
int qct_qutrit_decompose(const qct_qutrit_circuit* c,
                         qct_qutrit_circuit** out);
int qct_qutrit_emit(const qct_qutrit_circuit* c, char** out);
int qct_qutrit_parse(const char* text, qct_qutrit_circuit** out);
/* depth, two-qutrit count, single-qutrit count of a decomposed circuit */
int qct_qutrit_cost(const qct_qutrit_circuit* c, int* depth, int* two_q,
                    int* single_q);
void qct_qutrit_free(qct_qutrit_circuit* c);

/* ---- devices --------------------------------------------------------- */

int qct_device_from_json(const char* json_text, qct_device** out);
/* path and reliability of the most reliable SWAP route; path is written
 * as up to path_cap qubit indices, its length to *path_len. */
int qct_best_swap_path(const qct_device* d, int src, int dst, int* path,
                       size_t path_cap, size_t* path_len,
                       double* reliability);
void qct_device_free(qct_device* d);

/* ---- high-level runs (JSON options in, documents out) ---------------- */

/* options: {qasm, calibration?, omega?, mode?, seed?, pulse?, verify?,
 *           trajectories?, noise?} */
int qct_compile_run(const char* options_json, char** report_json,
                    char** routed_qasm, char** schedule_csv);

/* options: {qasm, calibration?, omega?, mode?, seed?} */
int qct_map_run(const char* options_json, char** report_json,
                char** routed_qasm);

/* options: {circuit, noise?, trajectories, seed?}; circuit is QASM or the
 * qutrit line format. */
int qct_simulate_run(const char* options_json, char** result_json);

int qct_qutrit_bench(int max_controls, char** csv);

/* options: {block_qasm, hamiltonian?, target_fidelity?} */
int qct_pulse_opt(const char* options_json, char** pulse_csv,
                  char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* QCT_H */

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

#ifndef QCT_QASM_HPP
#define QCT_QASM_HPP

#include <string>

#include "qct/circuit.hpp"

namespace qct {

// Parses an OpenQASM-2.0-style subset: OPENQASM / include headers, qreg /
// creg declarations, the gates x y z h rx ry rz cx swap cz ccx, measure, and
// barrier (ignored). Parameters are expressions over decimal literals and pi
// with + - * / and unary minus. Registers are flattened to wire indices in
// declaration order.
Circuit parse_qasm(const std::string& text);
Circuit parse_qasm_file(const std::string& path);

// Inverse of parse_qasm up to structural equality. Throws UnsupportedGate for
// kinds without a textual form (AGGREGATE, GENERALIZED_TOFFOLI).
std::string emit_qasm(const Circuit& c);

}  // namespace qct

#endif

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

#include "qct/circuit.hpp"

#include <cmath>
#include <complex>
#include <set>

namespace qct {

using cd = std::complex<double>;

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::CNOT: return "cx";
    case GateKind::SWAP: return "swap";
    case GateKind::CZ: return "cz";
    case GateKind::TOFFOLI: return "ccx";
    case GateKind::GENERALIZED_TOFFOLI: return "gtoffoli";
    case GateKind::MEASURE: return "measure";
    case GateKind::AGGREGATE: return "aggregate";
  }
  return "?";
}

bool gate_has_param(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

GateClass gate_class(const Gate& g) {
  switch (g.kind) {
    case GateKind::MEASURE: return GateClass::MEASURE;
    case GateKind::AGGREGATE: return GateClass::AGGREGATE;
    default: break;
  }
  if (g.arity() == 1) return GateClass::ONE_Q;
  if (g.arity() == 2) return GateClass::TWO_Q;
  return GateClass::MULTI_Q;
}

namespace {

int fixed_arity(GateKind k) {
  switch (k) {
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::H:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::MEASURE:
      return 1;
    case GateKind::CNOT:
    case GateKind::SWAP:
    case GateKind::CZ:
      return 2;
    case GateKind::TOFFOLI:
      return 3;
    default:
      return -1;  // variable
  }
}

}  // namespace

Gate& Circuit::push(Gate g) {
  if (g.wires.empty()) fail("ArityMismatch", "gate with no operands");
  int want = fixed_arity(g.kind);
  if (want >= 0 && g.arity() != want)
    fail("ArityMismatch", std::string(gate_name(g.kind)) + " expects " +
                              std::to_string(want) + " operands, got " +
                              std::to_string(g.arity()));
  if (g.kind == GateKind::GENERALIZED_TOFFOLI && g.arity() < 2)
    fail("ArityMismatch", "gtoffoli needs at least one control and a target");
  std::set<int> seen;
  for (int w : g.wires) {
    if (w < 0 || w >= n_wires)
      fail("UndeclaredWire", "wire " + std::to_string(w) + " out of range");
    if (!seen.insert(w).second)
      fail("ArityMismatch", "duplicate operand wire " + std::to_string(w));
  }
  if (gate_has_param(g.kind) && !std::isfinite(g.theta))
    fail("RangeError", "non-finite gate parameter");
  g.id = next_id_++;
  gates.push_back(std::move(g));
  return gates.back();
}

Gate& Circuit::add(GateKind k, std::vector<int> wires, double theta) {
  if (k == GateKind::AGGREGATE)
    fail("ArityMismatch", "use add_aggregate for composite gates");
  Gate g;
  g.kind = k;
  g.wires = std::move(wires);
  g.theta = theta;
  return push(std::move(g));
}

Gate& Circuit::add_aggregate(Circuit sub, std::vector<int> wires) {
  if (static_cast<int>(wires.size()) != sub.n_wires)
    fail("ArityMismatch", "aggregate operand count must match subcircuit wires");
  subcircuits.push_back(std::move(sub));
  Gate g;
  g.kind = GateKind::AGGREGATE;
  g.wires = std::move(wires);
  g.subcircuit = static_cast<int>(subcircuits.size()) - 1;
  return push(std::move(g));
}

void Circuit::validate() const {
  std::vector<bool> measured(static_cast<size_t>(n_wires), false);
  for (const Gate& g : gates) {
    for (int w : g.wires) {
      if (w < 0 || w >= n_wires) fail("UndeclaredWire", "operand out of range");
      if (measured[static_cast<size_t>(w)])
        fail("RangeError",
             "gate after measurement on wire " + std::to_string(w));
    }
    if (g.kind == GateKind::MEASURE) measured[static_cast<size_t>(g.wires[0])] = true;
    if (g.kind == GateKind::AGGREGATE) {
      if (g.subcircuit < 0 ||
          g.subcircuit >= static_cast<int>(subcircuits.size()))
        fail("RangeError", "aggregate refers to missing subcircuit");
      subcircuits[static_cast<size_t>(g.subcircuit)].validate();
    }
  }
}

bool Circuit::operator==(const Circuit& other) const {
  if (n_wires != other.n_wires || wire_dim != other.wire_dim) return false;
  if (gates.size() != other.gates.size()) return false;
  for (size_t i = 0; i < gates.size(); ++i) {
    const Gate& a = gates[i];
    const Gate& b = other.gates[i];
    if (a.kind != b.kind || a.wires != b.wires || a.theta != b.theta)
      return false;
    if (a.kind == GateKind::AGGREGATE &&
        !(subcircuits[static_cast<size_t>(a.subcircuit)] ==
          other.subcircuits[static_cast<size_t>(b.subcircuit)]))
      return false;
  }
  return true;
}

Eigen::MatrixXcd gate_unitary(const Gate& g, int d) {
  const cd i1(0.0, 1.0);
  if (g.kind == GateKind::AGGREGATE)
    fail("UndefinedAtDimension", "aggregate has no standalone matrix");
  if (d == 3) {
    // only the generalized shift/clock pair and readout exist at d=3
    Eigen::MatrixXcd u3 = Eigen::MatrixXcd::Zero(3, 3);
    switch (g.kind) {
      case GateKind::X:  // X+1: |0>->|1>->|2>->|0>
        u3(1, 0) = u3(2, 1) = u3(0, 2) = 1.0;
        return u3;
      case GateKind::Z:
        for (int k = 0; k < 3; ++k)
          u3(k, k) = std::exp(i1 * (2.0 * M_PI * k / 3.0));
        return u3;
      case GateKind::MEASURE:
        return Eigen::MatrixXcd::Identity(3, 3);
      default:
        fail("UndefinedAtDimension",
             std::string(gate_name(g.kind)) + " has no qutrit matrix");
    }
  }
  if (d != 2) fail("UndefinedAtDimension", "unsupported dimension");
  auto dim = [&](int wires) {
    long n = 1;
    for (int k = 0; k < wires; ++k) n *= d;
    return n;
  };
  Eigen::MatrixXcd u;
  switch (g.kind) {
    case GateKind::X:
      u.setZero(2, 2);
      u(0, 1) = u(1, 0) = 1.0;
      return u;
    case GateKind::Y:
      u.setZero(2, 2);
      u(0, 1) = -i1;
      u(1, 0) = i1;
      return u;
    case GateKind::Z:
      u.setZero(2, 2);
      u(0, 0) = 1.0;
      u(1, 1) = -1.0;
      return u;
    case GateKind::H:
      u.resize(2, 2);
      u << 1.0, 1.0, 1.0, -1.0;
      return u / std::sqrt(2.0);
    case GateKind::RX:
      u.resize(2, 2);
      u << std::cos(g.theta / 2), -i1 * std::sin(g.theta / 2),
          -i1 * std::sin(g.theta / 2), std::cos(g.theta / 2);
      return u;
    case GateKind::RY:
      u.resize(2, 2);
      u << std::cos(g.theta / 2), -std::sin(g.theta / 2),
          std::sin(g.theta / 2), std::cos(g.theta / 2);
      return u;
    case GateKind::RZ:
      u.setZero(2, 2);
      u(0, 0) = std::exp(-i1 * (g.theta / 2));
      u(1, 1) = std::exp(i1 * (g.theta / 2));
      return u;
    case GateKind::MEASURE:
      return Eigen::MatrixXcd::Identity(2, 2);
    case GateKind::CNOT:
      u = Eigen::MatrixXcd::Identity(4, 4);
      u(2, 2) = u(3, 3) = 0.0;
      u(2, 3) = u(3, 2) = 1.0;
      return u;
    case GateKind::CZ:
      u = Eigen::MatrixXcd::Identity(4, 4);
      u(3, 3) = -1.0;
      return u;
    case GateKind::SWAP:
      u = Eigen::MatrixXcd::Identity(4, 4);
      u(1, 1) = u(2, 2) = 0.0;
      u(1, 2) = u(2, 1) = 1.0;
      return u;
    case GateKind::TOFFOLI:
      u = Eigen::MatrixXcd::Identity(8, 8);
      u(6, 6) = u(7, 7) = 0.0;
      u(6, 7) = u(7, 6) = 1.0;
      return u;
    case GateKind::GENERALIZED_TOFFOLI: {
      long n = dim(g.arity());
      u = Eigen::MatrixXcd::Identity(n, n);
      // target is the last operand; flip when all controls are 1
      u(n - 2, n - 2) = u(n - 1, n - 1) = 0.0;
      u(n - 2, n - 1) = u(n - 1, n - 2) = 1.0;
      return u;
    }
    default:
      break;
  }
  fail("UndefinedAtDimension", "no matrix for gate");
}

Circuit decompose_swap(const Circuit& c) {
  Circuit out(c.n_wires);
  out.wire_dim = c.wire_dim;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::SWAP) {
      int a = g.wires[0], b = g.wires[1];
      out.add(GateKind::CNOT, {a, b});
      out.add(GateKind::CNOT, {b, a});
      out.add(GateKind::CNOT, {a, b});
    } else if (g.kind == GateKind::AGGREGATE) {
      out.add_aggregate(
          decompose_swap(c.subcircuits[static_cast<size_t>(g.subcircuit)]),
          g.wires);
    } else {
      out.add(g.kind, g.wires, g.theta);
    }
  }
  return out;
}

}  // namespace qct

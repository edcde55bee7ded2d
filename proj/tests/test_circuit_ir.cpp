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

#include <random>

#include "doctest.h"
#include "qct/circuit.hpp"
#include "qct/gdg.hpp"
#include "qct/qasm.hpp"
#include "qct/scheduler.hpp"
#include "qct/sim.hpp"
#include "fixtures.hpp"

using namespace qct;

TEST_CASE("parse single cx") {
  Circuit c = parse_qasm("qreg q[2]; cx q[0],q[1];");
  CHECK(c.n_wires == 2);
  REQUIRE(c.gates.size() == 1);
  CHECK(c.gates[0].kind == GateKind::CNOT);
  CHECK(c.gates[0].wires == std::vector<int>{0, 1});
}

TEST_CASE("parse pi fraction parameter") {
  Circuit c = parse_qasm("qreg q[1]; rz(pi/2) q[0];");
  REQUIRE(c.gates.size() == 1);
  CHECK(c.gates[0].kind == GateKind::RZ);
  CHECK(c.gates[0].theta == doctest::Approx(1.5707963267948966).epsilon(1e-12));
}

TEST_CASE("parse parameter expressions") {
  CHECK(parse_qasm("qreg q[1]; rx(-pi) q[0];").gates[0].theta ==
        doctest::Approx(-M_PI));
  CHECK(parse_qasm("qreg q[1]; ry(3*pi/4) q[0];").gates[0].theta ==
        doctest::Approx(3 * M_PI / 4));
  CHECK(parse_qasm("qreg q[1]; rz(0.5) q[0];").gates[0].theta ==
        doctest::Approx(0.5));
}

TEST_CASE("parse qaoa triangle fixture") {
  Circuit c = parse_qasm(tests::kQaoaTriangle);
  CHECK(c.n_wires == 3);
  CHECK(c.gates.size() == 15);
}

TEST_CASE("parse errors carry positions and kinds") {
  CHECK_THROWS_WITH_AS(parse_qasm("qreg q[2]; cx q[0] q[1];"),
                       doctest::Contains("line 1"), Error);
  try {
    parse_qasm("qreg q[1];\nfoo q[0];");
    FAIL("expected UnknownGate");
  } catch (const Error& e) {
    CHECK(std::string(e.kind()) == "UnknownGate");
  }
  try {
    parse_qasm("qreg q[2]; cx q[0];");
    FAIL("expected ArityMismatch");
  } catch (const Error& e) {
    CHECK(std::string(e.kind()) == "ArityMismatch");
  }
  try {
    parse_qasm("qreg q[1]; x q[3];");
    FAIL("expected UndeclaredWire");
  } catch (const Error& e) {
    CHECK(std::string(e.kind()) == "UndeclaredWire");
  }
}

TEST_CASE("emit basics") {
  Circuit empty(0);
  std::string header_only = emit_qasm(empty);
  CHECK(header_only.find("OPENQASM") != std::string::npos);
  CHECK(header_only.find("cx") == std::string::npos);
  Circuit c(2);
  c.add(GateKind::CNOT, {0, 1});
  CHECK(emit_qasm(c).find("cx q[0],q[1];") != std::string::npos);
}

TEST_CASE("parse emit round trip on random circuits") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c = tests::random_circuit(rng, 4, 50);
    Circuit back = parse_qasm(emit_qasm(c));
    CHECK(back == c);
  }
}

TEST_CASE("swap decomposition") {
  Circuit c(2);
  c.add(GateKind::SWAP, {0, 1});
  Circuit d = decompose_swap(c);
  REQUIRE(d.gates.size() == 3);
  CHECK(d.gates[0].kind == GateKind::CNOT);
  CHECK(d.gates[0].wires == std::vector<int>{0, 1});
  CHECK(d.gates[1].wires == std::vector<int>{1, 0});
  CHECK(d.gates[2].wires == std::vector<int>{0, 1});

  Circuit noswap(2);
  noswap.add(GateKind::H, {0});
  CHECK(decompose_swap(noswap) == noswap);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Circuit r = tests::random_circuit(rng, 4, 30, true);
    CHECK(phase_aligned_distance(circuit_unitary(r),
                                 circuit_unitary(decompose_swap(r))) < 1e-10);
  }
}

TEST_CASE("gate unitaries") {
  Gate x{GateKind::X, {0}};
  Eigen::MatrixXcd ux = gate_unitary(x, 2);
  CHECK(std::abs(ux(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(ux(1, 0) - 1.0) < 1e-15);
  // shift at d=3 wraps |2> to |0>
  Eigen::MatrixXcd u3 = gate_unitary(x, 3);
  CHECK(std::abs(u3(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(u3(0, 2) - 1.0) < 1e-15);
  Gate cx{GateKind::CNOT, {0, 1}};
  Eigen::MatrixXcd uc = gate_unitary(cx, 2);
  CHECK(std::abs(uc(2, 3) - 1.0) < 1e-15);
  CHECK(std::abs(uc(3, 2) - 1.0) < 1e-15);
  CHECK(std::abs(uc(0, 0) - 1.0) < 1e-15);
  Gate h{GateKind::H, {0}};
  CHECK_THROWS_AS(gate_unitary(h, 3), Error);
  // unitarity across the gate set
  for (GateKind k : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H,
                     GateKind::CNOT, GateKind::CZ, GateKind::SWAP,
                     GateKind::TOFFOLI}) {
    Gate g;
    g.kind = k;
    g.wires = {0};
    if (k == GateKind::CNOT || k == GateKind::CZ || k == GateKind::SWAP)
      g.wires = {0, 1};
    if (k == GateKind::TOFFOLI) g.wires = {0, 1, 2};
    Eigen::MatrixXcd u = gate_unitary(g, 2);
    long n = u.rows();
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("circuit validation") {
  Circuit c(2);
  CHECK_THROWS_AS(c.add(GateKind::CNOT, {0, 0}), Error);  // duplicate operand
  CHECK_THROWS_AS(c.add(GateKind::X, {5}), Error);
  c.add(GateKind::MEASURE, {0});
  c.add(GateKind::X, {0});  // gate after measure on the same wire
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("gdg basics") {
  // single-qubit gate on the CNOT target commutes: no edge
  Circuit c(2);
  c.add(GateKind::CNOT, {0, 1});
  c.add(GateKind::X, {1});
  GateDependencyGraph g = build_gdg(c, commutes);
  CHECK_FALSE(g.has_edge(0, 1));

  Circuit d(2);
  d.add(GateKind::H, {0});
  d.add(GateKind::H, {1});
  GateDependencyGraph gd = build_gdg(d, commutes);
  CHECK(gd.succ[0].empty());
  CHECK(gd.succ[1].empty());

  // QAOA triangle blocks are mutually unordered after aggregation
  Circuit agg = aggregate_diagonal_blocks(parse_qasm(tests::kQaoaTriangle));
  GateDependencyGraph ga = build_gdg(agg, commutes);
  std::vector<int> blocks;
  for (size_t i = 0; i < agg.gates.size(); ++i)
    if (agg.gates[i].kind == GateKind::AGGREGATE)
      blocks.push_back(static_cast<int>(i));
  REQUIRE(blocks.size() == 3);
  for (int a : blocks)
    for (int b : blocks)
      if (a != b) CHECK_FALSE(ga.has_edge(a, b));
}

TEST_CASE("gdg topological reorderings preserve the unitary") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    Circuit c = tests::random_circuit(rng, 4, 12);
    GateDependencyGraph g = build_gdg(c, commutes);
    std::vector<int> order = g.topological_order();
    REQUIRE(order.size() == c.gates.size());
    Circuit re(c.n_wires);
    for (int idx : order) {
      const Gate& gg = c.gates[static_cast<size_t>(idx)];
      re.add(gg.kind, gg.wires, gg.theta);
    }
    CHECK(phase_aligned_distance(circuit_unitary(c), circuit_unitary(re)) <
          1e-10);
  }
}

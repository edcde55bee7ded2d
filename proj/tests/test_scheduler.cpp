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
#include "qct/qasm.hpp"
#include "qct/scheduler.hpp"
#include "qct/sim.hpp"
#include "fixtures.hpp"

using namespace qct;

TEST_CASE("commutation oracle") {
  Circuit c(6);
  int cx = static_cast<int>(c.gates.size());
  c.add(GateKind::CNOT, {0, 1});
  int z0 = static_cast<int>(c.gates.size());
  c.add(GateKind::Z, {0});
  int x0 = static_cast<int>(c.gates.size());
  c.add(GateKind::X, {0});
  int x1 = static_cast<int>(c.gates.size());
  c.add(GateKind::X, {1});
  int rz1 = static_cast<int>(c.gates.size());
  c.add(GateKind::RZ, {1}, 0.7);
  int h0 = static_cast<int>(c.gates.size());
  c.add(GateKind::H, {0});
  int far = static_cast<int>(c.gates.size());
  c.add(GateKind::H, {5});
  int cz = static_cast<int>(c.gates.size());
  c.add(GateKind::CZ, {1, 2});

  CHECK(commutes(c, cx, cx));          // reflexive
  CHECK(commutes(c, cx, far));         // disjoint wires
  CHECK(commutes(c, cx, z0));          // Z on the control
  CHECK(commutes(c, cx, x1));          // X on the target
  CHECK_FALSE(commutes(c, cx, x0));    // X on the control
  CHECK_FALSE(commutes(c, cx, rz1));   // RZ on the target
  CHECK_FALSE(commutes(c, cx, h0));
  CHECK(commutes(c, cz, rz1));         // diagonal x diagonal
  for (int i : {cx, z0, x0, x1, rz1, h0, far, cz})
    for (int j : {cx, z0, x0, x1, rz1, h0, far, cz})
      CHECK(commutes(c, i, j) == commutes(c, j, i));  // symmetric
}

TEST_CASE("readout never reorders on its wire") {
  Circuit c(2);
  c.add(GateKind::Z, {0});
  c.add(GateKind::MEASURE, {0});
  c.add(GateKind::MEASURE, {1});
  CHECK_FALSE(commutes(c, 0, 1));  // despite both being diagonal models
  CHECK(commutes(c, 0, 2));
}

TEST_CASE("commutation check refuses huge joint supports") {
  Circuit c(6);
  c.add(GateKind::GENERALIZED_TOFFOLI, {0, 1, 2, 3, 4, 5});
  c.add(GateKind::H, {0});
  CHECK_THROWS_AS(commutes(c, 0, 1), Error);
  try {
    commutes(c, 0, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == "TooLargeForMatrixCheck");
  }
}

TEST_CASE("diagonality oracle") {
  Circuit c(3);
  c.add(GateKind::RZ, {0}, 1.1);
  c.add(GateKind::CZ, {0, 1});
  c.add(GateKind::H, {2});
  c.add(GateKind::CNOT, {0, 1});
  c.add(GateKind::RZ, {1}, 0.4);
  c.add(GateKind::CNOT, {0, 1});
  CHECK(is_diagonal(c, {0, 1}));
  CHECK_FALSE(is_diagonal(c, {2}));
  CHECK(is_diagonal(c, {3, 4, 5}));  // ZZ interaction via matrix check
  CHECK_FALSE(is_diagonal(c, {3}));
}

TEST_CASE("qaoa layer aggregates into three interaction blocks") {
  Circuit c = parse_qasm(tests::kQaoaTriangle);
  Circuit agg = aggregate_diagonal_blocks(c);
  int n_agg = 0;
  for (const Gate& g : agg.gates)
    if (g.kind == GateKind::AGGREGATE) {
      ++n_agg;
      const Circuit& sub = agg.subcircuits[static_cast<size_t>(g.subcircuit)];
      CHECK(sub.gates.size() == 3);
      std::vector<int> all;
      for (size_t i = 0; i < sub.gates.size(); ++i)
        all.push_back(static_cast<int>(i));
      CHECK(is_diagonal(sub, all));
    }
  CHECK(n_agg == 3);
  CHECK(agg.gates.size() == 9);  // 3 h + 3 blocks + 3 rx
  CHECK(phase_aligned_distance(circuit_unitary(c),
                               circuit_unitary(flatten(agg))) < 1e-10);
}

TEST_CASE("aggregation leaves non-diagonal circuits alone") {
  Circuit c(2);
  c.add(GateKind::H, {0});
  c.add(GateKind::CNOT, {0, 1});
  c.add(GateKind::MEASURE, {0});
  Circuit agg = aggregate_diagonal_blocks(c);
  CHECK(agg == c);
}

TEST_CASE("an all-diagonal circuit becomes one block") {
  Circuit c(3);
  c.add(GateKind::Z, {0});
  c.add(GateKind::CZ, {0, 1});
  c.add(GateKind::RZ, {2}, 0.3);
  c.add(GateKind::CZ, {1, 2});
  Circuit agg = aggregate_diagonal_blocks(c);
  REQUIRE(agg.gates.size() == 1);
  CHECK(agg.gates[0].kind == GateKind::AGGREGATE);
  CHECK(agg.gates[0].wires == std::vector<int>{0, 1, 2});
}

TEST_CASE("flatten restores wire labels") {
  Circuit c = parse_qasm(tests::kQaoaTriangle);
  Circuit flat = flatten(aggregate_diagonal_blocks(c));
  CHECK(flat.n_wires == c.n_wires);
  REQUIRE(flat.gates.size() == c.gates.size());
  for (size_t i = 0; i < flat.gates.size(); ++i) {
    CHECK(flat.gates[i].kind == c.gates[i].kind);
    CHECK(flat.gates[i].wires == c.gates[i].wires);
  }
}

TEST_CASE("durations") {
  DeviceModel dev = DeviceModel::line(3);
  Circuit c(3);
  c.add(GateKind::H, {0});
  c.add(GateKind::SWAP, {0, 1});
  c.add(GateKind::MEASURE, {2});
  Circuit agg(2);
  agg.add(GateKind::CNOT, {0, 1});
  agg.add(GateKind::RZ, {1}, 0.2);
  agg.add(GateKind::CNOT, {0, 1});
  c.add_aggregate(std::move(agg), {1, 2});
  std::vector<double> d = gate_durations(c, dev);
  REQUIRE(d.size() == 4);
  CHECK(d[0] == doctest::Approx(50.0));
  CHECK(d[1] == doctest::Approx(900.0));   // SWAP = three 2q gates
  CHECK(d[2] == doctest::Approx(1000.0));
  CHECK(d[3] == doctest::Approx(650.0));   // aggregate = member sum
}

TEST_CASE("commuting gates overlap under the relaxed schedule") {
  Circuit c(2);
  c.add(GateKind::CNOT, {0, 1});
  c.add(GateKind::X, {1});  // commutes with the CNOT: no dependency edge
  GateDependencyGraph g = build_gdg(c, commutes);
  Schedule s = cls_schedule(c, g, DeviceModel::line(2));
  CHECK(s.start_ns[0] == doctest::Approx(0.0));
  CHECK(s.start_ns[1] == doctest::Approx(0.0));
  CHECK(s.makespan == doctest::Approx(300.0));
  // ...while a genuine dependency serializes
  Circuit d(2);
  d.add(GateKind::CNOT, {0, 1});
  d.add(GateKind::H, {1});
  GateDependencyGraph gd = build_gdg(d, commutes);
  Schedule sd = cls_schedule(d, gd, DeviceModel::line(2));
  CHECK(sd.start_ns[1] == doctest::Approx(300.0));
  CHECK(sd.makespan == doctest::Approx(350.0));
}

TEST_CASE("relaxed schedule beats source-order asap on the qaoa layer") {
  Circuit agg = aggregate_diagonal_blocks(parse_qasm(tests::kQaoaTriangle));
  DeviceModel dev = DeviceModel::line(3);
  std::vector<double> dur = gate_durations(agg, dev);
  GateDependencyGraph g = build_gdg(agg, commutes);
  Schedule cls = cls_schedule(agg, g, dur);
  Schedule asap = asap_schedule(agg, dur);
  // the three interaction blocks commute pairwise and run concurrently
  CHECK(cls.makespan == doctest::Approx(750.0));
  CHECK(asap.makespan == doctest::Approx(2050.0));
  CHECK(cls.makespan < asap.makespan);
}

TEST_CASE("relaxed schedule never loses to asap") {
  std::mt19937_64 rng(31);
  DeviceModel dev = DeviceModel::line(4);
  for (int trial = 0; trial < 15; ++trial) {
    Circuit c = tests::random_circuit(rng, 4, 25);
    std::vector<double> dur = gate_durations(c, dev);
    GateDependencyGraph g = build_gdg(c, commutes);
    CHECK(cls_schedule(c, g, dur).makespan <=
          asap_schedule(c, dur).makespan + 1e-9);
  }
}

TEST_CASE("schedule csv shape") {
  Circuit c(2);
  c.add(GateKind::CNOT, {0, 1});
  c.add(GateKind::H, {1});
  GateDependencyGraph g = build_gdg(c, commutes);
  Schedule s = cls_schedule(c, g, DeviceModel::line(2));
  std::string csv = schedule_to_csv(c, s);
  CHECK(csv.find("gate_id,start_ns,end_ns,wires") == 0);
  CHECK(csv.find("0,0,300,0 1") != std::string::npos);
  CHECK(csv.find("1,300,350,1") != std::string::npos);
}

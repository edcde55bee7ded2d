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
#include <random>
#include <set>

#include "doctest.h"
#include "qct/device.hpp"

using namespace qct;

namespace {

// Brute-force oracle: enumerate every simple path and keep the most
// reliable one under the (1-eps)^3-per-SWAP model (last edge excluded).
void all_paths(const DeviceModel& m, int u, int dst, std::vector<int>& path,
               std::set<int>& used, double rel, double& best) {
  if (u == dst) {
    best = std::max(best, rel);
    return;
  }
  for (int v : m.neighbors(u)) {
    if (used.count(v)) continue;
    double hop = v == dst ? 1.0 : std::pow(1.0 - m.edge_eps(u, v), 3.0);
    used.insert(v);
    path.push_back(v);
    all_paths(m, v, dst, path, used, rel * hop, best);
    path.pop_back();
    used.erase(v);
  }
}

double oracle_best(const DeviceModel& m, int src, int dst) {
  std::vector<int> path{src};
  std::set<int> used{src};
  double best = -1.0;
  all_paths(m, src, dst, path, used, 1.0, best);
  return best;
}

}  // namespace

TEST_CASE("uniform ladder defaults") {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < 8; ++i) {
    edges.push_back({i, i + 1});
    edges.push_back({i + 8, i + 9});
  }
  for (int i = 0; i < 8; ++i) edges.push_back({i, i + 8});
  DeviceModel m = DeviceModel::uniform(16, edges);
  m.validate();
  CHECK(m.n_qubits == 16);
  CHECK(m.edges.size() == 22);
  CHECK(m.has_edge(3, 11));
  CHECK(m.has_edge(11, 3));
  CHECK_FALSE(m.has_edge(0, 9));
  CHECK(m.edge_eps(0, 1) == doctest::Approx(0.07));
  CHECK(m.eps_1q[5] == doctest::Approx(0.002));
  CHECK(m.eps_ro[5] == doctest::Approx(0.04));
  CHECK(m.t2_us[5] == doctest::Approx(40.0));
  CHECK(m.duration(GateClass::ONE_Q) == doctest::Approx(50.0));
  CHECK(m.duration(GateClass::TWO_Q) == doctest::Approx(300.0));
  CHECK(m.duration(GateClass::MEASURE) == doctest::Approx(1000.0));
  CHECK_THROWS_AS(m.edge_eps(0, 2), Error);
}

TEST_CASE("calibration json round trip") {
  CalibrationSnapshot snap = load_calibration_text(R"({
    "timestamp": "2026-03-14T09:26:53Z",
    "n_qubits": 3,
    "edges": [[0,1],[1,2]],
    "eps_2q": {"0-1": 0.05, "1-2": 0.11},
    "eps_1q": [0.001, 0.002, 0.003],
    "eps_ro": [0.02, 0.03, 0.04],
    "t2_us": [25.0, 50.0, 75.0],
    "durations_ns": {"1q": 40, "2q": 250, "measure": 800}
  })");
  CHECK(snap.timestamp == "2026-03-14T09:26:53Z");
  const DeviceModel& m = snap.model;
  CHECK(m.edge_eps(0, 1) == doctest::Approx(0.05));
  CHECK(m.edge_eps(2, 1) == doctest::Approx(0.11));
  CHECK(m.eps_1q[2] == doctest::Approx(0.003));
  CHECK(m.t2_us[0] == doctest::Approx(25.0));
  CHECK(m.duration(GateClass::TWO_Q) == doctest::Approx(250.0));
}

TEST_CASE("calibration errors") {
  auto kind_of = [](const std::string& text) {
    try {
      load_calibration_text(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return std::string("no error");
  };
  CHECK(kind_of("{not json") == "SchemaError");
  CHECK(kind_of(R"({"edges": []})") == "SchemaError");  // missing n_qubits
  CHECK(kind_of(R"({"n_qubits": 2, "edges": [[0,1]],
                    "eps_2q": {"0-1": 1.2}})") == "RangeError");
  CHECK(kind_of(R"({"n_qubits": 2, "edges": [[0,5]]})") == "GraphError");
  CHECK(kind_of(R"({"n_qubits": 2, "edges": [[0,1]],
                    "eps_2q": {"1-0": 0.02}, "t2_us": [0.0, 30.0]})") ==
        "RangeError");
}

TEST_CASE("gate reliability per class") {
  DeviceModel m = DeviceModel::line(3);
  Gate cx{GateKind::CNOT, {0, 1}};
  CHECK(gate_reliability(cx, {0, 1}, m) == doctest::Approx(0.93));
  Gate x{GateKind::X, {0}};
  CHECK(gate_reliability(x, {2}, m) == doctest::Approx(0.998));
  Gate meas{GateKind::MEASURE, {0}};
  CHECK(gate_reliability(meas, {1}, m) == doctest::Approx(0.96));
  CHECK_THROWS_AS(gate_reliability(cx, {0, 9}, m), Error);
  CHECK_THROWS_AS(gate_reliability(cx, {0, 2}, m), Error);  // not an edge
}

TEST_CASE("best swap path basics") {
  DeviceModel m = DeviceModel::line(4);
  // adjacent qubits need no SWAPs
  auto [p0, r0] = best_swap_path(1, 2, m);
  CHECK(p0 == std::vector<int>{1, 2});
  CHECK(r0 == doctest::Approx(1.0));
  // one SWAP over a 0.05 edge: reliability 0.95^3
  DeviceModel m3 = DeviceModel::line(3);
  for (auto& [k, v] : m3.eps_2q) v = 0.05;
  auto [p1, r1] = best_swap_path(0, 2, m3);
  CHECK(p1 == std::vector<int>{0, 1, 2});
  CHECK(r1 == doctest::Approx(0.857375));
  // two SWAPs on the default line
  auto [p2, r2] = best_swap_path(0, 3, m);
  CHECK(p2 == std::vector<int>{0, 1, 2, 3});
  CHECK(r2 == doctest::Approx(std::pow(0.93, 6)));
  DeviceModel split = DeviceModel::uniform(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(best_swap_path(0, 3, split), Error);
}

TEST_CASE("best swap path picks the reliable detour") {
  // square: 0-1-3 direct but lossy, 0-2-3 longer-eps-cheap
  DeviceModel m = DeviceModel::uniform(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
  m.eps_2q[{0, 1}] = 0.14;
  m.eps_2q[{0, 2}] = 0.02;
  auto [p, r] = best_swap_path(0, 3, m);
  CHECK(p == std::vector<int>{0, 2, 3});
  CHECK(r == doctest::Approx(std::pow(0.98, 3)));
}

TEST_CASE("best swap path matches exhaustive search") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> eps(0.01, 0.15);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 5 + static_cast<int>(rng() % 4);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    for (int a = 0; a < n; ++a)
      for (int b = a + 2; b < n; ++b)
        if (rng() % 3 == 0) edges.push_back({a, b});
    DeviceModel m = DeviceModel::uniform(n, edges);
    for (auto& [k, v] : m.eps_2q) v = eps(rng);
    auto [path, rel] = best_swap_path(0, n - 1, m);
    CHECK(rel == doctest::Approx(oracle_best(m, 0, n - 1)).epsilon(1e-9));
    // returned path is consistent with its claimed reliability
    double check = 1.0;
    for (size_t i = 0; i + 2 < path.size(); ++i)
      check *= std::pow(1.0 - m.edge_eps(path[i], path[i + 1]), 3.0);
    CHECK(m.has_edge(path[path.size() - 2], path.back()));
    CHECK(rel == doctest::Approx(check).epsilon(1e-12));
  }
}

TEST_CASE("worsening an edge never helps routing") {
  DeviceModel m = DeviceModel::uniform(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4},
                                           {0, 4}, {1, 3}});
  double base = best_swap_path(0, 3, m).second;
  for (auto e : m.edges) {
    DeviceModel worse = m;
    worse.eps_2q[e] = 0.45;
    CHECK(best_swap_path(0, 3, worse).second <= base + 1e-12);
  }
}

TEST_CASE("random calibration is deterministic and in range") {
  auto edges = DeviceModel::line(6).edges;
  CalibrationSnapshot a = random_calibration(6, edges, 99);
  CalibrationSnapshot b = random_calibration(6, edges, 99);
  CalibrationSnapshot c = random_calibration(6, edges, 100);
  CHECK(a.model.eps_2q == b.model.eps_2q);
  CHECK(a.model.eps_1q == b.model.eps_1q);
  CHECK(a.model.eps_2q != c.model.eps_2q);
  a.model.validate();
  for (auto& [k, v] : a.model.eps_2q) {
    CHECK(v >= 0.01);
    CHECK(v <= 0.15);
  }
  for (double v : a.model.t2_us) {
    CHECK(v >= 20.0);
    CHECK(v <= 90.0);
  }
}

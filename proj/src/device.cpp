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

#include "qct/device.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <random>
#include <sstream>

#include "json.hpp"

namespace qct {

namespace {

std::pair<int, int> norm_edge(int a, int b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

bool DeviceModel::has_edge(int a, int b) const {
  return std::find(edges.begin(), edges.end(), norm_edge(a, b)) != edges.end();
}

double DeviceModel::edge_eps(int a, int b) const {
  auto it = eps_2q.find(norm_edge(a, b));
  if (it == eps_2q.end()) fail("IllegalSite", "no edge between qubits");
  return it->second;
}

double DeviceModel::duration(GateClass cls) const {
  auto pick = [&](const char* key, double dflt) {
    auto it = durations_ns.find(key);
    return it == durations_ns.end() ? dflt : it->second;
  };
  switch (cls) {
    case GateClass::ONE_Q: return pick("1q", 50.0);
    case GateClass::TWO_Q: return pick("2q", 300.0);
    case GateClass::MULTI_Q: return pick("2q", 300.0);
    case GateClass::MEASURE: return pick("measure", 1000.0);
    case GateClass::AGGREGATE: return pick("2q", 300.0);
  }
  return 300.0;
}

const std::vector<int>& DeviceModel::neighbors(int q) const {
  if (adj_.empty()) {
    adj_.resize(static_cast<size_t>(n_qubits));
    for (auto [a, b] : edges) {
      adj_[static_cast<size_t>(a)].push_back(b);
      adj_[static_cast<size_t>(b)].push_back(a);
    }
  }
  return adj_[static_cast<size_t>(q)];
}

void DeviceModel::validate() const {
  if (n_qubits < 1) fail("SchemaError", "device needs at least one qubit");
  auto check_rate = [](double e, const char* what) {
    if (!(e >= 0.0 && e < 1.0))
      fail("RangeError", std::string(what) + " outside [0,1)");
  };
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_qubits || b >= n_qubits || a == b)
      fail("GraphError", "edge references a nonexistent qubit");
    auto it = eps_2q.find(norm_edge(a, b));
    if (it == eps_2q.end()) fail("SchemaError", "edge without eps_2q entry");
    check_rate(it->second, "eps_2q");
  }
  if (static_cast<int>(eps_1q.size()) != n_qubits ||
      static_cast<int>(eps_ro.size()) != n_qubits ||
      static_cast<int>(t2_us.size()) != n_qubits)
    fail("SchemaError", "per-qubit arrays must have n_qubits entries");
  for (double e : eps_1q) check_rate(e, "eps_1q");
  for (double e : eps_ro) check_rate(e, "eps_ro");
  for (double t : t2_us)
    if (!(t > 0.0)) fail("RangeError", "t2 must be positive");
  for (const auto& [k, v] : durations_ns)
    if (!(v > 0.0)) fail("RangeError", "duration must be positive");
}

DeviceModel DeviceModel::uniform(int n_qubits,
                                 std::vector<std::pair<int, int>> edges) {
  DeviceModel m;
  m.n_qubits = n_qubits;
  for (auto [a, b] : edges) m.edges.push_back(norm_edge(a, b));
  for (auto e : m.edges) m.eps_2q[e] = kDefaultEps2q;
  m.eps_1q.assign(static_cast<size_t>(n_qubits), kDefaultEps1q);
  m.eps_ro.assign(static_cast<size_t>(n_qubits), kDefaultEpsRo);
  m.t2_us.assign(static_cast<size_t>(n_qubits), kDefaultT2Us);
  return m;
}

DeviceModel DeviceModel::line(int n_qubits) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n_qubits; ++i) edges.push_back({i, i + 1});
  return uniform(n_qubits, std::move(edges));
}

CalibrationSnapshot load_calibration_text(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    fail("SchemaError", std::string("calibration: ") + e.what());
  }
  CalibrationSnapshot snap;
  snap.timestamp = j.value("timestamp", "1970-01-01T00:00:00Z");
  DeviceModel& m = snap.model;
  if (!j.contains("n_qubits")) fail("SchemaError", "missing n_qubits");
  m.n_qubits = j["n_qubits"].get<int>();
  if (j.contains("edges"))
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2)
        fail("SchemaError", "edge must be a pair");
      m.edges.push_back(norm_edge(e[0].get<int>(), e[1].get<int>()));
    }
  for (auto e : m.edges) m.eps_2q[e] = kDefaultEps2q;
  if (j.contains("eps_2q")) {
    for (auto it = j["eps_2q"].begin(); it != j["eps_2q"].end(); ++it) {
      int a = 0, b = 0;
      if (std::sscanf(it.key().c_str(), "%d-%d", &a, &b) != 2)
        fail("SchemaError", "eps_2q key must be 'a-b'");
      if (!m.has_edge(a, b)) fail("GraphError", "eps_2q for a non-edge");
      m.eps_2q[norm_edge(a, b)] = it.value().get<double>();
    }
  }
  auto per_qubit = [&](const char* key, double dflt) {
    std::vector<double> v(static_cast<size_t>(m.n_qubits), dflt);
    if (j.contains(key)) {
      auto arr = j[key];
      if (!arr.is_array() || static_cast<int>(arr.size()) > m.n_qubits)
        fail("SchemaError", std::string(key) + " array too long");
      for (size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
    }
    return v;
  };
  m.eps_1q = per_qubit("eps_1q", kDefaultEps1q);
  m.eps_ro = per_qubit("eps_ro", kDefaultEpsRo);
  m.t2_us = per_qubit("t2_us", kDefaultT2Us);
  if (j.contains("durations_ns"))
    for (auto it = j["durations_ns"].begin(); it != j["durations_ns"].end();
         ++it)
      m.durations_ns[it.key()] = it.value().get<double>();
  m.validate();
  return snap;
}

CalibrationSnapshot load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("SchemaError", "cannot open calibration file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_calibration_text(ss.str());
}

CalibrationSnapshot random_calibration(int n_qubits,
                                       std::vector<std::pair<int, int>> edges,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DeviceModel m = DeviceModel::uniform(n_qubits, std::move(edges));
  std::uniform_real_distribution<double> e2(0.01, 0.15);
  std::uniform_real_distribution<double> e1(0.0005, 0.006);
  std::uniform_real_distribution<double> ro(0.01, 0.10);
  std::uniform_real_distribution<double> t2(20.0, 90.0);
  for (auto& [k, v] : m.eps_2q) v = e2(rng);
  for (auto& v : m.eps_1q) v = e1(rng);
  for (auto& v : m.eps_ro) v = ro(rng);
  for (auto& v : m.t2_us) v = t2(rng);
  CalibrationSnapshot snap;
  snap.timestamp = "2026-01-01T00:00:00Z";
  snap.model = std::move(m);
  return snap;
}

double gate_reliability(const Gate& g, const std::vector<int>& site,
                        const DeviceModel& m) {
  for (int q : site)
    if (q < 0 || q >= m.n_qubits) fail("IllegalSite", "qubit out of range");
  switch (gate_class(g)) {
    case GateClass::ONE_Q:
      return 1.0 - m.eps_1q[static_cast<size_t>(site.at(0))];
    case GateClass::MEASURE:
      return 1.0 - m.eps_ro[static_cast<size_t>(site.at(0))];
    case GateClass::TWO_Q:
      return 1.0 - m.edge_eps(site.at(0), site.at(1));
    default:
      fail("IllegalSite", "reliability defined for 1q/2q/measure gates");
  }
}

std::pair<std::vector<int>, double> best_swap_path(int src, int dst,
                                                   const DeviceModel& m) {
  if (src == dst) return {{src}, 1.0};
  if (m.has_edge(src, dst)) return {{src, dst}, 1.0};
  // Dijkstra from src over -3 ln(1-eps) weights, dst excluded as an
  // intermediate node; the cheapest reachable neighbor of dst ends the
  // SWAP chain and the final edge hosts the gate itself.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<size_t>(m.n_qubits), inf);
  std::vector<int> prev(static_cast<size_t>(m.n_qubits), -1);
  using QE = std::pair<double, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  dist[static_cast<size_t>(src)] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[static_cast<size_t>(u)]) continue;
    for (int v : m.neighbors(u)) {
      if (v == dst) continue;
      double nd = d - 3.0 * std::log(1.0 - m.edge_eps(u, v));
      if (nd < dist[static_cast<size_t>(v)]) {
        dist[static_cast<size_t>(v)] = nd;
        prev[static_cast<size_t>(v)] = u;
        pq.push({nd, v});
      }
    }
  }
  int best = -1;
  double bd = inf;
  for (int v : m.neighbors(dst))
    if (dist[static_cast<size_t>(v)] < bd) {
      bd = dist[static_cast<size_t>(v)];
      best = v;
    }
  if (best < 0) fail("Unreachable", "no path between qubits");
  std::vector<int> path;
  for (int v = best; v != -1; v = prev[static_cast<size_t>(v)])
    path.push_back(v);
  std::reverse(path.begin(), path.end());
  path.push_back(dst);
  return {path, std::exp(-bd)};
}

}  // namespace qct

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

#include "qct/mapper.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>

namespace qct {

void Mapping::validate(int n_hw) const {
  std::set<int> seen;
  for (int q : assign) {
    if (q < 0 || q >= n_hw) fail("Infeasible", "mapping target out of range");
    if (!seen.insert(q).second) fail("Infeasible", "mapping not injective");
  }
}

double log_reliability_objective(const Circuit& hw_circuit,
                                 const DeviceModel& dev,
                                 const ObjectiveWeights& w) {
  if (w.omega < 0.0 || w.omega > 1.0) fail("RangeError", "omega outside [0,1]");
  double obj = 0.0;
  const Circuit flat = flatten(hw_circuit);
  for (const Gate& g : flat.gates) {
    switch (gate_class(g)) {
      case GateClass::ONE_Q:
        obj += std::log(1.0 - dev.eps_1q[static_cast<size_t>(g.wires[0])]);
        break;
      case GateClass::MEASURE:
        obj += 2.0 * w.omega *
               std::log(1.0 - dev.eps_ro[static_cast<size_t>(g.wires[0])]);
        break;
      case GateClass::TWO_Q: {
        if (!dev.has_edge(g.wires[0], g.wires[1]))
          fail("UnroutedGate", "two-qubit gate off the coupling graph");
        double term =
            std::log(1.0 - dev.edge_eps(g.wires[0], g.wires[1]));
        if (g.kind == GateKind::SWAP) term *= 3.0;  // three native gates
        obj += 2.0 * (1.0 - w.omega) * term;
        break;
      }
      default:
        fail("UnroutedGate", "multi-qubit gate must be decomposed first");
    }
  }
  return obj;
}

RoutedCircuit route(const Circuit& c, const Mapping& m, const DeviceModel& dev,
                    const ObjectiveWeights& w) {
  m.validate(dev.n_qubits);
  const Circuit flat = flatten(c);
  if (static_cast<int>(m.assign.size()) < flat.n_wires)
    fail("Infeasible", "mapping smaller than the program register");
  RoutedCircuit out;
  out.circuit = Circuit(dev.n_qubits);
  std::vector<int> live = m.assign;  // program -> hardware
  for (const Gate& g : flat.gates) {
    if (g.arity() == 1) {
      out.circuit.add(g.kind, {live[static_cast<size_t>(g.wires[0])]},
                      g.theta);
      continue;
    }
    if (g.arity() != 2)
      fail("UnroutedGate", "routing handles 1- and 2-qubit gates");
    int pa = live[static_cast<size_t>(g.wires[0])];
    int pb = live[static_cast<size_t>(g.wires[1])];
    if (!dev.has_edge(pa, pb)) {
      auto [path, rel] = best_swap_path(pa, pb, dev);
      (void)rel;
      for (size_t i = 0; i + 2 < path.size(); ++i) {
        out.circuit.add(GateKind::SWAP, {path[i], path[i + 1]});
        ++out.swap_count;
        for (int& q : live) {
          if (q == path[i]) q = path[i + 1];
          else if (q == path[i + 1]) q = path[i];
        }
      }
      pa = live[static_cast<size_t>(g.wires[0])];
    }
    out.circuit.add(g.kind, {pa, pb}, g.theta);
  }
  out.final_assign = live;
  out.log_reliability = log_reliability_objective(out.circuit, dev, w);
  return out;
}

namespace {

struct InteractionStats {
  std::vector<std::vector<int>> pair_count;  // program qubit pair counts
  std::vector<int> degree;
};

InteractionStats interactions(const Circuit& flat) {
  InteractionStats s;
  s.pair_count.assign(static_cast<size_t>(flat.n_wires),
                      std::vector<int>(static_cast<size_t>(flat.n_wires), 0));
  s.degree.assign(static_cast<size_t>(flat.n_wires), 0);
  for (const Gate& g : flat.gates) {
    if (g.arity() != 2) continue;
    int a = g.wires[0], b = g.wires[1];
    ++s.pair_count[static_cast<size_t>(a)][static_cast<size_t>(b)];
    ++s.pair_count[static_cast<size_t>(b)][static_cast<size_t>(a)];
    ++s.degree[static_cast<size_t>(a)];
    ++s.degree[static_cast<size_t>(b)];
  }
  return s;
}

double site_quality(int q, const DeviceModel& dev) {
  double best_edge = 0.0;
  for (int v : dev.neighbors(q))
    best_edge = std::max(best_edge, 1.0 - dev.edge_eps(q, v));
  return best_edge + (1.0 - dev.eps_ro[static_cast<size_t>(q)]) +
         (1.0 - dev.eps_1q[static_cast<size_t>(q)]);
}

Mapping greedy_placement(const Circuit& flat, const DeviceModel& dev) {
  InteractionStats stats = interactions(flat);
  int k = flat.n_wires;
  std::vector<int> order(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) order[static_cast<size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return stats.degree[static_cast<size_t>(a)] >
           stats.degree[static_cast<size_t>(b)];
  });
  std::vector<int> assign(static_cast<size_t>(k), -1);
  std::vector<bool> used(static_cast<size_t>(dev.n_qubits), false);
  for (int pq : order) {
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int hw = 0; hw < dev.n_qubits; ++hw) {
      if (used[static_cast<size_t>(hw)]) continue;
      double score = site_quality(hw, dev);
      for (int other = 0; other < k; ++other) {
        int pos = assign[static_cast<size_t>(other)];
        if (pos < 0 ||
            stats.pair_count[static_cast<size_t>(pq)][static_cast<size_t>(other)] == 0)
          continue;
        double rel;
        if (dev.has_edge(hw, pos))
          rel = 1.0 - dev.edge_eps(hw, pos);
        else
          rel = best_swap_path(hw, pos, dev).second * 0.5;
        score += stats.pair_count[static_cast<size_t>(pq)][static_cast<size_t>(other)] * rel;
      }
      if (score > best_score) {
        best_score = score;
        best = hw;
      }
    }
    assign[static_cast<size_t>(pq)] = best;
    used[static_cast<size_t>(best)] = true;
  }
  return Mapping{assign};
}

}  // namespace

std::pair<Mapping, RoutedCircuit> exact_map(const Circuit& c,
                                            const DeviceModel& dev,
                                            const ObjectiveWeights& w) {
  const Circuit flat = flatten(c);
  int k = flat.n_wires;
  if (k > dev.n_qubits) fail("Infeasible", "more program than device qubits");
  if (k > 6 || dev.n_qubits > 16)
    fail("TooLarge", "exact search bounded at 6 program / 16 device qubits");
  std::vector<int> assign(static_cast<size_t>(k), -1);
  std::vector<bool> used(static_cast<size_t>(dev.n_qubits), false);
  double best_obj = -std::numeric_limits<double>::infinity();
  Mapping best_map;
  std::function<void(int)> rec = [&](int pq) {
    if (pq == k) {
      try {
        RoutedCircuit r = route(flat, Mapping{assign}, dev, w);
        if (r.log_reliability > best_obj) {
          best_obj = r.log_reliability;
          best_map.assign = assign;
        }
      } catch (const Error& e) {
        if (std::string(e.kind()) != "Unreachable") throw;
      }
      return;
    }
    for (int hw = 0; hw < dev.n_qubits; ++hw) {
      if (used[static_cast<size_t>(hw)]) continue;
      used[static_cast<size_t>(hw)] = true;
      assign[static_cast<size_t>(pq)] = hw;
      rec(pq + 1);
      used[static_cast<size_t>(hw)] = false;
    }
    assign[static_cast<size_t>(pq)] = -1;
  };
  rec(0);
  if (best_map.assign.empty())
    fail("Infeasible", "no routable mapping exists");
  return {best_map, route(flat, best_map, dev, w)};
}

std::pair<Mapping, RoutedCircuit> heuristic_map(const Circuit& c,
                                                const DeviceModel& dev,
                                                const ObjectiveWeights& w,
                                                std::uint64_t seed) {
  const Circuit flat = flatten(c);
  int k = flat.n_wires;
  if (k > dev.n_qubits) fail("Infeasible", "more program than device qubits");
  auto eval = [&](const Mapping& m) -> double {
    try {
      return route(flat, m, dev, w).log_reliability;
    } catch (const Error& e) {
      if (std::string(e.kind()) == "Unreachable")
        return -std::numeric_limits<double>::infinity();
      throw;
    }
  };
  Mapping cur = greedy_placement(flat, dev);
  double cur_obj = eval(cur);
  Mapping best = cur;
  double best_obj = cur_obj;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_pq(0, k - 1);
  std::uniform_int_distribution<int> pick_hw(0, dev.n_qubits - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int iters = 400 * std::max(1, k) + 1000;
  double temp = 0.2;
  const double cool = std::pow(1e-4 / temp, 1.0 / iters);
  for (int it = 0; it < iters; ++it, temp *= cool) {
    Mapping cand = cur;
    int pq = pick_pq(rng);
    int hw = pick_hw(rng);
    int old = cand.assign[static_cast<size_t>(pq)];
    if (hw == old) continue;
    auto hit = std::find(cand.assign.begin(), cand.assign.end(), hw);
    if (hit != cand.assign.end()) *hit = old;  // swap occupants
    cand.assign[static_cast<size_t>(pq)] = hw;
    double obj = eval(cand);
    double delta = obj - cur_obj;
    if (delta >= 0.0 || unit(rng) < std::exp(delta / temp)) {
      cur = cand;
      cur_obj = obj;
      if (obj > best_obj) {
        best_obj = obj;
        best = cand;
      }
    }
  }
  if (!std::isfinite(best_obj)) fail("Infeasible", "no routable mapping found");
  return {best, route(flat, best, dev, w)};
}

CoherenceReport coherence_check(const Schedule& s, const Circuit& hw_circuit,
                                const DeviceModel& dev) {
  std::vector<double> last_end(static_cast<size_t>(dev.n_qubits), 0.0);
  for (size_t i = 0; i < hw_circuit.gates.size(); ++i)
    for (int w : hw_circuit.gates[i].wires)
      last_end[static_cast<size_t>(w)] =
          std::max(last_end[static_cast<size_t>(w)], s.end_ns[i]);
  CoherenceReport rep;
  for (int q = 0; q < dev.n_qubits; ++q)
    if (last_end[static_cast<size_t>(q)] >
        dev.t2_us[static_cast<size_t>(q)] * 1000.0) {
      rep.pass = false;
      rep.violators.push_back(q);
    }
  return rep;
}

}  // namespace qct

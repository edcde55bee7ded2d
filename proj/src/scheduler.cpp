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

#include "qct/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qct/sim.hpp"

namespace qct {

namespace {

constexpr double kTol = 1e-10;

std::vector<int> union_wires(const Gate& a, const Gate& b) {
  std::vector<int> w = a.wires;
  for (int x : b.wires)
    if (std::find(w.begin(), w.end(), x) == w.end()) w.push_back(x);
  std::sort(w.begin(), w.end());
  return w;
}

bool symbolically_diagonal(const Gate& g) {
  switch (g.kind) {
    case GateKind::Z:
    case GateKind::RZ:
    case GateKind::CZ:
    case GateKind::MEASURE:  // modeled as identity
      return true;
    default:
      return false;
  }
}

bool matrix_diagonal(const Eigen::MatrixXcd& u) {
  double off = 0.0;
  for (Eigen::Index r = 0; r < u.rows(); ++r)
    for (Eigen::Index cc = 0; cc < u.cols(); ++cc)
      if (r != cc) off = std::max(off, std::abs(u(r, cc)));
  return off < kTol;
}

}  // namespace

bool is_diagonal(const Circuit& c, const std::vector<int>& gate_indices) {
  std::set<int> wires;
  bool all_symbolic = true;
  for (int gi : gate_indices) {
    const Gate& g = c.gates[static_cast<size_t>(gi)];
    all_symbolic = all_symbolic && symbolically_diagonal(g);
    for (int w : g.wires) wires.insert(w);
  }
  if (all_symbolic) return true;
  if (wires.size() > 4)
    fail("TooLargeForMatrixCheck", "diagonality check needs > 4 wires");
  std::vector<int> wl(wires.begin(), wires.end());
  return matrix_diagonal(local_unitary(c, gate_indices, wl));
}

bool commutes(const Circuit& c, int i, int j) {
  if (i == j) return true;
  const Gate& a = c.gates[static_cast<size_t>(i)];
  const Gate& b = c.gates[static_cast<size_t>(j)];
  std::vector<int> shared;
  for (int w : a.wires)
    if (std::find(b.wires.begin(), b.wires.end(), w) != b.wires.end())
      shared.push_back(w);
  if (shared.empty()) return true;
  // readout is state-destroying on its wire even though its unitary model
  // is the identity; keep it ordered against everything it touches
  if (a.kind == GateKind::MEASURE || b.kind == GateKind::MEASURE) return false;
  if (symbolically_diagonal(a) && symbolically_diagonal(b)) return true;
  // control-side Z/RZ and target-side X/RX against CNOT
  auto pauli_rule = [&](const Gate& cnot, const Gate& single) {
    if (cnot.kind != GateKind::CNOT || single.arity() != 1) return false;
    int w = single.wires[0];
    bool on_control = w == cnot.wires[0];
    bool on_target = w == cnot.wires[1];
    if (on_control &&
        (single.kind == GateKind::Z || single.kind == GateKind::RZ))
      return true;
    if (on_target &&
        (single.kind == GateKind::X || single.kind == GateKind::RX))
      return true;
    return false;
  };
  if (pauli_rule(a, b) || pauli_rule(b, a)) return true;
  std::vector<int> w = union_wires(a, b);
  if (w.size() > 4)
    fail("TooLargeForMatrixCheck", "commutation check needs > 4 joint wires");
  Eigen::MatrixXcd ua = local_unitary(c, {i}, w);
  Eigen::MatrixXcd ub = local_unitary(c, {j}, w);
  return (ua * ub - ub * ua).cwiseAbs().maxCoeff() < kTol;
}

Circuit aggregate_diagonal_blocks(const Circuit& c) {
  Circuit out(c.n_wires);
  out.wire_dim = c.wire_dim;
  size_t i = 0;
  while (i < c.gates.size()) {
    const Gate& g0 = c.gates[i];
    bool eligible = g0.kind != GateKind::MEASURE &&
                    g0.kind != GateKind::AGGREGATE && g0.arity() <= 3;
    size_t best_len = 0;
    std::vector<int> run;
    if (eligible) {
      std::set<int> wires(g0.wires.begin(), g0.wires.end());
      size_t j = i;
      while (j < c.gates.size()) {
        const Gate& g = c.gates[j];
        if (g.kind == GateKind::MEASURE || g.kind == GateKind::AGGREGATE)
          break;
        std::set<int> grown = wires;
        for (int w : g.wires) grown.insert(w);
        bool subset = grown.size() == wires.size();
        if (!subset && !(symbolically_diagonal(g) && grown.size() <= 3)) break;
        wires = grown;
        run.push_back(static_cast<int>(j));
        // longest diagonal prefix of length >= 2 wins
        if (run.size() >= 2 && is_diagonal(c, run))
          best_len = run.size();
        ++j;
      }
    }
    if (best_len >= 2) {
      std::set<int> wset;
      for (size_t k = 0; k < best_len; ++k)
        for (int w : c.gates[i + k].wires) wset.insert(w);
      std::vector<int> wl(wset.begin(), wset.end());
      Circuit sub(static_cast<int>(wl.size()));
      for (size_t k = 0; k < best_len; ++k) {
        Gate g = c.gates[i + k];
        for (int& w : g.wires)
          w = static_cast<int>(std::find(wl.begin(), wl.end(), w) -
                               wl.begin());
        sub.add(g.kind, g.wires, g.theta);
      }
      out.add_aggregate(std::move(sub), wl);
      i += best_len;
    } else {
      out.add(g0.kind, g0.wires, g0.theta);
      ++i;
    }
  }
  return out;
}

Circuit flatten(const Circuit& c) {
  Circuit out(c.n_wires);
  out.wire_dim = c.wire_dim;
  for (const Gate& g : c.gates) {
    if (g.kind != GateKind::AGGREGATE) {
      out.add(g.kind, g.wires, g.theta);
      continue;
    }
    Circuit sub = flatten(c.subcircuits[static_cast<size_t>(g.subcircuit)]);
    for (const Gate& sg : sub.gates) {
      std::vector<int> w = sg.wires;
      for (int& x : w) x = g.wires[static_cast<size_t>(x)];
      out.add(sg.kind, w, sg.theta);
    }
  }
  return out;
}

std::vector<double> gate_durations(const Circuit& c, const DeviceModel& dev) {
  std::vector<double> d;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::AGGREGATE) {
      // default aggregate cost: sum of member durations
      double sum = 0.0;
      Circuit sub;
      sub.n_wires = c.n_wires;
      sub.wire_dim = c.wire_dim;
      sub.gates = c.subcircuits[static_cast<size_t>(g.subcircuit)].gates;
      sub.subcircuits = c.subcircuits;
      for (double x : gate_durations(sub, dev)) sum += x;
      d.push_back(sum);
    } else if (g.kind == GateKind::SWAP) {
      d.push_back(3.0 * dev.duration(GateClass::TWO_Q));
    } else {
      d.push_back(dev.duration(gate_class(g)));
    }
  }
  return d;
}

Schedule asap_schedule(const Circuit& c,
                       const std::vector<double>& durations_ns) {
  Schedule s;
  size_t n = c.gates.size();
  s.start_ns.assign(n, 0.0);
  s.end_ns.assign(n, 0.0);
  std::vector<double> wire_free(static_cast<size_t>(c.n_wires), 0.0);
  for (size_t i = 0; i < n; ++i) {
    double t = 0.0;
    for (int w : c.gates[i].wires)
      t = std::max(t, wire_free[static_cast<size_t>(w)]);
    s.start_ns[i] = t;
    s.end_ns[i] = t + durations_ns[i];
    for (int w : c.gates[i].wires)
      wire_free[static_cast<size_t>(w)] = s.end_ns[i];
    s.makespan = std::max(s.makespan, s.end_ns[i]);
  }
  return s;
}

Schedule cls_schedule(const Circuit& c, const GateDependencyGraph& gdg,
                      const std::vector<double>& durations_ns) {
  size_t n = c.gates.size();
  if (durations_ns.size() != n)
    fail("RangeError", "duration table size mismatch");
  // Earliest start under exactly the relaxed dependency edges: commuting
  // gates may overlap even on shared wires (they end up fused into one
  // control pulse downstream). Edges always point forward in the gate
  // list, so one left-to-right pass settles every start time.
  Schedule s;
  s.start_ns.assign(n, 0.0);
  s.end_ns.assign(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    double t = 0.0;
    for (int p : gdg.pred[i]) t = std::max(t, s.end_ns[static_cast<size_t>(p)]);
    s.start_ns[i] = t;
    s.end_ns[i] = t + durations_ns[i];
    s.makespan = std::max(s.makespan, s.end_ns[i]);
  }
  return s;
}

Schedule cls_schedule(const Circuit& c, const GateDependencyGraph& gdg,
                      const DeviceModel& dev) {
  return cls_schedule(c, gdg, gate_durations(c, dev));
}

std::string schedule_to_csv(const Circuit& c, const Schedule& s) {
  std::ostringstream out;
  out << "gate_id,start_ns,end_ns,wires\n";
  for (size_t i = 0; i < c.gates.size(); ++i) {
    out << c.gates[i].id << "," << s.start_ns[i] << "," << s.end_ns[i] << ",";
    for (size_t k = 0; k < c.gates[i].wires.size(); ++k)
      out << (k ? " " : "") << c.gates[i].wires[k];
    out << "\n";
  }
  return out.str();
}

}  // namespace qct

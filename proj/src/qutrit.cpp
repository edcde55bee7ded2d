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

#include "qct/qutrit.hpp"

#include <algorithm>
#include <sstream>

namespace qct {

std::vector<int> QutritGate::wires() const {
  std::vector<int> w;
  for (const auto& c : controls) w.push_back(c.first);
  w.push_back(target);
  return w;
}

QutritGate& QutritCircuit::add(QutritGate g) {
  std::vector<int> seen;
  for (const auto& c : g.controls) {
    if (c.first < 0 || c.first >= n_wires || c.first == g.target)
      fail("RangeError", "bad control wire");
    if (c.second != 1 && c.second != 2)
      fail("RangeError", "activation state must be 1 or 2");
    if (std::count(seen.begin(), seen.end(), c.first))
      fail("RangeError", "duplicate control wire");
    seen.push_back(c.first);
  }
  if (g.target < 0 || g.target >= n_wires)
    fail("RangeError", "bad target wire");
  gates.push_back(std::move(g));
  return gates.back();
}

Eigen::Matrix3cd action_matrix(TritAction a, const Eigen::Matrix2cd& u01) {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  switch (a) {
    case TritAction::PLUS_ONE:
      m(1, 0) = m(2, 1) = m(0, 2) = 1.0;
      return m;
    case TritAction::MINUS_ONE:
      m(0, 1) = m(1, 2) = m(2, 0) = 1.0;
      return m;
    case TritAction::FLIP_01:
      m(0, 1) = m(1, 0) = m(2, 2) = 1.0;
      return m;
    case TritAction::U01:
      m.topLeftCorner<2, 2>() = u01;
      m(2, 2) = 1.0;
      return m;
  }
  fail("UnsupportedAction", "unknown action");
}

QutritGate inverse_gate(const QutritGate& g) {
  QutritGate inv = g;
  switch (g.action) {
    case TritAction::PLUS_ONE: inv.action = TritAction::MINUS_ONE; break;
    case TritAction::MINUS_ONE: inv.action = TritAction::PLUS_ONE; break;
    case TritAction::FLIP_01: break;
    case TritAction::U01: inv.u01 = g.u01.adjoint(); break;
  }
  return inv;
}

namespace {

QutritGate single(int wire, TritAction a) {
  QutritGate g;
  g.target = wire;
  g.action = a;
  return g;
}

QutritGate ctrl1(int c, int act, int target, TritAction a) {
  QutritGate g;
  g.controls = {{c, act}};
  g.target = target;
  g.action = a;
  return g;
}

QutritGate ctrl2(int ca, int sa, int cb, int sb, int target, TritAction a) {
  QutritGate g;
  g.controls = {{ca, sa}, {cb, sb}};
  g.target = target;
  g.action = a;
  return g;
}

}  // namespace

QutritCircuit toffoli_via_qutrit() {
  QutritCircuit c(3);
  c.add(ctrl1(0, 1, 1, TritAction::PLUS_ONE));
  c.add(ctrl1(1, 2, 2, TritAction::FLIP_01));
  c.add(ctrl1(0, 1, 1, TritAction::MINUS_ONE));
  return c;
}

namespace {

// Balanced control-tree node: after the compute gates run, `wire` holds
// `state` exactly when all controls in the subtree started as |1>.
struct TreeRoot {
  int wire;
  int state;  // activation that signals "all ones"
};

TreeRoot build_tree(const std::vector<int>& controls, QutritCircuit& out) {
  size_t k = controls.size();
  if (k == 1) return {controls[0], 1};
  if (k == 2) {
    out.add(ctrl1(controls[0], 1, controls[1], TritAction::PLUS_ONE));
    return {controls[1], 2};
  }
  size_t mid = (k - 1 + 1) / 2;  // middle control carries the subtree result
  std::vector<int> left(controls.begin(), controls.begin() + mid);
  std::vector<int> right(controls.begin() + mid + 1, controls.end());
  TreeRoot l = build_tree(left, out);
  TreeRoot r = build_tree(right, out);
  out.add(ctrl2(l.wire, l.state, r.wire, r.state, controls[mid],
                TritAction::PLUS_ONE));
  return {controls[mid], 2};
}

}  // namespace

QutritCircuit generalized_toffoli(int n_controls) {
  if (n_controls < 2) fail("InvalidN", "need at least 2 controls");
  QutritCircuit c(n_controls + 1);
  std::vector<int> controls(static_cast<size_t>(n_controls));
  for (int i = 0; i < n_controls; ++i) controls[static_cast<size_t>(i)] = i;
  QutritCircuit compute(c.n_wires);
  TreeRoot root = build_tree(controls, compute);
  for (const auto& g : compute.gates) c.add(g);
  c.add(ctrl1(root.wire, root.state, n_controls, TritAction::FLIP_01));
  for (auto it = compute.gates.rbegin(); it != compute.gates.rend(); ++it)
    c.add(inverse_gate(*it));
  return c;
}

namespace {

// Two-control X+1 as a 13-gate chain: the group-commutator core
//   F_a ; X-1_b ; X-1_b ; F_a ; X+1_b ; X+1_b      (F = 01-flip on target)
// interleaved with 7 frame-change singles on the target and middle-control
// wires. Frames on t commute with the X+-1 actions and are unwound before
// the second F; the frame on b shifts the activation of the gates under it.
// Every gate shares a wire with its predecessor, so the run is serial.
QutritCircuit plus_one_ladder(int a, int s1, int b, int s2, int t,
                              int n_wires) {
  QutritCircuit out(n_wires);
  int cb = (s2 == 1) ? 1 : -1;  // b-frame keeping activations in {1,2}
  int s2f = s2 + cb;            // activation seen under the b-frame
  TritAction up = TritAction::PLUS_ONE;
  TritAction dn = TritAction::MINUS_ONE;
  out.add(ctrl1(a, s1, t, TritAction::FLIP_01));
  out.add(single(t, up));
  out.add(ctrl1(b, s2, t, dn));
  out.add(single(b, cb > 0 ? up : dn));
  out.add(ctrl1(b, s2f, t, dn));
  out.add(single(t, dn));
  out.add(ctrl1(a, s1, t, TritAction::FLIP_01));
  out.add(single(t, up));
  out.add(ctrl1(b, s2f, t, up));
  out.add(single(b, cb > 0 ? dn : up));
  out.add(ctrl1(b, s2, t, up));
  out.add(single(t, up));
  out.add(single(t, up));
  return out;
}

}  // namespace

QutritCircuit decompose_ternary(const QutritGate& g) {
  int n = 0;
  for (int w : g.wires()) n = std::max(n, w + 1);
  if (g.n_controls() < 2) {
    QutritCircuit out(n);
    out.add(g);
    return out;
  }
  if (g.n_controls() > 2)
    fail("UnsupportedAction", "more than two controls");
  if (g.action != TritAction::PLUS_ONE && g.action != TritAction::MINUS_ONE)
    fail("UnsupportedAction",
         "two-control decomposition defined for X+1 / X-1 only");
  int a = g.controls[0].first, s1 = g.controls[0].second;
  int b = g.controls[1].first, s2 = g.controls[1].second;
  QutritCircuit plus = plus_one_ladder(a, s1, b, s2, g.target, n);
  if (g.action == TritAction::PLUS_ONE) return plus;
  QutritCircuit out(n);
  for (auto it = plus.gates.rbegin(); it != plus.gates.rend(); ++it)
    out.add(inverse_gate(*it));
  return out;
}

QutritCircuit decompose_all(const QutritCircuit& c) {
  QutritCircuit out(c.n_wires);
  for (const auto& g : c.gates) {
    QutritCircuit d = decompose_ternary(g);
    for (const auto& dg : d.gates) out.add(dg);
  }
  return out;
}

CostReport cost_report(const QutritCircuit& c, int n_controls) {
  CostReport r;
  r.n_controls = n_controls;
  std::vector<int> wire_layer(static_cast<size_t>(c.n_wires), 0);
  for (const auto& g : c.gates) {
    if (g.n_controls() > 1)
      fail("NotDecomposed", "three-qutrit gate in cost accounting");
    if (g.n_controls() == 1)
      ++r.two_qudit_count;
    else
      ++r.single_qudit_count;
    int start = 0;
    for (int w : g.wires())
      start = std::max(start, wire_layer[static_cast<size_t>(w)]);
    for (int w : g.wires()) wire_layer[static_cast<size_t>(w)] = start + 1;
    r.depth = std::max(r.depth, start + 1);
  }
  return r;
}

namespace {

const char* action_name(TritAction a) {
  switch (a) {
    case TritAction::PLUS_ONE: return "x+1";
    case TritAction::MINUS_ONE: return "x-1";
    case TritAction::FLIP_01: return "x01";
    case TritAction::U01: return "u01";
  }
  return "?";
}

}  // namespace

std::string emit_qutrit(const QutritCircuit& c) {
  std::ostringstream out;
  out << "qutrits " << c.n_wires << "\n";
  for (const auto& g : c.gates) {
    if (g.action == TritAction::U01)
      fail("UnsupportedAction", "u01 gates have no text form");
    out << "gate " << action_name(g.action) << " controls=[";
    for (size_t i = 0; i < g.controls.size(); ++i) {
      out << (i ? "," : "") << "(" << g.controls[i].first << ","
          << g.controls[i].second << ")";
    }
    out << "] target=" << g.target << "\n";
  }
  return out.str();
}

QutritCircuit parse_qutrit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  QutritCircuit c;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "qutrits") {
      if (!(ls >> c.n_wires) || c.n_wires < 1)
        fail("SyntaxError", "line " + std::to_string(lineno) + ": bad count");
      continue;
    }
    if (word != "gate")
      fail("SyntaxError", "line " + std::to_string(lineno) + ": expected gate");
    std::string name, rest;
    ls >> name;
    QutritGate g;
    if (name == "x+1") g.action = TritAction::PLUS_ONE;
    else if (name == "x-1") g.action = TritAction::MINUS_ONE;
    else if (name == "x01") g.action = TritAction::FLIP_01;
    else fail("UnknownGate", "line " + std::to_string(lineno) + ": " + name);
    ls >> rest;
    if (rest.rfind("controls=[", 0) != 0)
      fail("SyntaxError", "line " + std::to_string(lineno) + ": controls");
    std::string body = rest.substr(10);
    if (body.empty() || body.back() != ']')
      fail("SyntaxError", "line " + std::to_string(lineno) + ": controls");
    body.pop_back();
    size_t pos = 0;
    while (pos < body.size()) {
      int w = 0, s = 0;
      if (std::sscanf(body.c_str() + pos, "(%d,%d)", &w, &s) != 2)
        fail("SyntaxError", "line " + std::to_string(lineno) + ": control");
      g.controls.push_back({w, s});
      size_t close = body.find(')', pos);
      pos = (close == std::string::npos) ? body.size() : close + 2;
    }
    ls >> rest;
    if (rest.rfind("target=", 0) != 0)
      fail("SyntaxError", "line " + std::to_string(lineno) + ": target");
    g.target = std::stoi(rest.substr(7));
    c.add(std::move(g));
  }
  return c;
}

}  // namespace qct

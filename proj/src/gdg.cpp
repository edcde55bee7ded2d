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

#include "qct/gdg.hpp"

#include <algorithm>
#include <queue>

namespace qct {

bool GateDependencyGraph::has_edge(int a, int b) const {
  const auto& s = succ[static_cast<size_t>(a)];
  return std::find(s.begin(), s.end(), b) != s.end();
}

std::vector<int> GateDependencyGraph::topological_order() const {
  std::vector<int> indeg(static_cast<size_t>(n), 0);
  for (int u = 0; u < n; ++u)
    for (int v : succ[static_cast<size_t>(u)]) ++indeg[static_cast<size_t>(v)];
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int u = 0; u < n; ++u)
    if (indeg[static_cast<size_t>(u)] == 0) ready.push(u);
  std::vector<int> order;
  while (!ready.empty()) {
    int u = ready.top();
    ready.pop();
    order.push_back(u);
    for (int v : succ[static_cast<size_t>(u)])
      if (--indeg[static_cast<size_t>(v)] == 0) ready.push(v);
  }
  return order;
}

namespace {

bool share_wire(const Gate& a, const Gate& b) {
  for (int w : a.wires)
    if (std::find(b.wires.begin(), b.wires.end(), w) != b.wires.end())
      return true;
  return false;
}

}  // namespace

GateDependencyGraph build_gdg(const Circuit& c, const CommuteOracle& oracle) {
  GateDependencyGraph g;
  g.n = static_cast<int>(c.gates.size());
  g.succ.assign(static_cast<size_t>(g.n), {});
  g.pred.assign(static_cast<size_t>(g.n), {});
  std::vector<std::vector<bool>> conflict(
      static_cast<size_t>(g.n), std::vector<bool>(static_cast<size_t>(g.n)));
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      conflict[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          share_wire(c.gates[static_cast<size_t>(i)],
                     c.gates[static_cast<size_t>(j)]) &&
          !oracle(c, i, j);
  // transitive reduction: keep (i,j) only if no conflicting k sits between
  std::vector<std::vector<bool>> reach = conflict;
  for (int k = 0; k < g.n; ++k)
    for (int i = 0; i < k; ++i)
      if (reach[static_cast<size_t>(i)][static_cast<size_t>(k)])
        for (int j = k + 1; j < g.n; ++j)
          if (reach[static_cast<size_t>(k)][static_cast<size_t>(j)])
            reach[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) {
      if (!conflict[static_cast<size_t>(i)][static_cast<size_t>(j)]) continue;
      bool redundant = false;
      for (int k = i + 1; k < j && !redundant; ++k)
        redundant = reach[static_cast<size_t>(i)][static_cast<size_t>(k)] &&
                    reach[static_cast<size_t>(k)][static_cast<size_t>(j)];
      if (!redundant) {
        g.succ[static_cast<size_t>(i)].push_back(j);
        g.pred[static_cast<size_t>(j)].push_back(i);
      }
    }
  return g;
}

}  // namespace qct

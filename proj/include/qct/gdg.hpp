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

#ifndef QCT_GDG_HPP
#define QCT_GDG_HPP

#include <functional>
#include <vector>

#include "qct/circuit.hpp"

namespace qct {

// Partial order over gate positions (indices into Circuit::gates) induced
// by shared wires and non-commutativity; transitively reduced.
struct GateDependencyGraph {
  int n = 0;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<int>> pred;

  bool has_edge(int a, int b) const;
  // Topological order by Kahn's algorithm, lowest index first among ready.
  std::vector<int> topological_order() const;
};

// Decides whether the gates at positions i and j of c commute.
using CommuteOracle = std::function<bool(const Circuit&, int, int)>;

// Edges between wire-sharing non-commuting gate pairs in list order, then
// transitive reduction.
GateDependencyGraph build_gdg(const Circuit& c, const CommuteOracle& oracle);

}  // namespace qct

#endif

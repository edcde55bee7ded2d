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

#include "qct/sim.hpp"

#include <cmath>
#include <complex>

#include "json.hpp"

namespace qct {

using cd = std::complex<double>;

namespace {

long dims_product(const std::vector<int>& dims, long cap = -1) {
  long n = 1;
  for (int d : dims) {
    n *= d;
    if (cap > 0 && n > cap) fail("TooLarge", "state dimension exceeds cap");
  }
  return n;
}

std::vector<long> strides_of(const std::vector<int>& dims) {
  std::vector<long> st(dims.size());
  long s = 1;
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    st[static_cast<size_t>(i)] = s;
    s *= dims[static_cast<size_t>(i)];
  }
  return st;
}

}  // namespace

QuditState QuditState::zero(const std::vector<int>& dims) {
  QuditState s;
  s.dims = dims;
  s.amp = Eigen::VectorXcd::Zero(dims_product(dims));
  s.amp(0) = 1.0;
  return s;
}

QuditState QuditState::basis(const std::vector<int>& dims,
                             const std::vector<int>& digits) {
  QuditState s;
  s.dims = dims;
  s.amp = Eigen::VectorXcd::Zero(dims_product(dims));
  s.amp(basis_index(dims, digits)) = 1.0;
  return s;
}

long basis_index(const std::vector<int>& dims, const std::vector<int>& digits) {
  if (dims.size() != digits.size()) fail("DimensionMismatch", "digit count");
  long idx = 0;
  for (size_t i = 0; i < dims.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= dims[i])
      fail("DimensionMismatch", "digit out of range");
    idx = idx * dims[i] + digits[i];
  }
  return idx;
}

std::vector<int> basis_digits(const std::vector<int>& dims, long index) {
  std::vector<int> d(dims.size());
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    d[static_cast<size_t>(i)] = static_cast<int>(index % dims[static_cast<size_t>(i)]);
    index /= dims[static_cast<size_t>(i)];
  }
  return d;
}

void apply_unitary(QuditState& s, const Eigen::MatrixXcd& u,
                   const std::vector<int>& wires) {
  const auto st = strides_of(s.dims);
  long L = 1;
  for (int w : wires) {
    if (w < 0 || w >= static_cast<int>(s.dims.size()))
      fail("DimensionMismatch", "wire out of range");
    L *= s.dims[static_cast<size_t>(w)];
  }
  if (u.rows() != L || u.cols() != L)
    fail("DimensionMismatch", "gate matrix size vs wire dims");
  // offsets of the local basis combos within the global index
  std::vector<long> offs(static_cast<size_t>(L));
  for (long l = 0; l < L; ++l) {
    long rem = l, off = 0;
    for (int i = static_cast<int>(wires.size()) - 1; i >= 0; --i) {
      int d = s.dims[static_cast<size_t>(wires[static_cast<size_t>(i)])];
      off += (rem % d) * st[static_cast<size_t>(wires[static_cast<size_t>(i)])];
      rem /= d;
    }
    offs[static_cast<size_t>(l)] = off;
  }
  std::vector<int> comp;
  for (int w = 0; w < static_cast<int>(s.dims.size()); ++w)
    if (std::find(wires.begin(), wires.end(), w) == wires.end())
      comp.push_back(w);
  std::vector<int> digit(comp.size(), 0);
  Eigen::VectorXcd local(L);
  for (;;) {
    long base = 0;
    for (size_t i = 0; i < comp.size(); ++i)
      base += digit[i] * st[static_cast<size_t>(comp[i])];
    for (long l = 0; l < L; ++l) local(l) = s.amp(base + offs[static_cast<size_t>(l)]);
    local = u * local;
    for (long l = 0; l < L; ++l) s.amp(base + offs[static_cast<size_t>(l)]) = local(l);
    // odometer over complement digits
    int i = static_cast<int>(comp.size()) - 1;
    for (; i >= 0; --i) {
      if (++digit[static_cast<size_t>(i)] < s.dims[static_cast<size_t>(comp[static_cast<size_t>(i)])]) break;
      digit[static_cast<size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
}

Eigen::MatrixXcd gate_matrix(const QutritGate& g) {
  long L = 1;
  for (int i = 0; i <= g.n_controls(); ++i) L *= 3;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(L, L);
  Eigen::Matrix3cd a = action_matrix(g.action, g.u01);
  for (long col = 0; col < L; ++col) {
    // local digits: controls in order, target last
    long rem = col;
    int tdig = static_cast<int>(rem % 3);
    rem /= 3;
    bool active = true;
    for (int i = g.n_controls() - 1; i >= 0; --i) {
      int cdig = static_cast<int>(rem % 3);
      rem /= 3;
      if (cdig != g.controls[static_cast<size_t>(i)].second) active = false;
    }
    if (!active) {
      u(col, col) = 1.0;
      continue;
    }
    long base = col - tdig;
    for (int r = 0; r < 3; ++r)
      if (a(r, tdig) != cd(0.0, 0.0)) u(base + r, col) = a(r, tdig);
  }
  return u;
}

Eigen::MatrixXcd gate_matrix(const Circuit& c, const Gate& g) {
  if (g.kind == GateKind::AGGREGATE)
    return circuit_unitary(c.subcircuits[static_cast<size_t>(g.subcircuit)]);
  return gate_unitary(g, 2);
}

void apply_gate(QuditState& s, const Circuit& c, const Gate& g) {
  if (g.kind == GateKind::AGGREGATE) {
    const Circuit& sub = c.subcircuits[static_cast<size_t>(g.subcircuit)];
    for (const Gate& sg : sub.gates) {
      Gate mapped = sg;
      for (int& w : mapped.wires) w = g.wires[static_cast<size_t>(w)];
      apply_gate(s, sub, mapped);
    }
    return;
  }
  for (int w : g.wires)
    if (s.dims[static_cast<size_t>(w)] != 2)
      fail("DimensionMismatch", "qubit gate on non-qubit wire");
  apply_unitary(s, gate_unitary(g, 2), g.wires);
}

void apply_gate(QuditState& s, const QutritGate& g) {
  for (int w : g.wires())
    if (s.dims[static_cast<size_t>(w)] != 3)
      fail("DimensionMismatch", "qutrit gate on non-qutrit wire");
  apply_unitary(s, gate_matrix(g), g.wires());
}

Eigen::MatrixXcd local_unitary(const Circuit& c,
                               const std::vector<int>& gate_indices,
                               const std::vector<int>& wires) {
  std::vector<int> dims;
  for (int w : wires) dims.push_back(c.wire_dim[static_cast<size_t>(w)]);
  long L = dims_product(dims);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(L, L);
  for (long col = 0; col < L; ++col) {
    QuditState s;
    s.dims = dims;
    s.amp = u.col(col);
    for (int gi : gate_indices) {
      const Gate& g = c.gates[static_cast<size_t>(gi)];
      Gate mapped = g;
      for (int& w : mapped.wires) {
        auto it = std::find(wires.begin(), wires.end(), w);
        if (it == wires.end())
          fail("DimensionMismatch", "gate leaves the local wire set");
        w = static_cast<int>(it - wires.begin());
      }
      Circuit shim;
      shim.n_wires = static_cast<int>(wires.size());
      shim.wire_dim = dims;
      shim.subcircuits = c.subcircuits;
      apply_gate(s, shim, mapped);
    }
    u.col(col) = s.amp;
  }
  return u;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c, long cap) {
  long n = dims_product(c.wire_dim, cap);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  for (long col = 0; col < n; ++col) {
    QuditState s;
    s.dims = c.wire_dim;
    s.amp = u.col(col);
    for (const Gate& g : c.gates) apply_gate(s, c, g);
    u.col(col) = s.amp;
  }
  return u;
}

Eigen::MatrixXcd circuit_unitary(const QutritCircuit& c, long cap) {
  std::vector<int> dims(static_cast<size_t>(c.n_wires), 3);
  long n = dims_product(dims, cap);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  for (long col = 0; col < n; ++col) {
    QuditState s;
    s.dims = dims;
    s.amp = u.col(col);
    for (const QutritGate& g : c.gates) apply_gate(s, g);
    u.col(col) = s.amp;
  }
  return u;
}

double states_fidelity(const QuditState& a, const QuditState& b) {
  if (a.dims != b.dims) fail("DimensionMismatch", "state dims differ");
  return std::norm(a.amp.dot(b.amp));
}

double phase_aligned_distance(const Eigen::MatrixXcd& u,
                              const Eigen::MatrixXcd& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    fail("DimensionMismatch", "matrix sizes differ");
  Eigen::Index r = 0, cidx = 0;
  u.cwiseAbs().maxCoeff(&r, &cidx);
  cd phase(1.0, 0.0);
  if (std::abs(u(r, cidx)) > 1e-300) {
    phase = v(r, cidx) / u(r, cidx);
    double m = std::abs(phase);
    phase = (m > 1e-300) ? phase / m : cd(1.0, 0.0);
  }
  return ((u * phase) - v).cwiseAbs().maxCoeff();
}

NoiseChannel NoiseChannel::depolarizing(int d, double p) {
  if (p < 0.0 || p > 1.0) fail("RangeError", "depolarizing p out of [0,1]");
  NoiseChannel ch;
  ch.kind = Kind::DEPOLARIZING;
  ch.param = p;
  const cd i1(0.0, 1.0);
  Eigen::MatrixXcd xmat = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd zmat = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    xmat((j + 1) % d, j) = 1.0;
    zmat(j, j) = std::exp(i1 * (2.0 * M_PI * j / d));
  }
  ch.kraus.push_back(std::sqrt(1.0 - p) *
                     Eigen::MatrixXcd::Identity(d, d));
  double w = std::sqrt(p / (d * d - 1));
  Eigen::MatrixXcd xa = Eigen::MatrixXcd::Identity(d, d);
  for (int a = 0; a < d; ++a) {
    Eigen::MatrixXcd m = xa;
    for (int b = 0; b < d; ++b) {
      if (a != 0 || b != 0) ch.kraus.push_back(w * m);
      m = m * zmat;
    }
    xa = xmat * xa;
  }
  return ch;
}

NoiseChannel NoiseChannel::dephasing(int d, double p) {
  if (p < 0.0 || p > 1.0) fail("RangeError", "dephasing p out of [0,1]");
  NoiseChannel ch;
  ch.kind = Kind::DEPHASING;
  ch.param = p;
  const cd i1(0.0, 1.0);
  ch.kraus.push_back(std::sqrt(1.0 - p) * Eigen::MatrixXcd::Identity(d, d));
  for (int b = 1; b < d; ++b) {
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(d, d);
    for (int j = 0; j < d; ++j)
      z(j, j) = std::exp(i1 * (2.0 * M_PI * j * b / d));
    ch.kraus.push_back(std::sqrt(p / (d - 1)) * z);
  }
  return ch;
}

NoiseChannel NoiseChannel::amplitude_damping(int d, double gamma) {
  if (gamma < 0.0 || gamma > 1.0) fail("RangeError", "gamma out of [0,1]");
  NoiseChannel ch;
  ch.kind = Kind::AMPLITUDE_DAMPING;
  ch.param = gamma;
  Eigen::MatrixXcd k0 = Eigen::MatrixXcd::Identity(d, d);
  for (int j = 1; j < d; ++j) k0(j, j) = std::sqrt(1.0 - gamma);
  ch.kraus.push_back(k0);
  for (int j = 1; j < d; ++j) {
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(d, d);
    k(j - 1, j) = std::sqrt(gamma);  // |j> -> |j-1> ladder
    ch.kraus.push_back(k);
  }
  return ch;
}

NoiseChannel NoiseChannel::idle_decoherence(int d, double t2_us,
                                            double duration_ns) {
  if (t2_us <= 0.0) fail("RangeError", "T2 must be positive");
  double p = 1.0 - std::exp(-duration_ns / (t2_us * 1000.0));
  NoiseChannel ch = dephasing(d, p);
  ch.kind = Kind::IDLE;
  return ch;
}

double NoiseChannel::trace_preservation_defect() const {
  if (kraus.empty()) return 0.0;
  long d = kraus[0].rows();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return (sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
}

NoiseSpec NoiseSpec::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail("SchemaError", std::string("noise spec: ") + e.what());
  }
  NoiseSpec ns;
  if (j.contains("channels")) {
    for (auto it = j["channels"].begin(); it != j["channels"].end(); ++it) {
      ChannelCfg cfg;
      cfg.kind = it.value().value("kind", "depolarizing");
      if (it.value().contains("p"))
        cfg.param = it.value()["p"].get<double>();
      else if (it.value().contains("gamma"))
        cfg.param = it.value()["gamma"].get<double>();
      else if (it.value().contains("param"))
        cfg.param = it.value()["param"].get<double>();
      ns.channels[it.key()] = cfg;
    }
  }
  ns.idle = j.value("idle", false);
  ns.t2_us = j.value("t2_us", 40.0);
  ns.idle_gate_ns = j.value("idle_gate_ns", 50.0);
  return ns;
}

NoiseSpec NoiseSpec::default_depolarizing(double p2q, double p1q) {
  NoiseSpec ns;
  ns.channels["2q"] = {"depolarizing", p2q};
  ns.channels["1q"] = {"depolarizing", p1q};
  return ns;
}

namespace {

// column -> (row, value); row < 0 marks a structurally zero column
struct MonomialOp {
  std::vector<long> row;
  std::vector<cd> val;
  bool ok = false;
};

MonomialOp to_monomial(const Eigen::MatrixXcd& u) {
  MonomialOp m;
  long n = u.cols();
  m.row.assign(static_cast<size_t>(n), -1);
  m.val.assign(static_cast<size_t>(n), cd(0.0, 0.0));
  for (long c = 0; c < n; ++c) {
    for (long r = 0; r < n; ++r) {
      if (std::abs(u(r, c)) > 0.0) {
        if (m.row[static_cast<size_t>(c)] >= 0) return m;  // second nonzero
        m.row[static_cast<size_t>(c)] = r;
        m.val[static_cast<size_t>(c)] = u(r, c);
      }
    }
  }
  m.ok = true;
  return m;
}

struct SimOp {
  std::vector<int> wires;
  Eigen::MatrixXcd u;       // dense form; may be empty for wide gates
  std::string cls;          // "1q", "2q", "measure"
  MonomialOp mono;          // set directly for wide controlled permutations
  bool mono_set = false;
};

std::string class_of_arity(int arity) { return arity == 1 ? "1q" : "2q"; }

void lower_circuit(const Circuit& c, std::vector<SimOp>& ops) {
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::AGGREGATE) {
      const Circuit& sub = c.subcircuits[static_cast<size_t>(g.subcircuit)];
      std::vector<SimOp> inner;
      lower_circuit(sub, inner);
      for (SimOp& op : inner) {
        for (int& w : op.wires) w = g.wires[static_cast<size_t>(w)];
        ops.push_back(std::move(op));
      }
      continue;
    }
    SimOp op;
    op.wires = g.wires;
    op.u = gate_unitary(g, 2);
    op.cls = g.kind == GateKind::MEASURE ? "measure"
                                         : class_of_arity(g.arity());
    ops.push_back(std::move(op));
  }
}

// Direct monomial form of a controlled permutation over the gate's local
// index space; avoids dense matrices for gates with many controls.
MonomialOp monomial_of_gate(const QutritGate& g) {
  MonomialOp m;
  if (g.action == TritAction::U01) return m;  // not a permutation
  Eigen::Matrix3cd a = action_matrix(g.action, g.u01);
  int perm[3];
  for (int col = 0; col < 3; ++col)
    for (int r = 0; r < 3; ++r)
      if (std::abs(a(r, col)) > 0.0) perm[col] = r;
  long n = 1;
  for (int i = 0; i <= g.n_controls(); ++i) n *= 3;
  m.row.resize(static_cast<size_t>(n));
  m.val.assign(static_cast<size_t>(n), cd(1.0, 0.0));
  for (long col = 0; col < n; ++col) {
    long rem = col;
    int tdig = static_cast<int>(rem % 3);
    rem /= 3;
    bool active = true;
    for (int i = g.n_controls() - 1; i >= 0; --i) {
      int cdig = static_cast<int>(rem % 3);
      rem /= 3;
      if (cdig != g.controls[static_cast<size_t>(i)].second) active = false;
    }
    m.row[static_cast<size_t>(col)] =
        active ? col - tdig + perm[tdig] : col;
  }
  m.ok = true;
  return m;
}

void lower_circuit(const QutritCircuit& c, std::vector<SimOp>& ops) {
  for (const QutritGate& g : c.gates) {
    SimOp op;
    op.wires = g.wires();
    if (op.wires.size() <= 4) {
      op.u = gate_matrix(g);
    } else {
      op.mono = monomial_of_gate(g);
      if (!op.mono.ok)
        fail("TooLarge", "wide qutrit gates must be permutations");
      op.mono_set = true;
    }
    op.cls = class_of_arity(static_cast<int>(op.wires.size()));
    ops.push_back(std::move(op));
  }
}

struct SplitMix64 {
  std::uint64_t s;
  explicit SplitMix64(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

struct ChannelSet {
  // instantiated channels per dimension (index 2 or 3)
  std::map<std::pair<std::string, int>, NoiseChannel> by_class_dim;
  const NoiseChannel* get(const std::string& cls, int d) const {
    auto it = by_class_dim.find({cls, d});
    return it == by_class_dim.end() ? nullptr : &it->second;
  }
};

NoiseChannel instantiate(const NoiseSpec::ChannelCfg& cfg, int d) {
  if (cfg.kind == "depolarizing") return NoiseChannel::depolarizing(d, cfg.param);
  if (cfg.kind == "dephasing") return NoiseChannel::dephasing(d, cfg.param);
  if (cfg.kind == "amplitude_damping")
    return NoiseChannel::amplitude_damping(d, cfg.param);
  fail("SchemaError", "unknown channel kind '" + cfg.kind + "'");
}

ChannelSet build_channels(const NoiseSpec& ns, const std::vector<int>& dims) {
  ChannelSet set;
  std::vector<int> used;
  for (int d : dims)
    if (std::find(used.begin(), used.end(), d) == used.end()) used.push_back(d);
  for (const auto& [cls, cfg] : ns.channels)
    for (int d : used) set.by_class_dim.insert({{cls, d}, instantiate(cfg, d)});
  if (ns.idle)
    for (int d : used)
      set.by_class_dim.insert(
          {{"idle", d},
           NoiseChannel::idle_decoherence(d, ns.t2_us, ns.idle_gate_ns)});
  return set;
}

// Sparse trajectory engine: valid when every op and every Kraus operator is
// monomial (at most one nonzero per column). Basis states then stay basis
// states and a trajectory is a walk over (index, phase).
struct SparseTables {
  std::vector<MonomialOp> ops;                       // per SimOp
  // per (class,dim): kraus[k] as monomial ops
  std::map<std::pair<std::string, int>, std::vector<MonomialOp>> kraus;
  bool ok = false;
};

SparseTables build_sparse(const std::vector<SimOp>& ops, const ChannelSet& cs) {
  SparseTables t;
  for (const SimOp& op : ops) {
    MonomialOp m = op.mono_set ? op.mono : to_monomial(op.u);
    if (!m.ok) return t;
    t.ops.push_back(std::move(m));
  }
  for (const auto& [key, ch] : cs.by_class_dim) {
    std::vector<MonomialOp> ks;
    for (const auto& k : ch.kraus) {
      MonomialOp m = to_monomial(k);
      if (!m.ok) return t;
      ks.push_back(std::move(m));
    }
    t.kraus[key] = std::move(ks);
  }
  t.ok = true;
  return t;
}

struct TrajectoryContext {
  std::vector<int> dims;
  std::vector<long> strides;
  std::vector<SimOp> ops;
  ChannelSet channels;
  SparseTables sparse;
  bool idle = false;
};

// one wire's digit within a global index
inline int digit_at(long index, long stride, int d) {
  return static_cast<int>((index / stride) % d);
}

void sample_kraus_sparse(long& index, const std::vector<MonomialOp>& ks,
                         long stride, int d, SplitMix64& rng) {
  int v = digit_at(index, stride, d);
  double u = rng.uniform();
  double acc = 0.0;
  size_t pick = ks.size() - 1;
  for (size_t k = 0; k < ks.size(); ++k) {
    long r = ks[k].row[static_cast<size_t>(v)];
    if (r < 0) continue;
    acc += std::norm(ks[k].val[static_cast<size_t>(v)]);
    if (u < acc) {
      pick = k;
      break;
    }
  }
  long r = ks[pick].row[static_cast<size_t>(v)];
  if (r < 0) return;  // numerically unreachable; keep state
  index += (r - v) * stride;
}

long run_sparse_trajectory(const TrajectoryContext& ctx, long start,
                           SplitMix64& rng) {
  long idx = start;
  for (size_t i = 0; i < ctx.ops.size(); ++i) {
    const SimOp& op = ctx.ops[i];
    const MonomialOp& m = ctx.sparse.ops[i];
    // local index of the op's wires
    long local = 0;
    for (int w : op.wires)
      local = local * ctx.dims[static_cast<size_t>(w)] +
              digit_at(idx, ctx.strides[static_cast<size_t>(w)],
                       ctx.dims[static_cast<size_t>(w)]);
    long nlocal = m.row[static_cast<size_t>(local)];
    // scatter the new local digits back
    for (int k = static_cast<int>(op.wires.size()) - 1; k >= 0; --k) {
      int w = op.wires[static_cast<size_t>(k)];
      int d = ctx.dims[static_cast<size_t>(w)];
      int oldd = digit_at(idx, ctx.strides[static_cast<size_t>(w)], d);
      int newd = static_cast<int>(nlocal % d);
      nlocal /= d;
      idx += static_cast<long>(newd - oldd) * ctx.strides[static_cast<size_t>(w)];
    }
    for (int w : op.wires) {
      int d = ctx.dims[static_cast<size_t>(w)];
      auto it = ctx.sparse.kraus.find({op.cls, d});
      if (it != ctx.sparse.kraus.end())
        sample_kraus_sparse(idx, it->second, ctx.strides[static_cast<size_t>(w)], d, rng);
      if (ctx.idle) {
        auto ii = ctx.sparse.kraus.find({"idle", d});
        if (ii != ctx.sparse.kraus.end())
          sample_kraus_sparse(idx, ii->second, ctx.strides[static_cast<size_t>(w)], d, rng);
      }
    }
  }
  return idx;
}

void sample_kraus_dense(QuditState& s, const NoiseChannel& ch, int wire,
                        SplitMix64& rng) {
  double u = rng.uniform();
  double acc = 0.0;
  for (size_t k = 0; k < ch.kraus.size(); ++k) {
    QuditState trial = s;
    apply_unitary(trial, ch.kraus[k], {wire});
    double p = trial.amp.squaredNorm();
    acc += p;
    if (u < acc || k + 1 == ch.kraus.size()) {
      if (p > 1e-300) trial.amp /= std::sqrt(p);
      s = std::move(trial);
      return;
    }
  }
}

void run_dense_trajectory(const TrajectoryContext& ctx, QuditState& s,
                          SplitMix64& rng) {
  for (const SimOp& op : ctx.ops) {
    apply_unitary(s, op.u, op.wires);
    for (int w : op.wires) {
      int d = ctx.dims[static_cast<size_t>(w)];
      if (const NoiseChannel* ch = ctx.channels.get(op.cls, d))
        sample_kraus_dense(s, *ch, w, rng);
      if (ctx.idle)
        if (const NoiseChannel* ch = ctx.channels.get("idle", d))
          sample_kraus_dense(s, *ch, w, rng);
    }
  }
}

FidelityEstimate estimate_from_ops(TrajectoryContext ctx, long trajectories,
                                   std::uint64_t seed,
                                   const std::vector<int>* initial_digits,
                                   long cap) {
  if (trajectories < 1) fail("RangeError", "need at least one trajectory");
  // the sparse walk never materializes the state, so the dimension cap
  // only applies to the dense fallback
  long dim = ctx.sparse.ok ? 0 : dims_product(ctx.dims, cap);
  ctx.strides = strides_of(ctx.dims);
  std::vector<int> digits(ctx.dims.size(), 0);
  if (initial_digits) digits = *initial_digits;
  long start = basis_index(ctx.dims, digits);

  double sum = 0.0, sumsq = 0.0;
  if (ctx.sparse.ok) {
    // ideal walk (phases are irrelevant to |<ideal|noisy>|^2 here: both
    // states stay basis states)
    long ideal = start;
    {
      SplitMix64 dummy(0);
      TrajectoryContext noiseless = ctx;
      noiseless.sparse.kraus.clear();
      noiseless.idle = false;
      ideal = run_sparse_trajectory(noiseless, start, dummy);
    }
    for (long t = 0; t < trajectories; ++t) {
      SplitMix64 rng(seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL * (std::uint64_t)(t + 1));
      long got = run_sparse_trajectory(ctx, start, rng);
      double f = (got == ideal) ? 1.0 : 0.0;
      sum += f;
      sumsq += f * f;
    }
  } else {
    if (dim > (1L << 12))
      fail("TooLarge", "dense trajectory path capped at 4096 amplitudes");
    for (const SimOp& op : ctx.ops)
      if (op.mono_set)
        fail("TooLarge", "wide gates need the sparse trajectory path");
    QuditState ideal = QuditState::basis(ctx.dims, digits);
    for (const SimOp& op : ctx.ops) apply_unitary(ideal, op.u, op.wires);
    for (long t = 0; t < trajectories; ++t) {
      SplitMix64 rng(seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL * (std::uint64_t)(t + 1));
      QuditState s = QuditState::basis(ctx.dims, digits);
      run_dense_trajectory(ctx, s, rng);
      double f = states_fidelity(ideal, s);
      sum += f;
      sumsq += f * f;
    }
  }
  FidelityEstimate est;
  est.trajectories = trajectories;
  est.mean = sum / trajectories;
  double var = (sumsq - sum * sum / trajectories) / std::max<long>(1, trajectories - 1);
  est.stderr_ = std::sqrt(std::max(0.0, var) / trajectories);
  return est;
}

TrajectoryContext make_context(const std::vector<int>& dims,
                               const std::vector<SimOp>& ops,
                               const NoiseSpec& ns) {
  TrajectoryContext ctx;
  ctx.dims = dims;
  ctx.ops = ops;
  ctx.channels = build_channels(ns, dims);
  ctx.sparse = build_sparse(ctx.ops, ctx.channels);
  ctx.idle = ns.idle;
  return ctx;
}

}  // namespace

FidelityEstimate simulate_noisy(const Circuit& c, const NoiseSpec& ns,
                                long trajectories, std::uint64_t seed,
                                const std::vector<int>* initial_digits,
                                long cap) {
  std::vector<SimOp> ops;
  lower_circuit(c, ops);
  return estimate_from_ops(make_context(c.wire_dim, ops, ns), trajectories,
                           seed, initial_digits, cap);
}

FidelityEstimate simulate_noisy(const QutritCircuit& c, const NoiseSpec& ns,
                                long trajectories, std::uint64_t seed,
                                const std::vector<int>* initial_digits,
                                long cap) {
  std::vector<SimOp> ops;
  lower_circuit(c, ops);
  std::vector<int> dims(static_cast<size_t>(c.n_wires), 3);
  return estimate_from_ops(make_context(dims, ops, ns), trajectories, seed,
                           initial_digits, cap);
}

namespace {

Eigen::MatrixXcd embed_one_wire(const Eigen::MatrixXcd& k, int wire,
                                const std::vector<int>& dims) {
  long n = dims_product(dims);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  auto st = strides_of(dims);
  int d = dims[static_cast<size_t>(wire)];
  for (long c = 0; c < n; ++c) {
    int v = digit_at(c, st[static_cast<size_t>(wire)], d);
    for (int r = 0; r < d; ++r) {
      if (std::abs(k(r, v)) > 0.0)
        out(c + (r - v) * st[static_cast<size_t>(wire)], c) = k(r, v);
    }
  }
  return out;
}

double density_fidelity_ops(const std::vector<int>& dims,
                            const std::vector<SimOp>& ops, const NoiseSpec& ns,
                            const std::vector<int>* initial_digits) {
  if (dims.size() > 3) fail("TooLarge", "density-matrix oracle capped at 3 wires");
  long n = dims_product(dims);
  std::vector<int> digits(dims.size(), 0);
  if (initial_digits) digits = *initial_digits;
  QuditState ideal = QuditState::basis(dims, digits);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  rho(basis_index(dims, digits), basis_index(dims, digits)) = 1.0;
  ChannelSet cs = build_channels(ns, dims);
  for (const SimOp& op : ops) {
    apply_unitary(ideal, op.u, op.wires);
    // embed the op over the full register
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(n, n);
    {
      QuditState col;
      col.dims = dims;
      for (long c0 = 0; c0 < n; ++c0) {
        col.amp = full.col(c0);
        apply_unitary(col, op.u, op.wires);
        full.col(c0) = col.amp;
      }
    }
    rho = full * rho * full.adjoint();
    for (int w : op.wires) {
      int d = dims[static_cast<size_t>(w)];
      auto apply_channel = [&](const NoiseChannel& ch) {
        Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(n, n);
        for (const auto& k : ch.kraus) {
          Eigen::MatrixXcd ke = embed_one_wire(k, w, dims);
          next += ke * rho * ke.adjoint();
        }
        rho = next;
      };
      if (const NoiseChannel* ch = cs.get(op.cls, d)) apply_channel(*ch);
      if (ns.idle)
        if (const NoiseChannel* ch = cs.get("idle", d)) apply_channel(*ch);
    }
  }
  return std::real(ideal.amp.dot(rho * ideal.amp));
}

}  // namespace

double density_matrix_fidelity(const Circuit& c, const NoiseSpec& ns,
                               const std::vector<int>* initial_digits) {
  std::vector<SimOp> ops;
  lower_circuit(c, ops);
  return density_fidelity_ops(c.wire_dim, ops, ns, initial_digits);
}

double density_matrix_fidelity(const QutritCircuit& c, const NoiseSpec& ns,
                               const std::vector<int>* initial_digits) {
  std::vector<SimOp> ops;
  lower_circuit(c, ops);
  std::vector<int> dims(static_cast<size_t>(c.n_wires), 3);
  return density_fidelity_ops(dims, ops, ns, initial_digits);
}

}  // namespace qct

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

#include "qct/pulse.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "json.hpp"
#include "qct/sim.hpp"

namespace qct {

using cd = std::complex<double>;

void ControlProblem::validate() const {
  long d = h_drift.rows();
  auto hermitian = [](const Eigen::MatrixXcd& h) {
    return (h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12;
  };
  if (h_drift.cols() != d || u_target.rows() != d || u_target.cols() != d)
    fail("ShapeMismatch", "drift/target dimensions disagree");
  if (!hermitian(h_drift)) fail("ShapeMismatch", "drift not Hermitian");
  for (const auto& h : h_controls) {
    if (h.rows() != d || h.cols() != d)
      fail("ShapeMismatch", "control dimension disagrees");
    if (!hermitian(h)) fail("ShapeMismatch", "control not Hermitian");
  }
  if (!(t_ns > 0.0) || n_steps < 1)
    fail("ShapeMismatch", "need positive duration and steps");
}

namespace {

struct StepEig {
  Eigen::MatrixXcd v;
  Eigen::VectorXd lam;
  Eigen::MatrixXcd u;  // exp(-i dt H)
};

StepEig step_propagator(const ControlProblem& p, const PulseSequence& u,
                        int k) {
  Eigen::MatrixXcd h = p.h_drift;
  for (size_t j = 0; j < p.h_controls.size(); ++j)
    h += u.amps(static_cast<Eigen::Index>(j), k) * p.h_controls[j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  StepEig se;
  se.v = es.eigenvectors();
  se.lam = es.eigenvalues();
  Eigen::VectorXcd ph(se.lam.size());
  for (Eigen::Index i = 0; i < se.lam.size(); ++i)
    ph(i) = std::exp(cd(0.0, -p.dt() * se.lam(i)));
  se.u = se.v * ph.asDiagonal() * se.v.adjoint();
  return se;
}

void check_shapes(const ControlProblem& p, const PulseSequence& u) {
  p.validate();
  if (u.amps.rows() != static_cast<Eigen::Index>(p.h_controls.size()) ||
      u.amps.cols() != p.n_steps)
    fail("ShapeMismatch", "amplitude matrix shape");
}

}  // namespace

Eigen::MatrixXcd propagate(const ControlProblem& p, const PulseSequence& u) {
  check_shapes(p, u);
  long d = p.h_drift.rows();
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(d, d);
  for (int k = 0; k < p.n_steps; ++k) total = step_propagator(p, u, k).u * total;
  return total;
}

double gate_fidelity(const Eigen::MatrixXcd& u,
                     const Eigen::MatrixXcd& u_target) {
  if (u.rows() != u_target.rows() || u.cols() != u_target.cols())
    fail("DimensionMismatch", "fidelity needs equal dimensions");
  double d = static_cast<double>(u.rows());
  return std::norm((u_target.adjoint() * u).trace()) / (d * d);
}

Eigen::MatrixXd grape_gradient(const ControlProblem& p,
                               const PulseSequence& u) {
  check_shapes(p, u);
  long d = p.h_drift.rows();
  int m = p.n_steps;
  int nc = static_cast<int>(p.h_controls.size());
  std::vector<StepEig> steps;
  steps.reserve(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) steps.push_back(step_propagator(p, u, k));
  // prefix[k] = U_k ... U_1, suffix[k] = U_M ... U_{k+2}
  std::vector<Eigen::MatrixXcd> prefix(static_cast<size_t>(m) + 1);
  prefix[0] = Eigen::MatrixXcd::Identity(d, d);
  for (int k = 0; k < m; ++k)
    prefix[static_cast<size_t>(k) + 1] = steps[static_cast<size_t>(k)].u *
                                         prefix[static_cast<size_t>(k)];
  std::vector<Eigen::MatrixXcd> suffix(static_cast<size_t>(m) + 1);
  suffix[static_cast<size_t>(m)] = Eigen::MatrixXcd::Identity(d, d);
  for (int k = m - 1; k >= 0; --k)
    suffix[static_cast<size_t>(k)] = suffix[static_cast<size_t>(k) + 1] *
                                     steps[static_cast<size_t>(k)].u;
  cd a = (p.u_target.adjoint() * prefix[static_cast<size_t>(m)]).trace();
  double dd = static_cast<double>(d);
  Eigen::MatrixXd grad(nc, m);
  const double dt = p.dt();
  for (int k = 0; k < m; ++k) {
    const StepEig& se = steps[static_cast<size_t>(k)];
    // divided differences of exp(-i dt x) at the step eigenvalues
    Eigen::MatrixXcd gamma(d, d);
    for (long pq = 0; pq < d; ++pq)
      for (long q = 0; q < d; ++q) {
        double lp = se.lam(pq), lq = se.lam(q);
        cd fp = std::exp(cd(0.0, -dt * lp));
        if (std::abs(lp - lq) < 1e-12) {
          gamma(pq, q) = cd(0.0, -dt) * fp;
        } else {
          cd fq = std::exp(cd(0.0, -dt * lq));
          gamma(pq, q) = (fp - fq) / (lp - lq);
        }
      }
    for (int j = 0; j < nc; ++j) {
      Eigen::MatrixXcd hj_eig = se.v.adjoint() * p.h_controls[static_cast<size_t>(j)] * se.v;
      Eigen::MatrixXcd du = se.v * gamma.cwiseProduct(hj_eig) * se.v.adjoint();
      cd da = (p.u_target.adjoint() * suffix[static_cast<size_t>(k) + 1] * du *
               prefix[static_cast<size_t>(k)])
                  .trace();
      grad(j, k) = 2.0 * std::real(std::conj(a) * da) / (dd * dd);
    }
  }
  return grad;
}

GrapeResult grape_optimize(const ControlProblem& p, const PulseSequence& u0,
                           const GrapeConfig& cfg, std::uint64_t seed) {
  p.validate();
  int nc = static_cast<int>(p.h_controls.size());
  PulseSequence u = u0;
  u.dt = p.dt();
  if (u.amps.size() == 0) {
    std::mt19937_64 rng(seed + 1);
    std::uniform_real_distribution<double> amp(-0.1 * cfg.u_max,
                                               0.1 * cfg.u_max);
    u.amps.resize(nc, p.n_steps);
    for (int j = 0; j < nc; ++j)
      for (int k = 0; k < p.n_steps; ++k) u.amps(j, k) = amp(rng);
  }
  auto clip = [&](Eigen::MatrixXd m) {
    return m.cwiseMax(-cfg.u_max).cwiseMin(cfg.u_max);
  };
  u.amps = clip(u.amps);
  GrapeResult res;
  res.pulse = u;
  res.fidelity = gate_fidelity(propagate(p, u), p.u_target);
  double lr = cfg.learning_rate;
  for (int it = 0; it < cfg.max_iters; ++it) {
    if (res.fidelity >= cfg.fidelity_target) {
      res.converged = true;
      break;
    }
    Eigen::MatrixXd g = grape_gradient(p, res.pulse);
    if (g.cwiseAbs().maxCoeff() < cfg.gradient_tolerance) break;
    bool accepted = false;
    for (int bt = 0; bt < 40 && !accepted; ++bt) {
      PulseSequence trial = res.pulse;
      trial.amps = clip(res.pulse.amps + lr * g);
      double f = gate_fidelity(propagate(p, trial), p.u_target);
      if (f > res.fidelity) {
        res.pulse = trial;
        res.fidelity = f;
        lr *= 1.5;
        accepted = true;
      } else {
        lr *= 0.5;
      }
    }
    res.iterations = it + 1;
    if (!accepted) break;  // line search exhausted: local optimum
  }
  if (res.fidelity >= cfg.fidelity_target) res.converged = true;
  return res;
}

HamiltonianSpec HamiltonianSpec::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail("SchemaError", std::string("hamiltonian spec: ") + e.what());
  }
  HamiltonianSpec hw;
  hw.n_qubits = j.value("n_qubits", 1);
  hw.drive_strength = j.value("drive_strength", 1.0);
  hw.coupling_strength = j.value("coupling_strength", 0.25);
  if (hw.n_qubits < 1 || hw.n_qubits > 3)
    fail("BlockTooLarge", "hamiltonian spec limited to 1..3 qubits");
  return hw;
}

namespace {

Eigen::MatrixXcd embed_1q(const Eigen::Matrix2cd& op, int q, int n) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd factor =
        (i == q) ? Eigen::MatrixXcd(op) : Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c2 = 0; c2 < out.cols(); ++c2)
        next.block(r * 2, c2 * 2, 2, 2) = out(r, c2) * factor;
    out = next;
  }
  return out;
}

}  // namespace

ControlProblem make_control_problem(const HamiltonianSpec& hw,
                                    const Eigen::MatrixXcd& u_target,
                                    double t_ns, int n_steps) {
  if (hw.n_qubits > 3) fail("BlockTooLarge", "pulse systems capped at 3 qubits");
  long d = 1L << hw.n_qubits;
  if (u_target.rows() != d || u_target.cols() != d)
    fail("ShapeMismatch", "target dimension vs qubit count");
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, cd(0, -1), cd(0, 1), 0;
  sz << 1, 0, 0, -1;
  ControlProblem p;
  p.h_drift = Eigen::MatrixXcd::Zero(d, d);
  for (int q = 0; q + 1 < hw.n_qubits; ++q)
    p.h_drift += 0.5 * hw.coupling_strength *
                 (embed_1q(sz, q, hw.n_qubits) *
                  embed_1q(sz, q + 1, hw.n_qubits));
  for (int q = 0; q < hw.n_qubits; ++q) {
    p.h_controls.push_back(0.5 * hw.drive_strength *
                           embed_1q(sx, q, hw.n_qubits));
    p.h_controls.push_back(0.5 * hw.drive_strength *
                           embed_1q(sy, q, hw.n_qubits));
  }
  p.t_ns = t_ns;
  p.n_steps = n_steps;
  p.u_target = u_target;
  return p;
}

namespace {

int steps_for(double t_ns) {
  int s = static_cast<int>(std::lround(t_ns));
  return std::max(10, std::min(48, s));
}

Eigen::MatrixXd resample(const Eigen::MatrixXd& amps, int n_steps) {
  Eigen::MatrixXd out(amps.rows(), n_steps);
  for (int k = 0; k < n_steps; ++k) {
    int src = static_cast<int>(static_cast<long>(k) * amps.cols() / n_steps);
    out.col(k) = amps.col(src);
  }
  return out;
}

}  // namespace

DurationResult minimal_duration(const HamiltonianSpec& hw,
                                const Eigen::MatrixXcd& u_target,
                                const GrapeConfig& cfg, double t_max_ns) {
  Eigen::MatrixXd warm;
  auto probe = [&](double t) -> GrapeResult {
    ControlProblem p = make_control_problem(hw, u_target, t, steps_for(t));
    GrapeResult best;
    for (std::uint64_t s = 1; s <= 3; ++s) {
      PulseSequence u0;
      u0.dt = p.dt();
      if (s == 1 && warm.size() > 0)
        u0.amps = resample(warm, p.n_steps)
                      .cwiseMax(-cfg.u_max)
                      .cwiseMin(cfg.u_max);
      GrapeResult r = grape_optimize(p, u0, cfg, s);
      if (r.fidelity > best.fidelity) best = r;
      if (best.converged) break;
    }
    return best;
  };
  // doubling scan for the first feasible duration
  double hi = -1.0;
  GrapeResult hi_res;
  for (double t = 1.0; t <= t_max_ns; t = std::max(t * 2.0, t + 1.0)) {
    GrapeResult r = probe(t);
    if (r.converged) {
      hi = t;
      hi_res = r;
      warm = r.pulse.amps;
      break;
    }
  }
  if (hi < 0.0) fail("NotConverged", "no duration reached the target fidelity");
  double lo = hi / 2.0;
  if (hi <= 1.0) lo = 0.0;
  while (hi - lo > 1.0) {
    double mid = std::floor((lo + hi) / 2.0);
    GrapeResult r = probe(mid);
    if (r.converged) {
      hi = mid;
      hi_res = r;
      warm = r.pulse.amps;
    } else {
      lo = mid;
    }
  }
  DurationResult out;
  out.t_ns = hi;
  out.best = hi_res;
  return out;
}

std::vector<BlockPulse> aggregate_and_optimize(const Circuit& c,
                                               const HamiltonianSpec& hw,
                                               const GrapeConfig& cfg) {
  std::vector<BlockPulse> out;
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    if (g.kind == GateKind::MEASURE) continue;
    if (g.arity() > 3) fail("BlockTooLarge", "pulse blocks capped at 3 wires");
    HamiltonianSpec local = hw;
    local.n_qubits = g.arity();
    Eigen::MatrixXcd target = gate_matrix(c, g);
    DurationResult r = minimal_duration(local, target, cfg);
    BlockPulse bp;
    bp.gate_index = static_cast<int>(i);
    bp.duration_ns = r.t_ns;
    bp.fidelity = r.best.fidelity;
    bp.pulse = r.best.pulse;
    out.push_back(std::move(bp));
  }
  return out;
}

std::string pulse_to_csv(const PulseSequence& p) {
  std::ostringstream out;
  out << "control_index,step,amplitude\n";
  for (Eigen::Index j = 0; j < p.amps.rows(); ++j)
    for (Eigen::Index k = 0; k < p.amps.cols(); ++k)
      out << j << "," << k << "," << p.amps(j, k) << "\n";
  return out.str();
}

}  // namespace qct

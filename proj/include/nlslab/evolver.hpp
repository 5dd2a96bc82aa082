#pragma once

// Interaction-picture RK4 integrator for the truncated Wick-ordered equation
//   i du/dt + Lap u = Pi_N W^p(u)
// and the plain band-limited equation of the long-time experiment, plus the
// deviation from the gauged linear flow.

#include "wickgauge.hpp"

namespace nlslab {

namespace detail {

// d/dt of w_k = e^{it|k|^2} u_k:  w' = -i e^{it|k|^2} (P W^p(u))_k, where P is
// Pi_N for the truncated system and the box band-limit otherwise.
template <class Real>
inline void evolveRhs(GridEngine<Real>& eng, const SolverConfig& cfg, const LatticeField& tmplF,
                      const std::vector<double>& qk, double t, const std::vector<cplx>& w,
                      std::vector<cplx>& dw) {
  LatticeField u(tmplF.d, tmplF.K);
  for (std::size_t i = 0; i < w.size(); ++i)
    u.a[i] = std::polar(1.0, -t * qk[i]) * w[i];
  double sigma = cfg.wick ? cfg.sigma : 0.0;
  LatticeField F = wickNonlinearity(eng, u, cfg.p, sigma, cfg.wick ? cfg.N : 0);
  dw.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    dw[i] = cplx(0, -1) * std::polar(1.0, t * qk[i]) * F.a[i];
}

template <class Real>
inline LatticeField rk4Run(GridEngine<Real>& eng, const SolverConfig& cfg,
                           const LatticeField& f0, double dt, long nSteps,
                           Trajectory* traj) {
  std::vector<double> qk(f0.a.size());
  f0.forEach([&](const KVec& k) { qk[f0.idx(k)] = (double)normSq(k); });

  std::vector<cplx> w = f0.a;  // at t=0, w == u
  std::vector<cplx> k1, k2, k3, k4, tmp(w.size());

  auto record = [&](double t) {
    if (!traj) return;
    LatticeField u(f0.d, f0.K);
    for (std::size_t i = 0; i < w.size(); ++i)
      u.a[i] = std::polar(1.0, -t * qk[i]) * w[i];
    double mass = massOf(u);
    if (!std::isfinite(mass)) throw std::runtime_error("evolver diverged (non-finite mass)");
    traj->times.push_back(t);
    traj->snapshots.push_back(std::move(u));
    traj->massLedger.push_back(mass);
  };

  record(0.0);
  for (long n = 0; n < nSteps; ++n) {
    double t = n * dt;
    evolveRhs(eng, cfg, f0, qk, t, w, k1);
    for (std::size_t i = 0; i < w.size(); ++i) tmp[i] = w[i] + 0.5 * dt * k1[i];
    evolveRhs(eng, cfg, f0, qk, t + 0.5 * dt, tmp, k2);
    for (std::size_t i = 0; i < w.size(); ++i) tmp[i] = w[i] + 0.5 * dt * k2[i];
    evolveRhs(eng, cfg, f0, qk, t + 0.5 * dt, tmp, k3);
    for (std::size_t i = 0; i < w.size(); ++i) tmp[i] = w[i] + dt * k3[i];
    evolveRhs(eng, cfg, f0, qk, t + dt, tmp, k4);
    for (std::size_t i = 0; i < w.size(); ++i)
      w[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if ((n + 1) % cfg.snapshotStride == 0 || n + 1 == nSteps) record((n + 1) * dt);
  }

  LatticeField uFinal(f0.d, f0.K);
  double tFinal = nSteps * dt;
  for (std::size_t i = 0; i < w.size(); ++i)
    uFinal.a[i] = std::polar(1.0, -tFinal * qk[i]) * w[i];
  return uFinal;
}

}  // namespace detail

template <class Real = double>
inline Trajectory evolve(GridEngine<Real>& eng, const SolverConfig& cfg,
                         const LatticeField& f0) {
  cfg.validate();
  if (cfg.wick) {
    LatticeField proj = project(f0, cfg.N, Proj::Pi);
    for (std::size_t i = 0; i < f0.a.size(); ++i)
      if (f0.a[i] != proj.a[i])
        throw std::invalid_argument("initial data must satisfy f0 = Pi_N f0");
  }
  Trajectory traj;
  traj.config = cfg;
  long nSteps = (long)std::llround(std::ceil(cfg.tau / cfg.dt - 1e-9));
  LatticeField uFinal = detail::rk4Run(eng, cfg, f0, cfg.dt, nSteps, &traj);
  if (cfg.selfCheck) {
    LatticeField uHalf = detail::rk4Run(eng, cfg, f0, cfg.dt / 2, 2 * nSteps, nullptr);
    double diff = 0, ref = 0;
    for (std::size_t i = 0; i < uFinal.a.size(); ++i) {
      diff += std::norm(uFinal.a[i] - uHalf.a[i]);
      ref += std::norm(uHalf.a[i]);
    }
    traj.selfCheckError = ref > 0 ? std::sqrt(diff / ref) : std::sqrt(diff);
    traj.selfCheckPassed = traj.selfCheckError < cfg.selfCheckTol;
  }
  return traj;
}

// || u(t) - e^{-iB(t)} e^{it Lap} u(0) ||_{H^s} at each snapshot time, with the
// gauge phase B built from the sigma-free degree-(p-1) Wick mean.
template <class Real = double>
inline std::vector<double> gaugedLinearDeviation(GridEngine<Real>& eng, const Trajectory& traj,
                                                 double s) {
  auto B = gaugePhase(eng, traj, traj.config.p, 0.0);
  const LatticeField& u0 = traj.snapshots.front();
  std::vector<double> dev(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    double t = traj.times[i];
    cplx gauge = std::polar(1.0, -B[i]);
    LatticeField diff(u0.d, u0.K);
    diff.forEach([&](const KVec& k) {
      cplx lin = gauge * std::polar(1.0, -t * (double)normSq(k)) * u0.at(k);
      diff.at(k) = traj.snapshots[i].at(k) - lin;
    });
    dev[i] = sobolevNorm(diff, s);
  }
  return dev;
}

}  // namespace nlslab

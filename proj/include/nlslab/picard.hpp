#pragma once

// First Picard iterate under the no-pairing nonlinearity, and the scaling
// study separating deterministic from probabilistic criticality.
//
// The no-pairing sum
//   N_np(f)_k = sum_{k1-k2+...+kp=k} f_{k1} conj(f)_{k2} ... f_{kp}
// excludes tuples with k_i = k_j (i odd, j even) or k_j = k (j odd).  The fast
// path expands the exclusions by inclusion-exclusion over coincidence
// patterns: each pattern merges indices into groups, and the constrained sum
// factors into scalar sums, a pointwise factor, and a convolution of
// frequency-stretched fields, all computable on alias-free grids.

#include <bit>
#include <numeric>

#include "randomdata.hpp"

namespace nlslab {

namespace detail {

struct CoincidenceGroup {
  std::vector<int> members;  // 1-based indices into the tuple; p+1 denotes the output index
  int weight = 0;            // sum of signs (+1 odd position, -1 even) over tuple members
  bool hasOut = false;
};

// Pointwise product prod_{odd m in g} f_m * prod_{even m in g} conj(f_m),
// evaluated at a common lattice point.
inline cplx groupFactor(const CoincidenceGroup& g, const LatticeField& f, const KVec& m) {
  cplx v = 1.0;
  for (int i : g.members) {
    if (i % 2 == 1)
      v *= f.at(m);
    else
      v *= std::conj(f.at(m));
  }
  return v;
}

// Union-find partition of {1..p, out} induced by a subset of coincidence atoms.
inline std::vector<CoincidenceGroup> atomsToGroups(
    int p, const std::vector<std::pair<int, int>>& atoms, unsigned mask) {
  int out = p + 1;
  std::vector<int> parent(out + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < atoms.size(); ++a)
    if (mask & (1u << a)) parent[find(atoms[a].first)] = find(atoms[a].second);
  std::map<int, CoincidenceGroup> byRoot;
  for (int i = 1; i <= out; ++i) {
    auto& g = byRoot[find(i)];
    if (i == out) {
      g.hasOut = true;
    } else {
      g.members.push_back(i);
      g.weight += (i % 2 == 1) ? 1 : -1;
    }
  }
  std::vector<CoincidenceGroup> groups;
  for (auto& [root, g] : byRoot) groups.push_back(std::move(g));
  return groups;
}

inline std::string partitionKey(const std::vector<CoincidenceGroup>& groups) {
  std::vector<std::string> parts;
  for (const auto& g : groups) {
    std::string s = g.hasOut ? "o" : "";
    for (int m : g.members) s += "." + std::to_string(m);
    parts.push_back(s);
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (auto& s : parts) key += s + "|";
  return key;
}

// Constrained sum over tuples whose indices coincide exactly as prescribed by
// the partition (coarser coincidences handled by the surrounding
// inclusion-exclusion).  Output band pK.
template <class Real>
inline LatticeField patternSum(GridEngine<Real>& eng, const LatticeField& f, int p,
                               const std::vector<CoincidenceGroup>& groups) {
  int K = f.K, Kout = p * K;
  cplx scalar = 1.0;
  int outWeight = 0;
  const CoincidenceGroup* outGroup = nullptr;
  std::vector<const CoincidenceGroup*> convGroups;
  for (const auto& g : groups) {
    if (g.hasOut) {
      // A lone output index imposes nothing; only tuple members riding on it
      // contribute a pointwise factor and shift the linear constraint.
      if (!g.members.empty()) {
        outGroup = &g;
        outWeight = g.weight;
      }
    } else if (g.weight == 0) {
      cplx sum = 0;
      f.forEach([&](const KVec& m) { sum += groupFactor(g, f, m); });
      scalar *= sum;
    } else {
      convGroups.push_back(&g);
    }
  }

  LatticeField result(f.d, Kout);
  if (convGroups.empty()) {
    // Pure delta: nonzero only where (1 - outWeight) k = 0.
    forEachK(f.d, Kout, [&](const KVec& k) {
      bool hit = (outWeight == 1) || (k.x == 0 && k.y == 0);
      if (!hit) return;
      cplx v = scalar;
      if (outGroup) {
        if (!f.inBox(k)) return;
        v *= groupFactor(*outGroup, f, k);
      }
      result.at(k) = v;
    });
    return result;
  }

  // Convolution of the stretched group fields, via an alias-free grid.
  int bandSum = 0;
  for (auto* g : convGroups) bandSum += std::abs(g->weight) * K;
  int G = niceGridSize(2 * bandSum + 1);
  std::vector<std::complex<Real>> prod;
  for (auto* g : convGroups) {
    LatticeField stretched(f.d, std::abs(g->weight) * K);
    f.forEach([&](const KVec& m) {
      KVec sm{g->weight * m.x, g->weight * m.y};
      stretched.at(sm) += groupFactor(*g, f, m);
    });
    auto grid = eng.toGrid(stretched, G);
    if (prod.empty()) {
      prod = std::move(grid);
    } else {
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= grid[i];
    }
  }
  LatticeField conv = eng.fromGrid(prod, f.d, G, bandSum);

  forEachK(f.d, Kout, [&](const KVec& k) {
    KVec target{(1 - outWeight) * k.x, (1 - outWeight) * k.y};
    if (!conv.inBox(target)) return;
    cplx v = scalar * conv.at(target);
    if (outGroup) {
      if (!f.inBox(k)) return;
      v *= groupFactor(*outGroup, f, k);
    }
    result.at(k) = v;
  });
  return result;
}

}  // namespace detail

// Fast no-pairing nonlinearity.  p == 3 collapses to the closed form
//   N_np(f)_k = (|f|^2 f)_k - 2 ||f||^2 f_k + |f_k|^2 f_k
// (the output-coincidence exclusions cancel); general odd p goes through the
// inclusion-exclusion over coincidence patterns.  Output band is pK.
template <class Real>
inline LatticeField noPairingNonlinearity(GridEngine<Real>& eng, const LatticeField& f, int p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("degree p must be odd and >= 3");
  int K = f.K;
  if (p == 3) {
    int G = niceGridSize(2 * 3 * K + 1);
    auto grid = eng.toGrid(f, G);
    for (auto& v : grid) {
      double m = std::norm(v);
      v = std::complex<Real>((Real)(m * v.real()), (Real)(m * v.imag()));
    }
    LatticeField out = eng.fromGrid(grid, f.d, G, 3 * K);
    double mass = massOf(f);
    f.forEach([&](const KVec& k) {
      const cplx& c = f.at(k);
      out.at(k) += (std::norm(c) - 2.0 * mass) * c;
    });
    return out;
  }

  // Coincidence atoms: (odd i, even j) pairs and (odd i, out) pairs.
  std::vector<std::pair<int, int>> atoms;
  for (int i = 1; i <= p; i += 2) {
    for (int j = 2; j <= p; j += 2) atoms.push_back({i, j});
    atoms.push_back({i, p + 1});
  }
  // Many atom subsets induce the same coincidence partition; accumulate the
  // signed multiplicity per partition first.
  std::map<std::string, std::pair<double, std::vector<detail::CoincidenceGroup>>> patterns;
  for (unsigned mask = 0; mask < (1u << atoms.size()); ++mask) {
    auto groups = detail::atomsToGroups(p, atoms, mask);
    double sign = (std::popcount(mask) % 2 == 0) ? 1.0 : -1.0;
    auto key = detail::partitionKey(groups);
    auto it = patterns.find(key);
    if (it == patterns.end())
      patterns.emplace(key, std::make_pair(sign, std::move(groups)));
    else
      it->second.first += sign;
  }
  LatticeField out(f.d, p * K);
  for (auto& [key, entry] : patterns) {
    if (entry.first == 0.0) continue;
    LatticeField term = detail::patternSum(eng, f, p, entry.second);
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += entry.first * term.a[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// First Picard iterate from shell data.

struct IterateSpec {
  int d = 1;
  int p = 3;
  long N = 8;              // data shell N/2 < |k| <= N (Euclidean)
  bool randomData = true;  // false: deterministic all-equal amplitudes
  double t = 1.0;
  double s = 0.0;          // target Sobolev index for norms
  double alpha = 0.5;      // amplitude N^{-alpha}; alpha = s + d/2 in the study
  std::uint64_t seed = 1;

  void validate() const {
    if (d < 1 || d > 2) throw std::invalid_argument("dimension must be 1 or 2");
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("degree p must be odd and >= 3");
    if (t <= 0) throw std::invalid_argument("evaluation time must be positive");
    requireDyadic(N, "shell frequency N");
  }
};

// Data supported on the Euclidean shell N/2 < |k| <= N with flat amplitude
// N^{-alpha}, Gaussian-modulated in the random case.
inline LatticeField shellData(const IterateSpec& spec) {
  spec.validate();
  LatticeField f(spec.d, (int)spec.N);
  double amp = std::pow((double)spec.N, -spec.alpha);
  double loSq = (double)spec.N * spec.N / 4.0, hiSq = (double)spec.N * spec.N;
  f.forEach([&](const KVec& k) {
    double q = (double)normSq(k);
    if (q > loSq && q <= hiSq)
      f.at(k) = spec.randomData ? amp * complexGaussian(spec.seed, kDataTag, k) : cplx(amp, 0);
  });
  return f;
}

// Duhamel time factor int_0^t e^{i t' w} dt' in closed form.
inline cplx oscillatoryIntegral(double w, double t) {
  if (w == 0.0) return {t, 0};
  return (std::polar(1.0, t * w) - 1.0) / cplx(0, w);
}

// Resonance factor |k|^2 - sum_j zeta_j |k_j|^2 for the alternating signs.
inline double resonanceFactor(const KVec& k, const std::vector<KVec>& tuple) {
  double w = (double)normSq(k);
  for (std::size_t j = 0; j < tuple.size(); ++j)
    w -= (j % 2 == 0 ? 1.0 : -1.0) * (double)normSq(tuple[j]);
  return w;
}

// Brute-force oracle: explicit tuple sum with the closed-form time factor.
inline LatticeField firstIterateBrute(const IterateSpec& spec) {
  LatticeField f = shellData(spec);
  std::vector<std::pair<KVec, cplx>> support;
  f.forEach([&](const KVec& k) {
    if (f.at(k) != cplx(0)) support.push_back({k, f.at(k)});
  });
  int p = spec.p;
  LatticeField out(spec.d, p * f.K);

  std::vector<KVec> tuple(p);
  std::function<void(int, KVec, cplx)> rec = [&](int j, KVec partial, cplx coeff) {
    if (j == p) {
      const KVec& k = partial;
      for (int i = 0; i < p; i += 2)
        if (tuple[i] == k) return;  // output coincidence at an odd position
      double w = resonanceFactor(k, tuple);
      out.at(k) += coeff * oscillatoryIntegral(w, spec.t);
      return;
    }
    bool conj = (j % 2 == 1);
    for (auto& [m, v] : support) {
      if (conj) {
        bool paired = false;
        for (int i = 0; i < j && !paired; i += 2) paired = (tuple[i] == m);
        if (paired) continue;
      } else {
        bool paired = false;
        for (int i = 1; i < j && !paired; i += 2) paired = (tuple[i] == m);
        if (paired) continue;
      }
      tuple[j] = m;
      KVec next{partial.x + (conj ? -m.x : m.x), partial.y + (conj ? -m.y : m.y)};
      rec(j + 1, next, coeff * (conj ? std::conj(v) : v));
    }
  };
  rec(0, KVec{0, 0}, cplx(1, 0));

  // -i e^{-i t |k|^2} prefactor.
  out.forEach([&](const KVec& k) {
    out.at(k) *= cplx(0, -1) * std::polar(1.0, -spec.t * (double)normSq(k));
  });
  return out;
}

// Range of the resonance sum sum_j zeta_j |k_j|^2 over shell-data tuples.
inline std::pair<double, double> resonanceBand(const IterateSpec& spec) {
  double N2 = (double)spec.N * spec.N;
  int nOdd = (spec.p + 1) / 2, nEven = spec.p / 2;
  double qLo = N2 / 4.0, qHi = N2;
  return {nOdd * qLo - nEven * qHi, nOdd * qHi - nEven * qLo};
}

// Number of quadrature intervals for firstIterateQuad.  The oscillatory
// kernel is integrated exactly per interval, so the nodes only need to
// resolve the centered bandwidth of the integrand's amplitude, i.e. the
// resonance-band width p (qHi - qLo) of the shell data; roughly one node per
// period of the fastest centered component keeps the interpolation bias well
// below the statistical tolerances of the scaling study.
inline long autoQuadNodes(const IterateSpec& spec, long cap) {
  auto [gammaLo, gammaHi] = resonanceBand(spec);
  long T = (long)std::ceil((gammaHi - gammaLo) * spec.t / (2.0 * pi));
  return std::clamp(T, (long)128, cap);
}

namespace detail {

// Moments of linear interpolation against the oscillatory kernel on a unit
// interval: A = int_0^1 (1-x) e^{i theta x} dx, B = int_0^1 x e^{i theta x} dx.
inline void filonAB(double theta, cplx& A, cplx& B) {
  if (std::abs(theta) < 1e-4) {
    // Power series; the closed forms lose half the digits to cancellation here.
    cplx it(0, theta), term(1, 0);
    A = 0;
    B = 0;
    for (int n = 0; n < 6; ++n) {
      A += term / (double)((n + 1) * (n + 2));
      B += term / (double)(n + 2);
      term *= it / (double)(n + 1);
    }
  } else {
    cplx z(0, theta);
    cplx e = std::polar(1.0, theta);
    B = (e * (z - 1.0) + 1.0) / (z * z);
    A = (e - 1.0) / z - B;
  }
}

}  // namespace detail

// Quadrature path for the Duhamel integral A_k = int_0^t e^{i t' |k|^2}
// N_np(e^{i t' Lap} f)_k dt', then u^(1)_k = -i e^{-i t |k|^2} A_k.  The
// nonlinearity is sampled on T+1 equispaced nodes and interpolated linearly;
// the kernel, re-centered on the middle of the resonance band, is integrated
// in closed form against the interpolant (a Filon-type rule — plain trapezoid
// would need nodes for the full kernel span instead of the band width).
// nodes == 0 selects the count from autoQuadNodes, capped at `cap`.
template <class Real = double>
inline LatticeField firstIterateQuad(GridEngine<Real>& eng, const IterateSpec& spec,
                                     long nodes = 0, long cap = 3072) {
  using C = std::complex<Real>;
  LatticeField f = shellData(spec);
  long T = nodes > 0 ? nodes : autoQuadNodes(spec, cap);
  double h = spec.t / (double)T;
  int K = f.K, Kout = spec.p * K;
  auto [gammaLo, gammaHi] = resonanceBand(spec);
  double gammaC = 0.5 * (gammaLo + gammaHi);

  // Incremental per-node phases: e^{-i t_j |m|^2} on the data box and
  // e^{+i t_j |k|^2} on the output box.
  std::vector<cplx> vPhase(f.a.size(), 1.0), vStep(f.a.size());
  f.forEach([&](const KVec& m) {
    vStep[f.idx(m)] = std::polar(1.0, -h * (double)normSq(m));
  });
  LatticeField outTmpl(spec.d, Kout);
  std::size_t nOut = outTmpl.a.size();
  std::vector<cplx> oPhase(nOut, 1.0), oStep(nOut);
  // Per-mode interval weights at theta_k = (|k|^2 - gammaC) h: the left
  // sample enters with h A(theta), the right with h e^{-i theta} B(theta);
  // an interior node is right end of one interval and left end of the next.
  std::vector<cplx> wLeft(nOut), wRight(nOut), wMid(nOut);
  outTmpl.forEach([&](const KVec& k) {
    std::size_t i = outTmpl.idx(k);
    double q = (double)normSq(k);
    oStep[i] = std::polar(1.0, h * q);
    double theta = (q - gammaC) * h;
    cplx A, B;
    detail::filonAB(theta, A, B);
    wLeft[i] = h * A;
    wRight[i] = h * std::polar(1.0, -theta) * B;
    wMid[i] = wLeft[i] + wRight[i];
  });

  std::vector<cplx> acc(nOut, 0.0);
  int G = niceGridSize(2 * Kout + 1);
  std::size_t nGrid = GridEngine<Real>::gridCount(spec.d, G);
  Real scale = Real(1) / (Real)nGrid;

  if (spec.p == 3) {
    // Fused hot path: scatter/gather index maps once, FFTs in the engine's
    // own buffers, engine-precision accumulation, and the closed-form p=3
    // correction folded in; this loop dominates the scaling-study runtime.
    std::vector<std::size_t> dataMap(f.a.size()), outMap(nOut);
    f.forEach([&](const KVec& m) {
      dataMap[f.idx(m)] = GridEngine<Real>::gridIdx(spec.d, G, m);
    });
    outTmpl.forEach([&](const KVec& k) {
      outMap[outTmpl.idx(k)] = GridEngine<Real>::gridIdx(spec.d, G, k);
    });
    // Output-box index of each data-box point, for the diagonal correction.
    std::vector<std::size_t> dataInOut(f.a.size());
    f.forEach([&](const KVec& m) { dataInOut[f.idx(m)] = outTmpl.idx(m); });
    double mass = massOf(f);
    std::vector<double> corr(f.a.size());
    for (std::size_t i = 0; i < f.a.size(); ++i)
      corr[i] = std::norm(f.a[i]) - 2.0 * mass;

    std::vector<C> accR(nOut), oPhR(oPhase.begin(), oPhase.end()),
        oStR(oStep.begin(), oStep.end()), wLr(wLeft.begin(), wLeft.end()),
        wRr(wRight.begin(), wRight.end()), wMr(wMid.begin(), wMid.end());
    // Output phase restricted to the data box, in full precision, for the
    // diagonal correction term.
    std::vector<cplx> dataOPh(f.a.size(), 1.0), dataOSt(f.a.size());
    f.forEach([&](const KVec& m) {
      dataOSt[f.idx(m)] = std::polar(1.0, h * (double)normSq(m));
    });

    C* bufB = eng.buffer(spec.d, G, FFTW_BACKWARD);
    C* bufF = eng.buffer(spec.d, G, FFTW_FORWARD);
    std::vector<cplx> v(f.a.size());
    for (long j = 0; j <= T; ++j) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.a[i] * vPhase[i];
      std::fill(bufB, bufB + nGrid, C{});
      for (std::size_t i = 0; i < v.size(); ++i) bufB[dataMap[i]] = (C)v[i];
      eng.execute(spec.d, G, FFTW_BACKWARD);
      for (std::size_t g = 0; g < nGrid; ++g) {
        C u = bufB[g];
        Real m = u.real() * u.real() + u.imag() * u.imag();
        bufF[g] = C(m * u.real(), m * u.imag());
      }
      eng.execute(spec.d, G, FFTW_FORWARD);
      const C* w = (j == 0) ? wLr.data() : (j == T) ? wRr.data() : wMr.data();
      const cplx* wD = (j == 0) ? wLeft.data() : (j == T) ? wRight.data() : wMid.data();
      if (j < T) {
        for (std::size_t i = 0; i < nOut; ++i) {
          C g = bufF[outMap[i]];
          accR[i] += w[i] * oPhR[i] * C(g.real() * scale, g.imag() * scale);
          oPhR[i] *= oStR[i];
        }
      } else {
        for (std::size_t i = 0; i < nOut; ++i) {
          C g = bufF[outMap[i]];
          accR[i] += w[i] * oPhR[i] * C(g.real() * scale, g.imag() * scale);
        }
      }
      for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t o = dataInOut[i];
        accR[o] += C(wD[o] * dataOPh[i] * (corr[i] * v[i]));
      }
      if (j < T) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          vPhase[i] *= vStep[i];
          dataOPh[i] *= dataOSt[i];
        }
      }
    }
    for (std::size_t i = 0; i < nOut; ++i) acc[i] = (cplx)accR[i];
  } else {
    LatticeField v(spec.d, K);
    for (long j = 0; j <= T; ++j) {
      for (std::size_t i = 0; i < f.a.size(); ++i) v.a[i] = f.a[i] * vPhase[i];
      LatticeField Fv = noPairingNonlinearity(eng, v, spec.p);
      const cplx* w = (j == 0) ? wLeft.data() : (j == T) ? wRight.data() : wMid.data();
      for (std::size_t i = 0; i < nOut; ++i) acc[i] += w[i] * oPhase[i] * Fv.a[i];
      if (j < T) {
        for (std::size_t i = 0; i < vPhase.size(); ++i) vPhase[i] *= vStep[i];
        for (std::size_t i = 0; i < nOut; ++i) oPhase[i] *= oStep[i];
      }
    }
  }

  LatticeField out(spec.d, Kout);
  out.forEach([&](const KVec& k) {
    out.at(k) =
        cplx(0, -1) * std::polar(1.0, -spec.t * (double)normSq(k)) * acc[out.idx(k)];
  });
  return out;
}

// ---------------------------------------------------------------------------
// Scaling study: fitted log-log slope of the iterate size against N.

struct FitResult {
  double slope = 0;
  double stderror = 0;
};

inline FitResult fitLogLog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 3) throw std::invalid_argument("slope fit needs >= 3 points");
  std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  FitResult r;
  r.slope = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = ly[i] - my - r.slope * (lx[i] - mx);
    ss += e * e;
  }
  if (n > 2) r.stderror = std::sqrt(ss / ((n - 2) * sxx));
  return r;
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty sample");
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct ScalingResult {
  std::vector<long> Ns;
  std::vector<double> medians, means;
  FitResult fit;
  double predictedSlope = 0;
};

// Slope of log E||u^(1)(t)||_{H^s} vs log N.  The expectation is estimated by
// the sample median (mean reported alongside).  Predictions:
// deterministic (p-1)(d/2-s)-2, random -(p-1)s-1.
template <class Real = double>
inline ScalingResult scalingStudy(GridEngine<Real>& eng, int d, int p, double s,
                                  const std::vector<long>& Ns, int ensembleSize,
                                  bool randomData, std::uint64_t masterSeed,
                                  double t = 1.0, long nodeCap = 3072) {
  if (Ns.size() < 3) throw std::invalid_argument("scaling study needs >= 3 frequencies");
  ScalingResult res;
  res.Ns = Ns;
  res.predictedSlope =
      randomData ? -(p - 1) * s - 1.0 : (p - 1) * (d / 2.0 - s) - 2.0;
  for (long N : Ns) {
    std::vector<double> norms;
    int nEval = randomData ? ensembleSize : 1;  // deterministic samples coincide
    for (int i = 0; i < nEval; ++i) {
      IterateSpec spec;
      spec.d = d;
      spec.p = p;
      spec.N = N;
      spec.randomData = randomData;
      spec.t = t;
      spec.s = s;
      spec.alpha = s + d / 2.0;
      spec.seed = hashKey(masterSeed, (std::uint64_t)N, KVec{i, 0});
      LatticeField u1 = firstIterateQuad(eng, spec, 0, nodeCap);
      norms.push_back(sobolevNorm(u1, s));
    }
    while ((int)norms.size() < ensembleSize) norms.push_back(norms.front());
    res.medians.push_back(median(norms));
    res.means.push_back(std::accumulate(norms.begin(), norms.end(), 0.0) / norms.size());
  }
  std::vector<double> xs(Ns.begin(), Ns.end());
  res.fit = fitLogLog(xs, res.medians);
  return res;
}

}  // namespace nlslab

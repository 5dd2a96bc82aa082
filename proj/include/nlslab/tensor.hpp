#pragma once

// Labeled dense tensors over lattice boxes, partition operator norms,
// semi-products, and the Monte Carlo statistics for the contraction
// (descent) and large-deviation estimates.

#include <Eigen/Dense>
#include <map>
#include <numeric>
#include <set>

#include "core.hpp"

namespace nlslab {

// Integer box [lo, hi] per component in Z^d.
struct LatticeBox {
  int d = 1;
  KVec lo{0, 0}, hi{0, 0};

  static LatticeBox interval(int a, int b) { return {1, {a, 0}, {b, 0}}; }
  static LatticeBox square(int a, int b) { return {2, {a, a}, {b, b}}; }

  std::size_t sideX() const { return (std::size_t)(hi.x - lo.x + 1); }
  std::size_t sideY() const { return d == 2 ? (std::size_t)(hi.y - lo.y + 1) : 1; }
  std::size_t size() const { return sideX() * sideY(); }
  bool contains(const KVec& k) const {
    return k.x >= lo.x && k.x <= hi.x && (d == 1 || (k.y >= lo.y && k.y <= hi.y));
  }
  std::size_t index(const KVec& k) const {
    return (std::size_t)(k.y - lo.y) * sideX() + (std::size_t)(k.x - lo.x);
  }
  KVec point(std::size_t i) const {
    return {lo.x + (int)(i % sideX()), d == 2 ? lo.y + (int)(i / sideX()) : 0};
  }
  friend bool operator==(const LatticeBox&, const LatticeBox&) = default;
};

struct TensorAxis {
  char label = 'a';
  int sign = +1;  // zeta: +1 for u, -1 for conj(u)
  LatticeBox box;
};

struct LabeledTensor {
  std::vector<TensorAxis> axes;
  std::vector<cplx> val;
  std::uint64_t provenanceSeed = 0;  // nonzero: seeds already consumed building this tensor

  LabeledTensor() = default;
  explicit LabeledTensor(std::vector<TensorAxis> ax) : axes(std::move(ax)) {
    std::set<char> seen;
    std::size_t n = 1;
    for (const auto& a : axes) {
      if (!seen.insert(a.label).second)
        throw std::invalid_argument("duplicate axis label in tensor");
      n *= a.box.size();
    }
    val.assign(n, cplx(0));
  }

  int rank() const { return (int)axes.size(); }
  std::string labels() const {
    std::string s;
    for (const auto& a : axes) s += a.label;
    return s;
  }
  int axisOf(char label) const {
    for (int i = 0; i < rank(); ++i)
      if (axes[i].label == label) return i;
    throw std::invalid_argument(std::string("unknown axis label '") + label + "'");
  }
  bool hasLabel(char label) const {
    for (const auto& a : axes)
      if (a.label == label) return true;
    return false;
  }

  // Row-major linear index, axis 0 slowest.
  std::size_t linear(const std::vector<std::size_t>& idx) const {
    std::size_t r = 0;
    for (int i = 0; i < rank(); ++i) r = r * axes[i].box.size() + idx[i];
    return r;
  }
  cplx& at(const std::vector<std::size_t>& idx) { return val[linear(idx)]; }
  const cplx& at(const std::vector<std::size_t>& idx) const { return val[linear(idx)]; }

  // Visit all entries with the per-axis flat indices.
  template <class F>
  void forEachEntry(F&& fn) const {
    std::vector<std::size_t> idx(rank(), 0);
    for (std::size_t lin = 0; lin < val.size(); ++lin) {
      fn(idx, val[lin]);
      for (int i = rank() - 1; i >= 0; --i) {
        if (++idx[i] < axes[i].box.size()) break;
        idx[i] = 0;
      }
    }
  }

  double frobenius() const {
    double s = 0;
    for (const cplx& v : val) s += std::norm(v);
    return std::sqrt(s);
  }
};

// Deterministic dense random tensor (standard complex Gaussian entries).
inline LabeledTensor randomTensor(std::vector<TensorAxis> axes, std::uint64_t seed) {
  LabeledTensor h(std::move(axes));
  for (std::size_t i = 0; i < h.val.size(); ++i)
    h.val[i] = complexGaussian(seed, 0x74656e73, KVec{(int)(i & 0x7fffffff), (int)(i >> 31)});
  h.provenanceSeed = seed;
  return h;
}

// ---------------------------------------------------------------------------
// Spectral norm of a flattened slice.

namespace detail {

inline double spectralNorm(const Eigen::MatrixXcd& M, std::uint64_t seed = 17) {
  if (M.rows() == 0 || M.cols() == 0) return 0.0;
  if (std::min(M.rows(), M.cols()) <= 512) {
    // Largest eigenvalue of the Gram matrix on the smaller side (exact).
    Eigen::MatrixXcd G;
    if (M.rows() <= M.cols())
      G = M * M.adjoint();
    else
      G = M.adjoint() * M;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  }
  // Power iteration on M^H M, two deterministic random restarts.
  double best = 0;
  for (int restart = 0; restart < 2; ++restart) {
    Eigen::VectorXcd v(M.cols());
    for (long i = 0; i < M.cols(); ++i) {
      std::uint64_t h = hashKey(seed, (std::uint64_t)restart, KVec{(int)i, 0});
      v[i] = cplx(u01(h) - 0.5, u01(mix64(h)) - 0.5);
    }
    v.normalize();
    double sigma = 0;
    for (int it = 0; it < 200; ++it) {
      Eigen::VectorXcd w = M * v;
      sigma = w.norm();
      if (sigma == 0) break;
      v = M.adjoint() * w;
      double n = v.norm();
      if (n == 0) break;
      v /= n;
    }
    best = std::max(best, sigma);
  }
  return best;
}

}  // namespace detail

// ||h||_{k_B -> k_C}: spectral norm of the flattening as a map from the B
// variables to the C variables, sup over slices of the spectator variables.
// Convention: B = C = empty set gives the Frobenius norm of the full tensor.
inline double opNorm(const LabeledTensor& h, const std::string& B, const std::string& C) {
  for (char b : B)
    if (C.find(b) != std::string::npos)
      throw std::invalid_argument("row and column label sets must be disjoint");
  for (char b : B) h.axisOf(b);
  for (char c : C) h.axisOf(c);
  if (B.empty() && C.empty()) return h.frobenius();

  std::vector<int> bAx, cAx, eAx;
  for (int i = 0; i < h.rank(); ++i) {
    char l = h.axes[i].label;
    if (B.find(l) != std::string::npos)
      bAx.push_back(i);
    else if (C.find(l) != std::string::npos)
      cAx.push_back(i);
    else
      eAx.push_back(i);
  }
  std::size_t bSize = 1, cSize = 1, eSize = 1;
  for (int i : bAx) bSize *= h.axes[i].box.size();
  for (int i : cAx) cSize *= h.axes[i].box.size();
  for (int i : eAx) eSize *= h.axes[i].box.size();

  // Precompute flattened (e, c, b) coordinates once.
  std::vector<Eigen::MatrixXcd> slices(eSize, Eigen::MatrixXcd::Zero(cSize, bSize));
  h.forEachEntry([&](const std::vector<std::size_t>& idx, const cplx& v) {
    std::size_t b = 0, c = 0, e = 0;
    for (int i : bAx) b = b * h.axes[i].box.size() + idx[i];
    for (int i : cAx) c = c * h.axes[i].box.size() + idx[i];
    for (int i : eAx) e = e * h.axes[i].box.size() + idx[i];
    slices[e]((long)c, (long)b) = v;
  });
  double sup = 0;
  for (auto& M : slices) sup = std::max(sup, detail::spectralNorm(M));
  return sup;
}

// ---------------------------------------------------------------------------
// Semi-product: tensor product contracted over the shared labels.

inline LabeledTensor semiProduct(const LabeledTensor& h1, const LabeledTensor& h2,
                                 const std::string& shared) {
  for (char s : shared) {
    if (h1.axes[h1.axisOf(s)].box != h2.axes[h2.axisOf(s)].box)
      throw std::invalid_argument(std::string("range mismatch on shared label '") + s + "'");
  }
  std::vector<TensorAxis> outAxes;
  std::vector<int> o1, o2;  // output axis -> source axis
  for (int i = 0; i < h1.rank(); ++i)
    if (shared.find(h1.axes[i].label) == std::string::npos) {
      outAxes.push_back(h1.axes[i]);
      o1.push_back(i);
    }
  std::size_t split = outAxes.size();
  for (int i = 0; i < h2.rank(); ++i)
    if (shared.find(h2.axes[i].label) == std::string::npos) {
      if (h1.hasLabel(h2.axes[i].label))
        throw std::invalid_argument("non-contracted label appears in both factors");
      outAxes.push_back(h2.axes[i]);
      o2.push_back(i);
    }
  LabeledTensor out(outAxes);

  std::vector<int> s1, s2;  // shared axis positions
  for (char s : shared) {
    s1.push_back(h1.axisOf(s));
    s2.push_back(h2.axisOf(s));
  }
  std::vector<std::size_t> sharedDims;
  std::size_t sharedTotal = 1;
  for (int i : s1) {
    sharedDims.push_back(h1.axes[i].box.size());
    sharedTotal *= h1.axes[i].box.size();
  }

  std::vector<std::size_t> idxOut(out.rank(), 0), idx1(h1.rank()), idx2(h2.rank()),
      idxS(s1.size());
  for (std::size_t lin = 0; lin < out.val.size(); ++lin) {
    for (std::size_t i = 0; i < split; ++i) idx1[o1[i]] = idxOut[i];
    for (std::size_t i = split; i < idxOut.size(); ++i) idx2[o2[i - split]] = idxOut[i];
    cplx sum = 0;
    std::fill(idxS.begin(), idxS.end(), 0);
    for (std::size_t sl = 0; sl < sharedTotal; ++sl) {
      for (std::size_t i = 0; i < idxS.size(); ++i) {
        idx1[s1[i]] = idxS[i];
        idx2[s2[i]] = idxS[i];
      }
      sum += h1.at(idx1) * h2.at(idx2);
      for (int i = (int)idxS.size() - 1; i >= 0; --i) {
        if (++idxS[i] < sharedDims[i]) break;
        idxS[i] = 0;
      }
    }
    out.val[lin] = sum;
    for (int i = out.rank() - 1; i >= 0; --i) {
      if (++idxOut[i] < out.axes[i].box.size()) break;
      idxOut[i] = 0;
    }
  }
  out.provenanceSeed = h1.provenanceSeed ? h1.provenanceSeed : h2.provenanceSeed;
  return out;
}

inline std::string sharedLabels(const LabeledTensor& h1, const LabeledTensor& h2) {
  std::string s;
  for (const auto& a : h1.axes)
    if (h2.hasLabel(a.label)) s += a.label;
  return s;
}

// ---------------------------------------------------------------------------
// Bilinear / multilinear norm inequalities.

struct InequalityCheck {
  double lhs = 0;
  double rhs = 0;
  bool satisfied = false;
  std::vector<double> rhsPerOrdering;  // multilinear only
};

inline constexpr double kNormTol = 1e-9;

inline bool inequalityHolds(double lhs, double rhs) {
  return lhs <= rhs * (1.0 + kNormTol) + kNormTol;
}

inline std::string intersectLabels(const std::string& a, const std::string& b) {
  std::string r;
  for (char c : a)
    if (b.find(c) != std::string::npos) r += c;
  return r;
}
inline std::string uniteLabels(const std::string& a, const std::string& b) {
  std::string r = a;
  for (char c : b)
    if (r.find(c) == std::string::npos) r += c;
  return r;
}

// ||H||_{X->Y} <= ||h1||_{(X u A2) n A1 -> Y n A1} * ||h2||_{X n A2 -> (Y u A1) n A2}
// with H the semi-product over the shared labels.
inline InequalityCheck checkBilinear(const LabeledTensor& h1, const LabeledTensor& h2,
                                     const std::string& X, const std::string& Y) {
  std::string A1 = h1.labels(), A2 = h2.labels();
  std::string shared = intersectLabels(A1, A2);
  std::string symdiff;
  for (char c : uniteLabels(A1, A2))
    if (shared.find(c) == std::string::npos) symdiff += c;
  for (char c : symdiff)
    if (X.find(c) == std::string::npos && Y.find(c) == std::string::npos)
      throw std::invalid_argument("X, Y must partition the non-contracted labels");
  if (X.size() + Y.size() != symdiff.size())
    throw std::invalid_argument("X, Y must partition the non-contracted labels");

  LabeledTensor H = semiProduct(h1, h2, shared);
  InequalityCheck r;
  r.lhs = opNorm(H, X, Y);
  double n1 = opNorm(h1, intersectLabels(uniteLabels(X, A2), A1), intersectLabels(Y, A1));
  double n2 = opNorm(h2, intersectLabels(X, A2), intersectLabels(uniteLabels(Y, A1), A2));
  r.rhs = n1 * n2;
  r.satisfied = inequalityHolds(r.lhs, r.rhs);
  return r;
}

// Ordered multilinear bound: with B_j = U_{l>j} (A_j n A_l) and
// C_j = U_{l<j} (A_j n A_l),
//   ||H||_{X->Y} <= prod_j ||h_j||_{(X n A_j) u B_j -> (Y n A_j) u C_j}.
// Every label may occur in at most two tensors; X, Y partition the
// once-occurring labels.  rhsPerOrdering reports the bound for every
// permutation of the factors (the inequality holds for each).
inline InequalityCheck checkMultilinear(const std::vector<LabeledTensor>& hs,
                                        const std::string& X, const std::string& Y) {
  if (hs.size() < 2) throw std::invalid_argument("multilinear check needs >= 2 tensors");
  std::map<char, int> occur;
  for (const auto& h : hs)
    for (const auto& a : h.axes) ++occur[a.label];
  std::string once;
  for (auto& [l, c] : occur) {
    if (c > 2) throw std::invalid_argument("label occurs in more than two tensors");
    if (c == 1) once += l;
  }
  for (char c : once)
    if (X.find(c) == std::string::npos && Y.find(c) == std::string::npos)
      throw std::invalid_argument("X, Y must partition the once-occurring labels");
  if (X.size() + Y.size() != once.size())
    throw std::invalid_argument("X, Y must partition the once-occurring labels");

  LabeledTensor H = hs[0];
  for (std::size_t j = 1; j < hs.size(); ++j)
    H = semiProduct(H, hs[j], sharedLabels(H, hs[j]));
  InequalityCheck r;
  r.lhs = opNorm(H, X, Y);

  auto boundForOrder = [&](const std::vector<int>& order) {
    double prod = 1;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const LabeledTensor& hj = hs[order[pos]];
      std::string Aj = hj.labels(), Bj, Cj;
      for (std::size_t q = 0; q < order.size(); ++q) {
        if (q == pos) continue;
        std::string inter = intersectLabels(Aj, hs[order[q]].labels());
        if (q > pos)
          Bj = uniteLabels(Bj, inter);
        else
          Cj = uniteLabels(Cj, inter);
      }
      prod *= opNorm(hj, uniteLabels(intersectLabels(X, Aj), Bj),
                     uniteLabels(intersectLabels(Y, Aj), Cj));
    }
    return prod;
  };

  std::vector<int> order(hs.size());
  std::iota(order.begin(), order.end(), 0);
  r.rhs = boundForOrder(order);
  do {
    r.rhsPerOrdering.push_back(boundForOrder(order));
  } while (std::next_permutation(order.begin(), order.end()));
  r.satisfied = inequalityHolds(r.lhs, r.rhs);
  return r;
}

// ---------------------------------------------------------------------------
// Gaussian contraction (method of descent) and large-deviation statistics.

// h'_{k_{A'}} = sum over the dropped axes of h * prod eta^{zeta}, with one
// unit-circle field eta(k) shared across axes and the no-pairing mask (no two
// dropped axes of opposite sign at equal value) active.
inline LabeledTensor gaussianContract(const LabeledTensor& h, const std::string& retained,
                                      std::uint64_t seed) {
  if (h.provenanceSeed != 0 && seed == h.provenanceSeed)
    throw std::invalid_argument("contraction seed must be independent of the tensor's seed");
  std::vector<int> keep, drop;
  for (char l : retained) h.axisOf(l);
  for (int i = 0; i < h.rank(); ++i) {
    if (retained.find(h.axes[i].label) != std::string::npos)
      keep.push_back(i);
    else
      drop.push_back(i);
  }
  std::vector<TensorAxis> outAxes;
  for (int i : keep) outAxes.push_back(h.axes[i]);
  LabeledTensor out(outAxes);

  // eta values per dropped-axis flat index.
  std::vector<std::vector<cplx>> eta(drop.size());
  for (std::size_t a = 0; a < drop.size(); ++a) {
    const TensorAxis& ax = h.axes[drop[a]];
    eta[a].resize(ax.box.size());
    for (std::size_t i = 0; i < ax.box.size(); ++i) {
      cplx e = unitCircle(seed, 0x65746173, ax.box.point(i));
      eta[a][i] = ax.sign > 0 ? e : std::conj(e);
    }
  }

  std::vector<std::size_t> outIdx(out.rank(), 0);
  std::vector<KVec> dropPoint(drop.size());
  h.forEachEntry([&](const std::vector<std::size_t>& idx, const cplx& v) {
    if (v == cplx(0)) return;
    // No pairing among the dropped axes.
    for (std::size_t a = 0; a < drop.size(); ++a)
      dropPoint[a] = h.axes[drop[a]].box.point(idx[drop[a]]);
    for (std::size_t a = 0; a < drop.size(); ++a)
      for (std::size_t b = a + 1; b < drop.size(); ++b)
        if (h.axes[drop[a]].sign != h.axes[drop[b]].sign && dropPoint[a] == dropPoint[b])
          return;
    cplx factor = v;
    for (std::size_t a = 0; a < drop.size(); ++a) factor *= eta[a][idx[drop[a]]];
    for (std::size_t i = 0; i < keep.size(); ++i) outIdx[i] = idx[keep[i]];
    out.at(outIdx) += factor;
  });
  out.provenanceSeed = h.provenanceSeed ? h.provenanceSeed : seed;
  return out;
}

struct QuantileReport {
  std::vector<std::pair<double, double>> quantiles;  // (level, value)
  double mean = 0;
};

inline QuantileReport quantileReport(std::vector<double> v,
                                     std::initializer_list<double> levels = {0.5, 0.9, 0.95,
                                                                             0.99}) {
  QuantileReport r;
  if (v.empty()) return r;
  std::sort(v.begin(), v.end());
  for (double q : levels) {
    std::size_t i = std::min(v.size() - 1, (std::size_t)(q * v.size()));
    r.quantiles.push_back({q, v[i]});
  }
  r.mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  return r;
}

inline double quantileOf(const QuantileReport& r, double level) {
  for (auto& [q, v] : r.quantiles)
    if (q == level) return v;
  throw std::invalid_argument("quantile level not recorded");
}

// Ratio ||h'||_{X' -> Y'} / max over refinements of (X', Y') of ||h||_{X->Y},
// over independent eta draws (h fixed).  A refinement distributes each
// contracted axis to either side.
inline QuantileReport contractStat(const LabeledTensor& h, const std::string& retained,
                                   const std::string& Xp, const std::string& Yp, int trials,
                                   std::uint64_t seedBase) {
  std::string dropped;
  for (const auto& a : h.axes)
    if (retained.find(a.label) == std::string::npos) dropped += a.label;
  double denom = 0;
  for (unsigned mask = 0; mask < (1u << dropped.size()); ++mask) {
    std::string X = Xp, Y = Yp;
    for (std::size_t i = 0; i < dropped.size(); ++i)
      (mask & (1u << i) ? X : Y) += dropped[i];
    denom = std::max(denom, opNorm(h, X, Y));
  }
  std::vector<double> ratios;
  for (int t = 0; t < trials; ++t) {
    LabeledTensor hp = gaussianContract(h, retained, mix64(seedBase + 0x1000 + t));
    ratios.push_back(opNorm(hp, Xp, Yp) / denom);
  }
  return quantileReport(ratios);
}

// |X(omega)|^2 / sum |a|^2 with X = sum_{no pairing} a prod eta^{zeta}.
inline QuantileReport largeDevStat(const LabeledTensor& a, int trials,
                                   std::uint64_t seedBase) {
  double denom = 0;
  std::vector<KVec> pts(a.rank());
  a.forEachEntry([&](const std::vector<std::size_t>& idx, const cplx& v) {
    for (int i = 0; i < a.rank(); ++i) pts[i] = a.axes[i].box.point(idx[i]);
    for (int i = 0; i < a.rank(); ++i)
      for (int j = i + 1; j < a.rank(); ++j)
        if (a.axes[i].sign != a.axes[j].sign && pts[i] == pts[j]) return;
    denom += std::norm(v);
  });
  if (denom == 0) throw std::invalid_argument("tensor vanishes on the no-pairing set");

  std::vector<double> ratios;
  for (int t = 0; t < trials; ++t) {
    LabeledTensor x = gaussianContract(a, "", mix64(seedBase + 0x2000 + t));
    ratios.push_back(std::norm(x.val[0]) / denom);
  }
  return quantileReport(ratios);
}

}  // namespace nlslab

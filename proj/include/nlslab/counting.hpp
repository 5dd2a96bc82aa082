#pragma once

// Exact enumeration of lattice resonance sets, exponent fits for the counting
// bounds, and the Schur row/column-sum bound on flattened tensors.

#include "picard.hpp"  // fitLogLog
#include "tensor.hpp"

namespace nlslab {

// Triples with zeta1 k1 + zeta2 k2 + zeta3 k3 = m, zeta-weighted square sum
// Gamma, window constraints on k1 and k2 only, and no pairing (equal values
// across opposite signs).
struct CubicInstance {
  int d = 1;
  int signs[3] = {+1, -1, +1};
  KVec m{0, 0};
  long Gamma = 0;
  KVec c1{0, 0}, c2{0, 0};  // window centers, |k_j - c_j|_inf <= M_j
  long M1 = 8, M2 = 8;
  bool quadratic = true;  // false: drop the Gamma constraint (sanity bound)

  void validate() const {
    if (d < 1 || d > 2) throw std::invalid_argument("dimension must be 1 or 2");
    if (M1 < 1 || M2 < 1) throw std::invalid_argument("window radii must be >= 1");
    for (int s : signs)
      if (s != 1 && s != -1) throw std::invalid_argument("signs must be +-1");
  }
};

namespace detail {

inline bool cubicNoPairing(const int signs[3], const KVec& k1, const KVec& k2,
                           const KVec& k3) {
  const KVec* ks[3] = {&k1, &k2, &k3};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (signs[i] != signs[j] && *ks[i] == *ks[j]) return false;
  return true;
}

// Integer roots of a y^2 + b y + c = 0 appended to out; a==b==0 with c==0
// signals "all y" via the return value.
inline bool quadraticRoots(long a, long b, long c, std::vector<long>& out) {
  if (a == 0) {
    if (b == 0) return c == 0;  // degenerate: every y (iff c == 0)
    if (c % b == 0) out.push_back(-c / b);
    return false;
  }
  long disc = b * b - 4 * a * c;
  if (disc < 0) return false;
  long r = (long)std::llround(std::sqrt((double)disc));
  while (r * r > disc) --r;
  while ((r + 1) * (r + 1) <= disc) ++r;
  if (r * r != disc) return false;
  for (long s : {r, -r}) {
    if ((-b + s) % (2 * a) == 0) out.push_back((-b + s) / (2 * a));
    if (s == 0) break;
  }
  return false;
}

}  // namespace detail

// Exact count.  Per k1 the constraints on k2 reduce to an (at most) quadratic
// equation per component, so the cost is O(M1^d * M2^{d-1}) rather than a full
// window product.
inline long enumerateCubic(const CubicInstance& inst) {
  inst.validate();
  const int z1 = inst.signs[0], z2 = inst.signs[1], z3 = inst.signs[2];
  long count = 0;

  auto visitK2 = [&](const KVec& k1, const KVec& k2) {
    // k3 determined by the linear constraint.
    KVec k3{z3 * (inst.m.x - z1 * k1.x - z2 * k2.x),
            z3 * (inst.m.y - z1 * k1.y - z2 * k2.y)};
    if (inst.quadratic) {
      long q = z1 * normSq(k1) + z2 * normSq(k2) + z3 * normSq(k3);
      if (q != inst.Gamma) return;
    }
    if (detail::cubicNoPairing(inst.signs, k1, k2, k3)) ++count;
  };

  forEachK(inst.d, (int)inst.M1, [&](const KVec& off1) {
    KVec k1{inst.c1.x + off1.x, inst.d == 2 ? inst.c1.y + off1.y : 0};
    if (!inst.quadratic) {
      forEachK(inst.d, (int)inst.M2, [&](const KVec& off2) {
        visitK2(k1, {inst.c2.x + off2.x, inst.d == 2 ? inst.c2.y + off2.y : 0});
      });
      return;
    }
    // zeta2 k2 + zeta3 k3 = c, with the quadratic constraint reducing to
    // (z2+z3)|k2|^2 - 2 z2 z3 (c . k2) + z3 |c|^2 - R0 = 0.
    KVec c{inst.m.x - z1 * k1.x, inst.m.y - z1 * k1.y};
    long R0 = inst.Gamma - z1 * normSq(k1);
    long A = z2 + z3;
    long zz = z2 * z3;
    if (inst.d == 1) {
      std::vector<long> roots;
      bool all = detail::quadraticRoots(A, -2 * zz * c.x, z3 * normSq(c) - R0, roots);
      if (all) {
        for (long x = inst.c2.x - inst.M2; x <= inst.c2.x + inst.M2; ++x)
          visitK2(k1, {(int)x, 0});
      } else {
        for (long x : roots)
          if (std::labs(x - inst.c2.x) <= inst.M2) visitK2(k1, {(int)x, 0});
      }
    } else {
      for (long x = inst.c2.x - inst.M2; x <= inst.c2.x + inst.M2; ++x) {
        long Cx = A * x * x - 2 * zz * (long)c.x * x + z3 * normSq(c) - R0;
        std::vector<long> roots;
        bool all = detail::quadraticRoots(A, -2 * zz * c.y, Cx, roots);
        if (all) {
          for (long y = inst.c2.y - inst.M2; y <= inst.c2.y + inst.M2; ++y)
            visitK2(k1, {(int)x, (int)y});
        } else {
          for (long y : roots)
            if (std::labs(y - inst.c2.y) <= inst.M2) visitK2(k1, {(int)x, (int)y});
        }
      }
    }
  });
  return count;
}

// ---------------------------------------------------------------------------
// Basic lemma set: blocks with prefix-sum windows and one quadratic constraint.

struct BasicPos {
  int sign = +1;
  KVec center{0, 0};  // window center for the prefix sum at this position
  long radius = 1;    // |prefix - center|_inf <= radius
};

struct BasicInstance {
  int d = 1;
  std::vector<std::vector<BasicPos>> blocks;
  long Gamma = 0;

  int indexCount() const {
    int n = 0;
    for (const auto& b : blocks) n += (int)b.size();
    return n;
  }
  void validate() const {
    if (d < 1 || d > 2) throw std::invalid_argument("dimension must be 1 or 2");
    if (indexCount() == 0) return;
    if (indexCount() > 6) throw std::invalid_argument("instance too large (> 6 indices)");
    double volume = 1;
    for (const auto& b : blocks)
      for (const auto& p : b) {
        if (p.radius < 1) throw std::invalid_argument("window radii must be >= 1");
        volume *= std::pow(2.0 * p.radius + 1.0, d);
      }
    if (volume > 1e8) throw std::invalid_argument("instance too large (> 1e8 tuples)");
  }
};

// Exact count of assignments k_A satisfying every prefix-sum window, the
// quadratic constraint sum zeta |k|^2 = Gamma, and no pairing across opposite
// signs anywhere in A.
inline long enumerateBasic(const BasicInstance& inst) {
  inst.validate();
  if (inst.indexCount() == 0) return inst.Gamma == 0 ? 1 : 0;

  std::vector<std::pair<int, KVec>> chosen;  // (sign, value) in visit order
  long count = 0;

  std::function<void(std::size_t, std::size_t, KVec, long)> rec =
      [&](std::size_t bi, std::size_t pi, KVec prefix, long quad) {
        if (bi == inst.blocks.size()) {
          if (quad == inst.Gamma) ++count;
          return;
        }
        if (pi == inst.blocks[bi].size()) {
          rec(bi + 1, 0, KVec{0, 0}, quad);
          return;
        }
        const BasicPos& pos = inst.blocks[bi][pi];
        // prefix + sign * k must lie in the window: k = sign * (w - prefix).
        forEachK(inst.d, (int)pos.radius, [&](const KVec& off) {
          KVec w{pos.center.x + off.x, inst.d == 2 ? pos.center.y + off.y : 0};
          KVec k{pos.sign * (w.x - prefix.x), pos.sign * (w.y - prefix.y)};
          for (auto& [s, v] : chosen)
            if (s != pos.sign && v == k) return;  // pairing
          chosen.push_back({pos.sign, k});
          rec(bi, pi + 1, w, quad + pos.sign * normSq(k));
          chosen.pop_back();
        });
      };
  rec(0, 0, KVec{0, 0}, 0);
  return count;
}

// ---------------------------------------------------------------------------
// Exponent fit and worst-case slope drivers.

struct ExponentFit {
  FitResult fit;
  int dropped = 0;  // zero counts removed before fitting
};

inline ExponentFit fitExponent(const std::vector<long>& Ms, const std::vector<long>& counts) {
  if (Ms.size() != counts.size()) throw std::invalid_argument("length mismatch");
  std::vector<double> x, y;
  ExponentFit r;
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    if (counts[i] > 0) {
      x.push_back((double)Ms[i]);
      y.push_back((double)counts[i]);
    } else {
      ++r.dropped;
    }
  }
  if (x.empty()) throw std::invalid_argument("all counts are zero");
  r.fit = fitLogLog(x, y);
  return r;
}

// Worst-case cubic count at radius M: maximum over 64 seeded random (m, Gamma)
// targets plus the structured targets (0,0), (0,+-2) (the lemma is uniform in
// the targets; an exhaustive sweep is infeasible).
inline long cubicWorstCase(int d, long M, std::uint64_t seed) {
  CubicInstance inst;
  inst.d = d;
  inst.M1 = inst.M2 = M;
  long best = 0;
  auto tryTarget = [&](const KVec& m, long Gamma) {
    inst.m = m;
    inst.Gamma = Gamma;
    best = std::max(best, enumerateCubic(inst));
  };
  tryTarget({0, 0}, 0);
  tryTarget({0, 0}, 2);
  tryTarget({0, 0}, -2);
  for (int i = 0; i < 64; ++i) {
    KVec m{(int)uniformIndex(hashKey(seed, 0xa1, KVec{i, 0}), 2 * M + 1) - (int)M, 0};
    if (d == 2)
      m.y = (int)uniformIndex(hashKey(seed, 0xa2, KVec{i, 0}), 2 * M + 1) - (int)M;
    long span = 8 * M * M + 1;
    long Gamma = (long)uniformIndex(hashKey(seed, 0xa3, KVec{i, 0}), 2 * span + 1) - span;
    tryTarget(m, Gamma);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Schur row/column-sum bound, certified >= opNorm.

inline double schurBound(const LabeledTensor& h, const std::string& rows,
                         const std::string& cols) {
  std::vector<int> rAx, cAx, eAx;
  for (char r : rows) h.axisOf(r);
  for (char c : cols) h.axisOf(c);
  for (int i = 0; i < h.rank(); ++i) {
    char l = h.axes[i].label;
    if (rows.find(l) != std::string::npos)
      rAx.push_back(i);
    else if (cols.find(l) != std::string::npos)
      cAx.push_back(i);
    else
      eAx.push_back(i);
  }
  std::size_t rSize = 1, cSize = 1, eSize = 1;
  for (int i : rAx) rSize *= h.axes[i].box.size();
  for (int i : cAx) cSize *= h.axes[i].box.size();
  for (int i : eAx) eSize *= h.axes[i].box.size();

  std::vector<double> rowSum(eSize * rSize, 0.0), colSum(eSize * cSize, 0.0);
  h.forEachEntry([&](const std::vector<std::size_t>& idx, const cplx& v) {
    std::size_t r = 0, c = 0, e = 0;
    for (int i : rAx) r = r * h.axes[i].box.size() + idx[i];
    for (int i : cAx) c = c * h.axes[i].box.size() + idx[i];
    for (int i : eAx) e = e * h.axes[i].box.size() + idx[i];
    double a = std::abs(v);
    rowSum[e * rSize + r] += a;
    colSum[e * cSize + c] += a;
  });
  double bound = 0;
  for (std::size_t e = 0; e < eSize; ++e) {
    double rs = 0, cs = 0;
    for (std::size_t r = 0; r < rSize; ++r) rs = std::max(rs, rowSum[e * rSize + r]);
    for (std::size_t c = 0; c < cSize; ++c) cs = std::max(cs, colSum[e * cSize + c]);
    bound = std::max(bound, std::sqrt(rs * cs));
  }
  return bound;
}

}  // namespace nlslab

#pragma once

// Reproducible Gaussian data ensembles on the truncated lattice and their
// mass statistics.  Every mode is a pure function of (seed, k), so samples
// nest exactly across truncations.

#include "lattice.hpp"

namespace nlslab {

enum class DataKind { PowerLaw, Homogeneous };

// Random-data tag lanes, kept distinct from other consumers of the hash.
inline constexpr std::uint64_t kDataTag = 0x64617461;      // "data"
inline constexpr std::uint64_t kTrimTag = 0x7472696d;      // "trim"

struct GaussianDataSpec {
  std::uint64_t seed = 1;
  int d = 1;
  double alpha = 1.0;        // regularity exponent
  long N = 8;                // dyadic truncation
  DataKind kind = DataKind::PowerLaw;

  void validate() const {
    if (d < 1 || d > 2) throw std::invalid_argument("dimension must be 1 or 2");
    requireDyadic(N, "truncation N");
  }
};

// Schwartz profile for the homogeneous data.
inline double homogeneousProfile(double xiSq) { return std::exp(-xiSq); }

// Storage box for a spec: the power-law data live in <k> <= N, so the box
// K = floor(sqrt(N^2-1)) covers the bracket ball exactly; homogeneous data
// have Schwartz tails, truncated at |k|_inf <= 4N (profile < 1e-6 there).
inline int dataBoxFor(const GaussianDataSpec& spec) {
  if (spec.kind == DataKind::PowerLaw)
    return (int)std::floor(std::sqrt((double)spec.N * spec.N - 1.0));
  return (int)(4 * spec.N);
}

inline LatticeField sampleData(const GaussianDataSpec& spec) {
  spec.validate();
  LatticeField f(spec.d, dataBoxFor(spec));
  if (spec.kind == DataKind::PowerLaw) {
    double N = (double)spec.N;
    f.forEach([&](const KVec& k) {
      double b = bracket(k);
      if (b <= N)
        f.at(k) = complexGaussian(spec.seed, kDataTag, k) * std::pow(b, -spec.alpha);
    });
  } else {
    double amp = std::pow((double)spec.N, -spec.alpha);
    double invN2 = 1.0 / ((double)spec.N * spec.N);
    f.forEach([&](const KVec& k) {
      double phi = homogeneousProfile((double)normSq(k) * invN2);
      f.at(k) = complexGaussian(spec.seed, kDataTag, k) * (amp * phi);
    });
  }
  return f;
}

// Polar decomposition g_k = rho_k eta_k with rho_k >= 0, |eta_k| = 1.
struct ModulusDecomposition {
  LatticeField rho;   // stored in the real part
  LatticeField eta;
  bool hadZero = false;  // measure-zero convention: eta = 1 at exact zeros
};

inline ModulusDecomposition decomposeModulus(const LatticeField& f) {
  ModulusDecomposition out{LatticeField(f.d, f.K), LatticeField(f.d, f.K), false};
  f.forEach([&](const KVec& k) {
    double r = std::abs(f.at(k));
    out.rho.at(k) = r;
    if (r == 0.0) {
      out.eta.at(k) = 1.0;
      out.hadZero = true;
    } else {
      out.eta.at(k) = f.at(k) / r;
    }
  });
  return out;
}

// Expected truncated mass: sigma_N = sum_{<k> <= N} <k>^{-2 alpha}, exact.
inline double sigmaN(int d, double alpha, long N) {
  requireDyadic(N, "truncation N");
  int K = (int)std::floor(std::sqrt((double)N * N - 1.0));
  double sum = 0;
  forEachK(d, K, [&](const KVec& k) {
    double b2 = 1.0 + (double)normSq(k);
    if (b2 <= (double)N * N) sum += std::pow(b2, -alpha);
  });
  return sum;
}

struct MassStats {
  double sigma = 0;       // deterministic E mass
  double mass = 0;        // sample mass m_N
  double centered = 0;    // m_N* = m_N - sigma_N
};

inline MassStats massStats(const LatticeField& f, const GaussianDataSpec& spec) {
  MassStats s;
  s.sigma = sigmaN(spec.d, spec.alpha, spec.N);
  double N = (double)spec.N;
  f.forEach([&](const KVec& k) {
    if (bracket(k) <= N) s.mass += std::norm(f.at(k));
  });
  s.centered = s.mass - s.sigma;
  return s;
}

}  // namespace nlslab

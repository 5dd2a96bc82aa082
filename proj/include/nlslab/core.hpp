#pragma once

// Shared scalar types, lattice-vector helpers and the counter-based RNG.
//
// All randomness in the library is a pure function of a 64-bit key built by
// hashing (seed, tag, lattice point, lane).  This keeps every sample
// reproducible bit-for-bit and makes per-mode values independent of the
// truncation: projecting a high-truncation sample equals the low one.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlslab {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// A lattice point in Z^d, d <= 2.  y is ignored (and kept 0) when d == 1.
struct KVec {
  int x = 0;
  int y = 0;
  friend bool operator==(const KVec&, const KVec&) = default;
};

inline long normSq(const KVec& k) {
  return (long)k.x * k.x + (long)k.y * k.y;
}

// Japanese bracket <k> = (1 + |k|^2)^{1/2}.
inline double bracket(const KVec& k) {
  return std::sqrt(1.0 + (double)normSq(k));
}

inline bool isDyadic(long n) { return n >= 1 && (n & (n - 1)) == 0; }

inline void requireDyadic(long n, const char* what) {
  if (!isDyadic(n))
    throw std::invalid_argument(std::string(what) + " must be a dyadic integer >= 1, got " +
                                std::to_string(n));
}

// ---------------------------------------------------------------------------
// Counter-based randomness (splitmix64 finalizer over a mixed key).

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t hashKey(std::uint64_t seed, std::uint64_t tag, const KVec& k,
                             std::uint64_t lane = 0) {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ull);
  h = mix64(h ^ tag);
  h = mix64(h ^ (std::uint64_t)(std::uint32_t)k.x);
  h = mix64(h ^ (std::uint64_t)(std::uint32_t)k.y);
  return mix64(h ^ lane);
}

// Uniform in (0, 1]: top 53 bits, shifted away from zero so log() is safe.
inline double u01(std::uint64_t h) {
  return (double)((h >> 11) + 1) * 0x1p-53;
}

// Standard complex Gaussian with E|g|^2 = 1 (Re, Im independent N(0,1/2)).
inline cplx complexGaussian(std::uint64_t seed, std::uint64_t tag, const KVec& k) {
  double r = std::sqrt(-std::log(u01(hashKey(seed, tag, k, 0))));
  double t = 2.0 * pi * u01(hashKey(seed, tag, k, 1));
  return {r * std::cos(t), r * std::sin(t)};
}

// Uniform on the unit circle.
inline cplx unitCircle(std::uint64_t seed, std::uint64_t tag, const KVec& k) {
  double t = 2.0 * pi * u01(hashKey(seed, tag, k, 2));
  return {std::cos(t), std::sin(t)};
}

// Uniform integer in [0, n).
inline std::uint64_t uniformIndex(std::uint64_t h, std::uint64_t n) {
  return (std::uint64_t)(u01(h) * (double)n) % n;
}

}  // namespace nlslab

#pragma once

// Truncated Fourier lattice: dense coefficient fields on the box |k|_inf <= K,
// dyadic projections, Sobolev norms, and FFT conversion between coefficients
// and collocation values on [0,2pi)^d with basis e^{ik.x}.

#include <fftw3.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "core.hpp"

namespace nlslab {

struct LatticeField {
  int d = 1;                // spatial dimension, 1 or 2
  int K = 0;                // coefficients stored for |k|_inf <= K
  std::vector<cplx> a;      // dense, (2K+1)^d entries

  LatticeField() = default;
  LatticeField(int d_, int K_) : d(d_), K(K_), a(sizeFor(d_, K_)) {
    if (d < 1 || d > 2) throw std::invalid_argument("dimension must be 1 or 2");
    if (K < 0) throw std::invalid_argument("band limit must be >= 0");
  }

  static std::size_t sizeFor(int d, int K) {
    std::size_t side = 2 * (std::size_t)K + 1;
    return d == 1 ? side : side * side;
  }
  int side() const { return 2 * K + 1; }

  bool inBox(const KVec& k) const {
    return std::abs(k.x) <= K && (d == 1 ? k.y == 0 : std::abs(k.y) <= K);
  }
  std::size_t idx(const KVec& k) const {
    return d == 1 ? (std::size_t)(k.x + K)
                  : (std::size_t)(k.y + K) * side() + (k.x + K);
  }
  cplx& at(const KVec& k) { return a[idx(k)]; }
  const cplx& at(const KVec& k) const { return a[idx(k)]; }

  // Visit every stored lattice point.
  template <class F>
  void forEach(F&& fn) const {
    if (d == 1) {
      for (int x = -K; x <= K; ++x) fn(KVec{x, 0});
    } else {
      for (int y = -K; y <= K; ++y)
        for (int x = -K; x <= K; ++x) fn(KVec{x, y});
    }
  }
};

// Visit the box |k|_inf <= K in dimension d without a field object.
template <class F>
inline void forEachK(int d, int K, F&& fn) {
  if (d == 1) {
    for (int x = -K; x <= K; ++x) fn(KVec{x, 0});
  } else {
    for (int y = -K; y <= K; ++y)
      for (int x = -K; x <= K; ++x) fn(KVec{x, y});
  }
}

enum class Proj { Pi, Delta };

// Pi_N keeps <k> <= N; Delta_N keeps N/2 < <k> <= N, with Delta_1 = Pi_1
// (the N=1/2 projection is the zero operator).
inline LatticeField project(const LatticeField& f, long N, Proj kind) {
  requireDyadic(N, "projection frequency");
  LatticeField g(f.d, f.K);
  double lo = (kind == Proj::Delta && N > 1) ? N / 2.0 : 0.0;
  f.forEach([&](const KVec& k) {
    double b = bracket(k);
    if (b <= (double)N && b > lo) g.at(k) = f.at(k);
  });
  return g;
}

inline double sobolevNorm(const LatticeField& f, double s) {
  double sum = 0;
  f.forEach([&](const KVec& k) {
    double m = std::abs(f.at(k));
    sum += std::pow(1.0 + (double)normSq(k), s) * m * m;
  });
  return std::sqrt(sum);
}

inline double massOf(const LatticeField& f) {
  double sum = 0;
  for (const cplx& c : f.a) sum += std::norm(c);
  return sum;
}

// Smallest {2,3,5,7}-smooth integer >= n (FFT-friendly size).
inline int niceGridSize(int n) {
  for (int g = std::max(n, 1);; ++g) {
    int m = g;
    for (int f : {2, 3, 5, 7})
      while (m % f == 0) m /= f;
    if (m == 1) return g;
  }
}

// Minimum alias-free grid for a degree-p monomial of a band-K field when the
// output band |k|_inf <= Kout is retained: products reach |k|_inf = pK and the
// circular wrap of any product mode must miss the retained band.
inline int minAliasFreeGrid(int K, int p, int Kout) {
  return p * K + Kout + 1;
}

// ---------------------------------------------------------------------------
// FFT engine (FFTW, double or single precision), cached in-place plans.

template <class Real>
struct FftApi;

template <>
struct FftApi<double> {
  using Cplx = fftw_complex;
  using Plan = fftw_plan;
  static void* alloc(std::size_t n) { return fftw_malloc(n * sizeof(Cplx)); }
  static void free(void* p) { fftw_free(p); }
  static Plan makePlan(int rank, const int* n, Cplx* buf, int sign) {
    return fftw_plan_dft(rank, n, buf, buf, sign, FFTW_MEASURE);
  }
  static void destroy(Plan p) { fftw_destroy_plan(p); }
  static void exec(Plan p) { fftw_execute(p); }
};

template <>
struct FftApi<float> {
  using Cplx = fftwf_complex;
  using Plan = fftwf_plan;
  static void* alloc(std::size_t n) { return fftwf_malloc(n * sizeof(Cplx)); }
  static void free(void* p) { fftwf_free(p); }
  static Plan makePlan(int rank, const int* n, Cplx* buf, int sign) {
    return fftwf_plan_dft(rank, n, buf, buf, sign, FFTW_MEASURE);
  }
  static void destroy(Plan p) { fftwf_destroy_plan(p); }
  static void exec(Plan p) { fftwf_execute(p); }
};

// FFTW's planner is not thread-safe; serialize plan creation globally.
inline std::mutex& fftPlannerMutex() {
  static std::mutex m;
  return m;
}

// One engine per thread.  toGrid is Fourier synthesis (coefficients to
// collocation values), fromGrid the normalized inverse.
template <class Real = double>
class GridEngine {
 public:
  using C = std::complex<Real>;

  GridEngine() = default;
  GridEngine(const GridEngine&) = delete;
  GridEngine& operator=(const GridEngine&) = delete;
  ~GridEngine() {
    for (auto& [key, e] : plans_) {
      FftApi<Real>::destroy(e.plan);
      FftApi<Real>::free(e.buf);
    }
  }

  // Raw buffer of the cached plan for (d, G, sign); contents are clobbered by
  // planning on first use, so fill after acquiring.
  C* buffer(int d, int G, int sign) { return entry(d, G, sign).buf; }
  void execute(int d, int G, int sign) { FftApi<Real>::exec(entry(d, G, sign).plan); }

  std::vector<C> toGrid(const LatticeField& f, int G) {
    if (G < 2 * f.K + 1) throw std::invalid_argument("grid too small for band limit");
    auto& e = entry(f.d, G, FFTW_BACKWARD);
    std::size_t n = gridCount(f.d, G);
    std::fill(e.buf, e.buf + n, C{});
    f.forEach([&](const KVec& k) {
      e.buf[gridIdx(f.d, G, k)] = (C)f.at(k);
    });
    FftApi<Real>::exec(e.plan);
    return std::vector<C>(e.buf, e.buf + n);
  }

  LatticeField fromGrid(const std::vector<C>& grid, int d, int G, int Kout) {
    if (G < 2 * Kout + 1) throw std::invalid_argument("grid too small for band limit");
    if (grid.size() != gridCount(d, G)) throw std::invalid_argument("grid size mismatch");
    auto& e = entry(d, G, FFTW_FORWARD);
    std::copy(grid.begin(), grid.end(), e.buf);
    FftApi<Real>::exec(e.plan);
    LatticeField f(d, Kout);
    Real scale = Real(1) / (Real)gridCount(d, G);
    f.forEach([&](const KVec& k) {
      C v = e.buf[gridIdx(d, G, k)];
      f.at(k) = cplx(v.real() * scale, v.imag() * scale);
    });
    return f;
  }

  static std::size_t gridCount(int d, int G) {
    return d == 1 ? (std::size_t)G : (std::size_t)G * G;
  }
  static std::size_t gridIdx(int d, int G, const KVec& k) {
    auto wrap = [G](int v) { return (std::size_t)(((v % G) + G) % G); };
    return d == 1 ? wrap(k.x) : wrap(k.y) * G + wrap(k.x);
  }

 private:
  struct Entry {
    typename FftApi<Real>::Plan plan;
    C* buf;
  };

  Entry& entry(int d, int G, int sign) {
    auto key = std::tuple{d, G, sign};
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::size_t n = gridCount(d, G);
    C* buf = (C*)FftApi<Real>::alloc(n);
    int dims[2] = {G, G};
    typename FftApi<Real>::Plan p;
    {
      std::lock_guard<std::mutex> lock(fftPlannerMutex());
      p = FftApi<Real>::makePlan(d, dims, (typename FftApi<Real>::Cplx*)buf, sign);
    }
    return plans_.emplace(key, Entry{p, buf}).first->second;
  }

  std::map<std::tuple<int, int, int>, Entry> plans_;
};

// ---------------------------------------------------------------------------
// Flat (k, re, im) serialization for golden-file tests.

inline void saveField(const LatticeField& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "# d " << f.d << " K " << f.K << "\n";
  out.precision(17);
  f.forEach([&](const KVec& k) {
    const cplx& c = f.at(k);
    out << k.x << "," << k.y << "," << c.real() << "," << c.imag() << "\n";
  });
}

inline LatticeField loadField(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string header;
  std::getline(in, header);
  int d = 0, K = -1;
  {
    std::istringstream hs(header);
    std::string hash, word;
    hs >> hash >> word >> d >> word >> K;
  }
  if (d < 1 || K < 0) throw std::runtime_error("bad field header in " + path);
  LatticeField f(d, K);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    KVec k;
    double re, im;
    ls >> k.x >> k.y >> re >> im;
    f.at(k) = cplx(re, im);
  }
  return f;
}

}  // namespace nlslab

#include <doctest.h>

#include <nlslab/lattice.hpp>

#include "oracles.hpp"

using namespace nlslab;

namespace {

LatticeField randomField(int d, int K, std::uint64_t seed) {
  LatticeField f(d, K);
  f.forEach([&](const KVec& k) { f.at(k) = complexGaussian(seed, 0xf1e1d, k); });
  return f;
}

double relDiff(const LatticeField& a, const LatticeField& b) {
  double num = 0, den = 0;
  REQUIRE(a.d == b.d);
  int K = std::min(a.K, b.K);
  forEachK(a.d, std::max(a.K, b.K), [&](const KVec& k) {
    cplx va = (std::abs(k.x) <= a.K && (a.d == 1 || std::abs(k.y) <= a.K)) ? a.at(k) : cplx(0);
    cplx vb = (std::abs(k.x) <= b.K && (b.d == 1 || std::abs(k.y) <= b.K)) ? b.at(k) : cplx(0);
    num += std::norm(va - vb);
    den += std::norm(vb);
  });
  (void)K;
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

TEST_CASE("bracket values") {
  CHECK(bracket(KVec{0, 0}) == doctest::Approx(1.0));
  CHECK(bracket(KVec{3, 4}) == doctest::Approx(std::sqrt(26.0)));
  CHECK(bracket(KVec{2, 0}) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("projection keeps the right modes") {
  LatticeField f = randomField(1, 4, 7);
  LatticeField p1 = project(f, 1, Proj::Pi);
  // Only k = 0 has <k> <= 1.
  p1.forEach([&](const KVec& k) {
    if (k.x == 0)
      CHECK(p1.at(k) == f.at(k));
    else
      CHECK(p1.at(k) == cplx(0));
  });

  LatticeField full = project(f, 8, Proj::Pi);
  f.forEach([&](const KVec& k) { CHECK(full.at(k) == f.at(k)); });

  CHECK_THROWS(project(f, 3, Proj::Pi));
}

TEST_CASE("Delta_N = Pi_N - Pi_{N/2}, Delta_1 = Pi_1") {
  LatticeField f = randomField(2, 5, 11);
  for (long N : {2L, 4L}) {
    LatticeField delta = project(f, N, Proj::Delta);
    LatticeField hi = project(f, N, Proj::Pi);
    LatticeField lo = project(f, N / 2, Proj::Pi);
    f.forEach([&](const KVec& k) {
      CHECK(delta.at(k) == hi.at(k) - lo.at(k));
    });
  }
  LatticeField d1 = project(f, 1, Proj::Delta);
  LatticeField p1 = project(f, 1, Proj::Pi);
  f.forEach([&](const KVec& k) { CHECK(d1.at(k) == p1.at(k)); });
}

TEST_CASE("projection is idempotent and nested") {
  LatticeField f = randomField(1, 8, 3);
  LatticeField a = project(project(f, 4, Proj::Pi), 4, Proj::Pi);
  LatticeField b = project(f, 4, Proj::Pi);
  f.forEach([&](const KVec& k) { CHECK(a.at(k) == b.at(k)); });

  LatticeField c = project(project(f, 8, Proj::Pi), 2, Proj::Pi);
  LatticeField d = project(project(f, 2, Proj::Pi), 8, Proj::Pi);
  LatticeField e = project(f, 2, Proj::Pi);
  f.forEach([&](const KVec& k) {
    CHECK(c.at(k) == e.at(k));
    CHECK(d.at(k) == e.at(k));
  });
}

TEST_CASE("Delta blocks at distinct frequencies are orthogonal") {
  LatticeField f = randomField(2, 8, 5);
  for (long N : {2L, 4L, 8L}) {
    for (long M : {2L, 4L, 8L}) {
      if (N == M) continue;
      LatticeField a = project(f, N, Proj::Delta);
      LatticeField b = project(f, M, Proj::Delta);
      cplx ip = 0;
      f.forEach([&](const KVec& k) { ip += a.at(k) * std::conj(b.at(k)); });
      CHECK(std::abs(ip) == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("Sobolev norm values") {
  LatticeField z(1, 3);
  CHECK(sobolevNorm(z, 1.5) == 0.0);
  z.at(KVec{0, 0}) = 3.0;
  CHECK(sobolevNorm(z, -2.0) == doctest::Approx(3.0));

  LatticeField f(1, 1);
  f.at(KVec{1, 0}) = 1.0;
  f.at(KVec{-1, 0}) = 1.0;
  CHECK(sobolevNorm(f, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("grid roundtrip and Parseval") {
  GridEngine<double> eng;
  LatticeField f = randomField(2, 6, 13);
  int G = 2 * f.K + 1;
  auto grid = eng.toGrid(f, G);
  LatticeField back = eng.fromGrid(grid, f.d, G, f.K);
  CHECK(relDiff(back, f) < 1e-12);

  // Parseval: grid mean square equals coefficient mass.
  double gridMs = 0;
  for (auto& v : grid) gridMs += std::norm(v);
  gridMs /= (double)grid.size();
  CHECK(gridMs == doctest::Approx(sobolevNorm(f, 0) * sobolevNorm(f, 0)).epsilon(1e-10));

  // Constant field.
  LatticeField c(1, 2);
  c.at(KVec{0, 0}) = cplx(2.5, -1.0);
  auto cg = eng.toGrid(c, 7);
  for (auto& v : cg) CHECK(std::abs(v - cplx(2.5, -1.0)) < 1e-13);

  CHECK_THROWS(eng.toGrid(f, 2 * f.K));
}

TEST_CASE("grid product equals direct convolution") {
  GridEngine<double> eng;
  for (int d : {1, 2}) {
    int K = d == 1 ? 6 : 4;
    LatticeField f = randomField(d, K, 17), g = randomField(d, K, 19);
    int G = niceGridSize(4 * K + 1);
    auto fg = eng.toGrid(f, G), gg = eng.toGrid(g, G);
    for (std::size_t i = 0; i < fg.size(); ++i) fg[i] *= gg[i];
    LatticeField prod = eng.fromGrid(fg, d, G, 2 * K);
    CHECK(relDiff(prod, oracles::convolve(f, g)) < 1e-12);
  }
}

TEST_CASE("single precision grid roundtrip") {
  GridEngine<float> eng;
  LatticeField f = randomField(1, 8, 29);
  auto grid = eng.toGrid(f, 25);
  LatticeField back = eng.fromGrid(grid, 1, 25, 8);
  CHECK(relDiff(back, f) < 1e-6);
}

TEST_CASE("field CSV roundtrip") {
  LatticeField f = randomField(2, 3, 23);
  std::string path = "field_roundtrip.csv";
  saveField(f, path);
  LatticeField g = loadField(path);
  CHECK(g.d == f.d);
  CHECK(g.K == f.K);
  f.forEach([&](const KVec& k) { CHECK(std::abs(f.at(k) - g.at(k)) < 1e-15); });
  std::remove(path.c_str());
}

TEST_CASE("nice grid sizes are 7-smooth") {
  CHECK(niceGridSize(1) == 1);
  CHECK(niceGridSize(13) == 14);
  CHECK(niceGridSize(385) == 392);  // 385 = 5*7*11 has the forbidden factor 11
  CHECK(niceGridSize(392) == 392);
}

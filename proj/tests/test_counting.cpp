#include <doctest.h>

#include <nlslab/counting.hpp>

#include "oracles.hpp"

using namespace nlslab;

namespace {

// Full double-window sweep; shares nothing with the quadratic-root reduction.
long cubicBrute(const CubicInstance& inst) {
  long count = 0;
  forEachK(inst.d, (int)inst.M1, [&](const KVec& o1) {
    KVec k1{inst.c1.x + o1.x, inst.d == 2 ? inst.c1.y + o1.y : 0};
    forEachK(inst.d, (int)inst.M2, [&](const KVec& o2) {
      KVec k2{inst.c2.x + o2.x, inst.d == 2 ? inst.c2.y + o2.y : 0};
      KVec k3{inst.signs[2] * (inst.m.x - inst.signs[0] * k1.x - inst.signs[1] * k2.x),
              inst.signs[2] * (inst.m.y - inst.signs[0] * k1.y - inst.signs[1] * k2.y)};
      if (inst.quadratic) {
        long q = inst.signs[0] * normSq(k1) + inst.signs[1] * normSq(k2) +
                 inst.signs[2] * normSq(k3);
        if (q != inst.Gamma) return;
      }
      if (detail::cubicNoPairing(inst.signs, k1, k2, k3)) ++count;
    });
  });
  return count;
}

TensorAxis axis(char label, int sign, int lo, int hi) {
  return {label, sign, LatticeBox::interval(lo, hi)};
}

}  // namespace

TEST_CASE("cubic counts with hand-checked targets") {
  CubicInstance inst;
  inst.d = 1;
  inst.M1 = inst.M2 = 8;

  // m = 0, Gamma = 0 forces k1 k3 = 0, and either case pairs up: count 0.
  inst.m = {0, 0};
  inst.Gamma = 0;
  CHECK(enumerateCubic(inst) == 0);

  // m = 0, Gamma = 2 forces k1 k3 = -1: exactly (1,0,-1) and (-1,0,1).
  inst.Gamma = 2;
  CHECK(enumerateCubic(inst) == 2);

  // Shrinking the window below the solutions removes them.
  inst.c1 = {5, 0};
  inst.M1 = 2;
  CHECK(enumerateCubic(inst) == 0);
}

TEST_CASE("cubic enumeration matches the full window sweep") {
  for (int d : {1, 2}) {
    long M = d == 1 ? 12 : 6;
    int cases = 0;
    for (int trial = 0; trial < 60; ++trial) {
      CubicInstance inst;
      inst.d = d;
      inst.M1 = M;
      inst.M2 = M / 2 + trial % 3;
      std::uint64_t h = hashKey(17, 0xcc, KVec{trial, d});
      // Cycle through all odd sign patterns, random small targets and centers.
      const int patterns[4][3] = {{1, -1, 1}, {1, 1, -1}, {-1, 1, 1}, {-1, -1, -1}};
      for (int i = 0; i < 3; ++i) inst.signs[i] = patterns[trial % 4][i];
      inst.m.x = (int)uniformIndex(h, 9) - 4;
      if (d == 2) inst.m.y = (int)uniformIndex(mix64(h), 9) - 4;
      inst.Gamma = (long)uniformIndex(mix64(h + 1), 2 * 6 * M * M + 1) - 6 * M * M;
      inst.c1.x = (int)uniformIndex(mix64(h + 2), 7) - 3;
      inst.c2.x = (int)uniformIndex(mix64(h + 3), 7) - 3;
      if (d == 2) {
        inst.c1.y = (int)uniformIndex(mix64(h + 4), 7) - 3;
        inst.c2.y = (int)uniformIndex(mix64(h + 5), 7) - 3;
      }
      long fast = enumerateCubic(inst);
      CHECK(fast == cubicBrute(inst));
      if (fast > 0) ++cases;
    }
    CHECK(cases >= 5);  // the comparison must exercise nonempty sets
  }
}

TEST_CASE("degenerate quadratic branches") {
  // signs (+1, +1, -1) make the k2 equation linear; (+1, -1, +1) with matched
  // targets can make it vacuous (every k2 on a line).
  CubicInstance inst;
  inst.d = 2;
  inst.signs[0] = 1;
  inst.signs[1] = 1;
  inst.signs[2] = -1;
  inst.M1 = 5;
  inst.M2 = 5;
  inst.m = {1, -2};
  inst.Gamma = 3;
  CHECK(enumerateCubic(inst) == cubicBrute(inst));

  inst.signs[1] = -1;
  inst.signs[2] = 1;
  inst.m = {0, 0};
  inst.Gamma = 0;  // contains the fully degenerate per-k1 line
  CHECK(enumerateCubic(inst) == cubicBrute(inst));
}

TEST_CASE("sanity count without the quadratic constraint") {
  CubicInstance inst;
  inst.d = 1;
  inst.quadratic = false;
  inst.M1 = 6;
  inst.M2 = 4;
  inst.m = {2, 0};
  CHECK(enumerateCubic(inst) == cubicBrute(inst));
  // Without pairing exclusions the count would be the full window product;
  // with them it can only be smaller.
  CHECK(enumerateCubic(inst) <= (2 * inst.M1 + 1) * (2 * inst.M2 + 1));
}

TEST_CASE("cubic count respects negation symmetry and window monotonicity") {
  CubicInstance a;
  a.d = 1;
  a.M1 = a.M2 = 10;
  a.m = {3, 0};
  a.Gamma = 11;
  a.c1 = {1, 0};
  a.c2 = {-2, 0};
  CubicInstance b = a;
  b.m = {-3, 0};
  b.c1 = {-1, 0};
  b.c2 = {2, 0};
  CHECK(enumerateCubic(a) == enumerateCubic(b));

  CubicInstance wide = a;
  wide.M1 = 20;
  CHECK(enumerateCubic(wide) >= enumerateCubic(a));

  CubicInstance bad = a;
  bad.M1 = 0;
  CHECK_THROWS(enumerateCubic(bad));
}

TEST_CASE("basic enumeration matches the raw sweep") {
  SUBCASE("one block, two positions, d = 1") {
    BasicInstance inst;
    inst.d = 1;
    inst.blocks = {{{+1, {0, 0}, 2}, {-1, {1, 0}, 2}}};
    for (long Gamma : {0L, 1L, 3L, -5L}) {
      inst.Gamma = Gamma;
      CHECK(enumerateBasic(inst) == oracles::basicCountOracle(inst));
    }
  }

  SUBCASE("two blocks, three positions, d = 1") {
    BasicInstance inst;
    inst.d = 1;
    inst.blocks = {{{+1, {-1, 0}, 2}, {-1, {0, 0}, 1}}, {{+1, {1, 0}, 2}}};
    for (long Gamma : {0L, 2L, 4L}) {
      inst.Gamma = Gamma;
      CHECK(enumerateBasic(inst) == oracles::basicCountOracle(inst));
    }
  }

  SUBCASE("one block, two positions, d = 2") {
    BasicInstance inst;
    inst.d = 2;
    inst.blocks = {{{+1, {0, 0}, 1}, {-1, {0, 1}, 1}}};
    for (long Gamma : {0L, 1L, -2L}) {
      inst.Gamma = Gamma;
      CHECK(enumerateBasic(inst) == oracles::basicCountOracle(inst));
    }
  }
}

TEST_CASE("basic enumeration edge cases") {
  BasicInstance empty;
  CHECK(enumerateBasic(empty) == 1);
  empty.Gamma = 1;
  CHECK(enumerateBasic(empty) == 0);

  BasicInstance big;
  big.d = 1;
  big.blocks = {{{1, {0, 0}, 1}, {1, {0, 0}, 1}, {1, {0, 0}, 1}, {1, {0, 0}, 1},
                 {1, {0, 0}, 1}, {1, {0, 0}, 1}, {1, {0, 0}, 1}}};
  CHECK_THROWS(enumerateBasic(big));

  BasicInstance huge;
  huge.d = 2;
  huge.blocks = {{{1, {0, 0}, 4000}, {1, {0, 0}, 4000}}};
  CHECK_THROWS(enumerateBasic(huge));
}

TEST_CASE("exponent fit recovers an exact power law and drops zeros") {
  std::vector<long> Ms{4, 8, 16, 32, 64}, counts;
  for (long M : Ms) counts.push_back(M * M);
  ExponentFit r = fitExponent(Ms, counts);
  CHECK(r.fit.slope == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.dropped == 0);

  counts[1] = 0;
  r = fitExponent(Ms, counts);
  CHECK(r.dropped == 1);
  CHECK(r.fit.slope == doctest::Approx(2.0).epsilon(1e-10));

  CHECK_THROWS(fitExponent({1, 2}, {1, 2, 3}));
  CHECK_THROWS(fitExponent({1, 2, 3}, {0, 0, 0}));
}

TEST_CASE("worst-case driver dominates the structured targets") {
  CubicInstance inst;
  inst.d = 1;
  inst.M1 = inst.M2 = 16;
  inst.m = {0, 0};
  inst.Gamma = 2;
  long structured = enumerateCubic(inst);
  long worst = cubicWorstCase(1, 16, 12345);
  CHECK(worst >= structured);
  CHECK(worst == cubicWorstCase(1, 16, 12345));  // deterministic in the seed
}

TEST_CASE("Schur bound") {
  SUBCASE("identity and all-ones are tight") {
    LabeledTensor id({axis('a', 1, 0, 4), axis('b', -1, 0, 4)});
    for (std::size_t i = 0; i < 5; ++i) id.at({i, i}) = 1.0;
    CHECK(schurBound(id, "a", "b") == doctest::Approx(1.0));

    LabeledTensor ones({axis('a', 1, 0, 2), axis('b', 1, 0, 3)});
    for (auto& v : ones.val) v = 1.0;
    CHECK(schurBound(ones, "a", "b") == doctest::Approx(std::sqrt(12.0)));
  }

  SUBCASE("always dominates the operator norm") {
    for (int trial = 0; trial < 500; ++trial) {
      LabeledTensor h =
          randomTensor({axis('a', 1, -3, 3), axis('b', -1, -2, 4)}, 40000 + trial);
      CHECK(schurBound(h, "a", "b") >= opNorm(h, "a", "b") * (1 - 1e-12));
    }
    // Including a spectator axis on a rank-3 tensor.
    LabeledTensor h = randomTensor(
        {axis('a', 1, 0, 3), axis('b', -1, 0, 3), axis('e', 1, 0, 2)}, 90210);
    CHECK(schurBound(h, "a", "b") >= opNorm(h, "a", "b") * (1 - 1e-12));
  }
}

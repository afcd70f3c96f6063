#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "bindlab/rng.hpp"

using namespace bindlab;

TEST(Rng, SameSeedSameSequence) {
  Rng a(12345), b(12345);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.u64(), b.u64());
}

TEST(Rng, DifferentSeedsDiverge) {
  Rng a(1), b(2);
  int equal = 0;
  for (int i = 0; i < 64; ++i)
    if (a.u64() == b.u64()) ++equal;
  EXPECT_LT(equal, 4);
}

TEST(Rng, DeriveSeedSeparatesRolesAndRuns) {
  std::set<uint64_t> seen;
  for (uint64_t run = 0; run < 50; ++run)
    for (auto role : {"mask", "perms", "alice-order", "bob-order", "trim",
                      "alg", "instance", "trial", "stream"})
      seen.insert(derive_seed(99, run, role));
  EXPECT_EQ(seen.size(), 50u * 9u);
  EXPECT_EQ(derive_seed(99, 3, "mask"), derive_seed(99, 3, "mask"));
  EXPECT_NE(derive_seed(99, 3, "mask"), derive_seed(100, 3, "mask"));
}

TEST(Rng, DerivedMatchesDeriveSeed) {
  Rng a = Rng::derived(7, 2, "mask");
  Rng b(derive_seed(7, 2, "mask"));
  EXPECT_EQ(a.u64(), b.u64());
}

TEST(Rng, BelowStaysInRangeAndIsRoughlyUniform) {
  Rng r(42);
  int bucket[4] = {0, 0, 0, 0};
  for (int i = 0; i < 40000; ++i) {
    uint64_t v = r.below(4);
    ASSERT_LT(v, 4u);
    ++bucket[v];
  }
  for (int b = 0; b < 4; ++b) {
    EXPECT_GT(bucket[b], 9500);
    EXPECT_LT(bucket[b], 10500);
  }
  EXPECT_THROW(r.below(0), std::invalid_argument);
}

TEST(Rng, IntInInclusiveRange) {
  Rng r(7);
  bool lo_hit = false, hi_hit = false;
  for (int i = 0; i < 2000; ++i) {
    int v = r.int_in(3, 6);
    ASSERT_GE(v, 3);
    ASSERT_LE(v, 6);
    lo_hit |= v == 3;
    hi_hit |= v == 6;
  }
  EXPECT_TRUE(lo_hit);
  EXPECT_TRUE(hi_hit);
  EXPECT_EQ(r.int_in(5, 5), 5);
  EXPECT_THROW(r.int_in(5, 3), std::invalid_argument);
}

TEST(Rng, BitIsRoughlyFair) {
  Rng r(11);
  int ones = 0;
  for (int i = 0; i < 20000; ++i) ones += r.bit() ? 1 : 0;
  EXPECT_GT(ones, 9700);
  EXPECT_LT(ones, 10300);
}

TEST(Rng, Real01InUnitInterval) {
  Rng r(5);
  for (int i = 0; i < 1000; ++i) {
    double v = r.real01();
    ASSERT_GE(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(Rng, ShufflePreservesMultiset) {
  Rng r(9);
  std::vector<int> v{1, 2, 2, 3, 5, 8, 8, 8};
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  r.shuffle(v);
  std::sort(v.begin(), v.end());
  EXPECT_EQ(v, sorted);
}

TEST(Rng, PermutationIsBijection) {
  Rng r(3);
  for (int n : {1, 2, 7, 30}) {
    std::vector<int> p = r.permutation(n);
    ASSERT_EQ(static_cast<int>(p.size()), n);
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int v : p) {
      ASSERT_GE(v, 1);
      ASSERT_LE(v, n);
      ASSERT_FALSE(seen[static_cast<size_t>(v - 1)]);
      seen[static_cast<size_t>(v - 1)] = 1;
    }
  }
}

TEST(Rng, SampleIndicesDistinctAndBounded) {
  Rng r(13);
  for (int rep = 0; rep < 50; ++rep) {
    auto s = r.sample_indices(20, 7);
    ASSERT_EQ(s.size(), 7u);
    std::set<size_t> uniq(s.begin(), s.end());
    ASSERT_EQ(uniq.size(), 7u);
    for (size_t i : s) ASSERT_LT(i, 20u);
  }
  EXPECT_EQ(r.sample_indices(5, 5).size(), 5u);
  EXPECT_EQ(r.sample_indices(5, 0).size(), 0u);
  EXPECT_THROW(r.sample_indices(3, 4), std::invalid_argument);
}

TEST(Rng, SampleIndicesIsRoughlyUniform) {
  // Each index of [0,8) should land in a 4-subset about half the time.
  int hits[8] = {0};
  for (int rep = 0; rep < 8000; ++rep) {
    Rng r(derive_seed(777, static_cast<uint64_t>(rep), "trim"));
    for (size_t i : r.sample_indices(8, 4)) ++hits[i];
  }
  for (int i = 0; i < 8; ++i) {
    EXPECT_GT(hits[i], 3600);
    EXPECT_LT(hits[i], 4400);
  }
}

TEST(EdgeHash, DeterministicAndSpread) {
  EXPECT_EQ(edge_hash(1, 2, 3), edge_hash(1, 2, 3));
  std::set<uint64_t> seen;
  for (int u = 1; u <= 30; ++u)
    for (int v = 1; v <= 30; ++v) seen.insert(edge_hash(5, u, v));
  EXPECT_EQ(seen.size(), 900u);
  EXPECT_NE(edge_hash(5, 1, 2), edge_hash(6, 1, 2));
  EXPECT_NE(edge_hash(5, 1, 2), edge_hash(5, 2, 1));
}

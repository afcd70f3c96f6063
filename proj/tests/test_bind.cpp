#include <gtest/gtest.h>

#include <optional>

#include "bindlab/bind.hpp"

using namespace bindlab;

TEST(IndInstance, ValidateAndSuffix) {
  IndInstance ind{5, {1, 0, 1, 1, 0}, 3};
  EXPECT_NO_THROW(ind.validate());
  EXPECT_EQ(ind.suffix(), (std::vector<uint8_t>{1, 0}));
  IndInstance last{3, {0, 1, 1}, 3};
  EXPECT_TRUE(last.suffix().empty());

  EXPECT_THROW((IndInstance{5, {1, 0, 1}, 3}.validate()),
               std::invalid_argument);
  EXPECT_THROW((IndInstance{3, {1, 0, 1}, 0}.validate()),
               std::invalid_argument);
  EXPECT_THROW((IndInstance{3, {1, 0, 1}, 4}.validate()),
               std::invalid_argument);
  EXPECT_THROW((IndInstance{3, {1, 0, 2}, 1}.validate()),
               std::invalid_argument);
}

TEST(IndInstance, SampleIsValidAndSeedStable) {
  Rng a(5), b(5);
  IndInstance i1 = IndInstance::sample(25, a);
  IndInstance i2 = IndInstance::sample(25, b);
  EXPECT_NO_THROW(i1.validate());
  EXPECT_EQ(i1.V, i2.V);
  EXPECT_EQ(i1.l, i2.l);
}

TEST(AnchorMap, PositionAnchorAreInverse) {
  // frozen spot values for side n - k = 5
  EXPECT_EQ(anchor_of(9, 4, 1), (std::pair<int, int>{1, 1}));
  EXPECT_EQ(anchor_of(9, 4, 13), (std::pair<int, int>{3, 3}));
  EXPECT_EQ(anchor_of(9, 4, 25), (std::pair<int, int>{5, 5}));
  EXPECT_EQ(anchor_of(9, 4, 21), (std::pair<int, int>{5, 1}));
  EXPECT_EQ(position_of(9, 4, 3, 3), 13);

  for (int n = 4; n <= 12; ++n)
    for (int k = 1; k < n; ++k) {
      int side = n - k;
      for (int l = 1; l <= side * side; ++l) {
        auto [x, y] = anchor_of(n, k, l);
        EXPECT_GE(x, 1);
        EXPECT_LE(x, side);
        EXPECT_GE(y, 1);
        EXPECT_LE(y, side);
        EXPECT_EQ(position_of(n, k, x, y), l);
      }
    }
  EXPECT_THROW(anchor_of(9, 4, 0), std::invalid_argument);
  EXPECT_THROW(anchor_of(9, 4, 26), std::invalid_argument);
}

TEST(WindowBits, AnchorIsUnreadable) {
  IndexWindow w{9, 4, 3, 3};
  WindowBits wb(w);
  EXPECT_THROW(wb.at(3, 3), std::out_of_range);
  EXPECT_THROW(wb.set(3, 3, true), std::out_of_range);
  EXPECT_THROW(wb.at(2, 3), std::out_of_range);   // outside the window
  EXPECT_THROW(wb.at(7, 3), std::out_of_range);
  EXPECT_NO_THROW(wb.set(3, 4, true));
  EXPECT_TRUE(wb.at(3, 4));
  EXPECT_FALSE(wb.at(6, 6));
}

TEST(WindowBits, FromMatrixMirrorsEntries) {
  Rng r(17);
  BitMatrix a = BitMatrix::random(9, r);
  IndexWindow w{9, 4, 2, 5};
  WindowBits wb = WindowBits::from_matrix(a, w);
  for (auto [i, j] : w.indices()) EXPECT_EQ(wb.at(i, j), a.get(i, j));
}

TEST(Packing, SuffixSufficiencyHoldsEverywhere) {
  for (int n = 4; n <= 12; ++n)
    for (int k = 1; k < n; ++k) {
      int side = n - k;
      for (int l = 1; l <= side * side; ++l)
        EXPECT_TRUE(verify_suffix_sufficiency(n, k, l))
            << "n=" << n << " k=" << k << " l=" << l;
    }
}

TEST(Packing, ColumnMajorLayoutLeaksSomewhere) {
  // Same anchor map, transposed bit layout: for l = 21 = anchor (5,1) of the
  // 5 x 5 region, window cell (5,2) carries linear index 10 <= 21.
  int n = 9, k = 4, side = n - k;
  PackingLayout col_major = [side](int i, int j) -> std::optional<int> {
    if (i < 1 || j < 1 || i > side || j > side) return std::nullopt;
    return i + side * (j - 1);
  };
  EXPECT_FALSE(verify_suffix_sufficiency(n, k, 21, col_major));
  bool all_pass = true;
  for (int l = 1; l <= side * side; ++l)
    all_pass = all_pass && verify_suffix_sufficiency(n, k, l, col_major);
  EXPECT_FALSE(all_pass);
}

TEST(Packing, MatrixHoldsBitsRowMajorAndZeroOutside) {
  Rng r(23);
  int n = 10, k = 4, side = n - k;
  IndInstance ind = IndInstance::sample(side * side, r);
  BitMatrix a = pack_matrix(ind, n, k);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i <= side && j <= side)
        EXPECT_EQ(a.get(i, j),
                  ind.V[static_cast<size_t>(position_of(n, k, i, j) - 1)] != 0);
      else
        EXPECT_FALSE(a.get(i, j));
    }
  IndInstance wrong{9, std::vector<uint8_t>(9, 0), 1};
  EXPECT_THROW(pack_matrix(wrong, 10, 4), std::invalid_argument);
}

TEST(Packing, FullRoundTripExhaustive) {
  for (int n = 4; n <= 12; ++n)
    for (int k = 1; k < n; ++k) {
      int side = n - k;
      for (int l = 1; l <= side * side; ++l) {
        Rng r(derive_seed(4000, static_cast<uint64_t>(n * 1000 + k * 50 + l),
                          "gen-ind"));
        IndInstance ind = IndInstance::sample(side * side, r);
        ind.l = l;
        BindInstance inst = pack_ind_to_bind(ind, n, k);
        ASSERT_EQ(inst.truth(), static_cast<int>(ind.V[static_cast<size_t>(l - 1)]))
            << "n=" << n << " k=" << k << " l=" << l;
        auto [x, y] = anchor_of(n, k, l);
        ASSERT_EQ(inst.x, x);
        ASSERT_EQ(inst.y, y);
        // Bob's suffix-built window must equal the matrix window everywhere.
        IndexWindow w{n, k, x, y};
        WindowBits direct = WindowBits::from_matrix(inst.A, w);
        for (auto [i, j] : w.indices())
          ASSERT_EQ(inst.window.at(i, j), direct.at(i, j))
              << "n=" << n << " k=" << k << " l=" << l << " at (" << i << ","
              << j << ")";
      }
    }
}

TEST(BindInstanceTest, SampleIsConsistent) {
  Rng r(29);
  for (int t = 0; t < 20; ++t) {
    BindInstance inst = BindInstance::sample(12, 5, r);
    EXPECT_NO_THROW(inst.validate());
    EXPECT_LE(inst.x, 12 - 5);
    EXPECT_LE(inst.y, 12 - 5);
    EXPECT_EQ(inst.truth(), inst.A.get(inst.x, inst.y) ? 1 : 0);
  }
}

TEST(BindInstanceTest, ValidateCatchesWindowMismatch) {
  Rng r(31);
  BindInstance inst = BindInstance::sample(10, 4, r);
  // flip one window bit out from under the matrix
  auto idx = IndexWindow{10, 4, inst.x, inst.y}.indices();
  auto [i, j] = idx.front();
  inst.window.set(i, j, !inst.window.at(i, j));
  EXPECT_THROW(inst.validate(), std::invalid_argument);
}

TEST(BindInstanceTest, ValidateCatchesBadShape) {
  Rng r(33);
  BindInstance inst = BindInstance::sample(10, 4, r);
  inst.k = 10;  // k must stay below n
  EXPECT_THROW(inst.validate(), std::invalid_argument);
  inst.k = 4;
  inst.x = 7;  // anchor must stay inside [n-k]^2
  EXPECT_THROW(inst.validate(), std::invalid_argument);
}

TEST(Views, ExposeTheRightSides) {
  Rng r(37);
  BindInstance inst = BindInstance::sample(9, 3, r);
  AliceView av = inst.alice_view();
  EXPECT_EQ(av.n, 9);
  EXPECT_EQ(av.k, 3);
  EXPECT_TRUE(av.A == inst.A);
  BobView bv = inst.bob_view();
  EXPECT_EQ(bv.x, inst.x);
  EXPECT_EQ(bv.y, inst.y);
  EXPECT_THROW(bv.window.at(bv.x, bv.y), std::out_of_range);
}

TEST(MessageBits, DeclaredOverridesRaw) {
  Message m;
  m.bytes = {1, 2, 3};
  EXPECT_EQ(m.bits(), 24u);
  m.declared_bits = 7;
  EXPECT_EQ(m.bits(), 7u);
}

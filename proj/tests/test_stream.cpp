#include <gtest/gtest.h>

#include <sstream>

#include "bindlab/stream.hpp"

using namespace bindlab;

TEST(StreamValidate, AcceptsInsertThenDelete) {
  GraphStream s{StreamKind::bipartite, 4, {{1, 2, true}, {1, 2, false}}};
  EXPECT_TRUE(validate_stream(s).empty());
  EXPECT_TRUE(stream_is_valid(s));
}

TEST(StreamValidate, FlagsDeleteOfAbsentEdge) {
  GraphStream s{StreamKind::bipartite, 4, {{1, 2, false}}};
  auto v = validate_stream(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].index, 1u);
  EXPECT_EQ(v[0].kind, "delete-absent");
}

TEST(StreamValidate, FlagsDuplicateInsert) {
  GraphStream s{StreamKind::bipartite, 4, {{1, 2, true}, {1, 2, true}}};
  auto v = validate_stream(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].index, 2u);
  EXPECT_EQ(v[0].kind, "duplicate-insert");
}

TEST(StreamValidate, ReinsertAfterDeleteIsFine) {
  GraphStream s{StreamKind::bipartite, 4,
                {{1, 2, true}, {1, 2, false}, {1, 2, true}}};
  EXPECT_TRUE(validate_stream(s).empty());
}

TEST(StreamValidate, FlagsEndpointsOutOfRange) {
  GraphStream s{StreamKind::bipartite, 4, {{0, 2, true}, {1, 5, true}}};
  auto v = validate_stream(s);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].kind, "endpoint");
  EXPECT_EQ(v[1].kind, "endpoint");
  EXPECT_EQ(v[0].index, 1u);
  EXPECT_EQ(v[1].index, 2u);
}

TEST(StreamValidate, GeneralKindIsUnorderedAndLoopFree) {
  // (2,1) deletes the edge inserted as (1,2)
  GraphStream s{StreamKind::general, 4, {{1, 2, true}, {2, 1, false}}};
  EXPECT_TRUE(validate_stream(s).empty());

  GraphStream loop{StreamKind::general, 4, {{3, 3, true}}};
  auto v = validate_stream(loop);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, "self-loop");

  // bipartite reads (1,2) and (2,1) as distinct edges
  GraphStream bip{StreamKind::bipartite, 4, {{1, 2, true}, {2, 1, false}}};
  auto vb = validate_stream(bip);
  ASSERT_EQ(vb.size(), 1u);
  EXPECT_EQ(vb[0].kind, "delete-absent");
}

TEST(StreamValidate, FlagsOverlongStreams) {
  // n = 2 bipartite: 4 simple edges, so more than 8 updates is impossible
  // without repetition games.
  GraphStream s{StreamKind::bipartite, 2, {}};
  for (int rep = 0; rep < 2; ++rep)
    for (int u = 1; u <= 2; ++u)
      for (int v = 1; v <= 2; ++v) {
        s.updates.push_back({u, v, true});
        s.updates.push_back({u, v, false});
      }
  auto violations = validate_stream(s);  // 16 updates > 2 * 4 simple edges
  bool found = false;
  for (const auto& v : violations) found |= v.kind == "length";
  EXPECT_TRUE(found);
}

TEST(StreamValidate, MultipleViolationsAllReported) {
  GraphStream s{StreamKind::bipartite, 3,
                {{1, 1, true}, {1, 1, true}, {2, 2, false}, {9, 1, true}}};
  auto v = validate_stream(s);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0].index, 2u);
  EXPECT_EQ(v[1].index, 3u);
  EXPECT_EQ(v[2].index, 4u);
}

TEST(MaxSimpleEdges, BothKinds) {
  EXPECT_EQ(max_simple_edges(StreamKind::bipartite, 4), 16u);
  EXPECT_EQ(max_simple_edges(StreamKind::general, 4), 6u);
  EXPECT_EQ(max_simple_edges(StreamKind::general, 1), 0u);
}

TEST(StreamIO, RoundTrip) {
  GraphStream s{StreamKind::general, 6,
                {{1, 2, true}, {3, 4, true}, {1, 2, false}, {5, 6, true}}};
  std::stringstream ss;
  write_stream(ss, s);
  GraphStream back = read_stream(ss, StreamKind::general);
  EXPECT_EQ(back.n, s.n);
  EXPECT_EQ(back.kind, StreamKind::general);
  ASSERT_EQ(back.updates.size(), s.updates.size());
  for (size_t i = 0; i < s.updates.size(); ++i)
    EXPECT_EQ(back.updates[i], s.updates[i]);
}

TEST(StreamIO, RejectsMalformedInput) {
  std::stringstream bad_header("x 3");
  EXPECT_THROW(read_stream(bad_header, StreamKind::bipartite),
               std::runtime_error);
  std::stringstream bad_sign("3 1\n* 1 2\n");
  EXPECT_THROW(read_stream(bad_sign, StreamKind::bipartite),
               std::runtime_error);
  std::stringstream truncated("3 2\n+ 1 2\n");
  EXPECT_THROW(read_stream(truncated, StreamKind::bipartite),
               std::runtime_error);
}

TEST(RandomStream, AlwaysValidBothKinds) {
  for (uint64_t s = 1; s <= 20; ++s) {
    Rng r1(derive_seed(31, s, "gen-stream"));
    GraphStream bip = random_stream(StreamKind::bipartite, 7, r1);
    EXPECT_EQ(bip.kind, StreamKind::bipartite);
    EXPECT_TRUE(validate_stream(bip).empty()) << "seed " << s;

    Rng r2(derive_seed(32, s, "gen-stream"));
    GraphStream gen = random_stream(StreamKind::general, 9, r2, 0.7, 0.5);
    EXPECT_EQ(gen.kind, StreamKind::general);
    EXPECT_TRUE(validate_stream(gen).empty()) << "seed " << s;
  }
}

TEST(RandomStream, IsSeedDeterministic) {
  Rng a(71), b(71);
  GraphStream s1 = random_stream(StreamKind::bipartite, 6, a);
  GraphStream s2 = random_stream(StreamKind::bipartite, 6, b);
  ASSERT_EQ(s1.updates.size(), s2.updates.size());
  for (size_t i = 0; i < s1.updates.size(); ++i)
    EXPECT_EQ(s1.updates[i], s2.updates[i]);
}

TEST(RandomStream, DeleteFractionRespected) {
  Rng r(81);
  GraphStream s = random_stream(StreamKind::bipartite, 10, r, 0.5, 0.3);
  size_t inserts = 0, deletes = 0;
  for (const auto& up : s.updates) (up.insert ? inserts : deletes)++;
  EXPECT_EQ(deletes, static_cast<size_t>(0.3 * static_cast<double>(inserts)));
}

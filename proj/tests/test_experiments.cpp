#include <gtest/gtest.h>

#include <memory>
#include <sstream>

#include "bindlab/experiments.hpp"
#include "bindlab/full_cover.hpp"
#include "bindlab/store_all.hpp"

using namespace bindlab;

TEST(ReportRows, AllPassAndCsvShape) {
  std::vector<ReportRow> rows{
      {"exp", "n=4;seed=1", "metric-a", 0.5, 1.0, true},
      {"exp", "n=4;seed=1", "metric-b", 2.0, 1.5, false},
  };
  EXPECT_FALSE(all_pass(rows));
  rows[1].pass = true;
  EXPECT_TRUE(all_pass(rows));
  EXPECT_TRUE(all_pass({}));

  std::stringstream ss;
  rows[1].pass = false;
  write_report_csv(ss, rows);
  std::string out = ss.str();
  EXPECT_EQ(out, "experiment,params,metric,observed,bound,pass\n"
                 "exp,n=4;seed=1,metric-a,0.5,1,1\n"
                 "exp,n=4;seed=1,metric-b,2,1.5,0\n");
}

TEST(ParallelFor, CoversEveryIndexOnce) {
  for (int threads : {1, 3, 8}) {
    std::vector<int> hits(100, 0);
    parallel_for(threads, 100, [&](int i) { hits[static_cast<size_t>(i)]++; });
    for (int h : hits) EXPECT_EQ(h, 1);
  }
  parallel_for(4, 0, [](int) { FAIL(); });
}

TEST(Campaigns, ByteIdenticalAcrossThreadCounts) {
  auto run = [](int threads) {
    std::stringstream ss;
    write_report_csv(ss, verify_iso(16, 8, 12, 321, threads));
    return ss.str();
  };
  std::string one = run(1);
  EXPECT_EQ(one, run(1));
  EXPECT_EQ(one, run(3));

  auto run2 = [](int threads) {
    std::stringstream ss;
    write_report_csv(ss, verify_vc_size(16, 8, 12, 321, threads));
    return ss.str();
  };
  EXPECT_EQ(run2(1), run2(4));
}

TEST(Campaigns, IsoAndVcSizeHoldOnSmallParams) {
  EXPECT_TRUE(all_pass(verify_iso(16, 8, 25, 77, 1)));
  EXPECT_TRUE(all_pass(verify_vc_size(16, 8, 25, 77, 1)));
  auto rows = verify_vc_size(16, 8, 5, 77, 1);
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.metric, "cover-size");
    EXPECT_EQ(r.bound, 17.0);  // 2 * (16 - 8) + 1
  }
}

TEST(Campaigns, MatchingSizeWideWindowPasses) {
  auto rows = verify_matching_size(16, 8, 20, 0.5, 2.0, 0.5, 99, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].metric, "in-window-fraction");
  EXPECT_TRUE(rows[0].pass);
  EXPECT_THROW(verify_matching_size(8, 9, 5, 1, 1, 1, 1, 1),
               std::invalid_argument);
}

TEST(Campaigns, DiagZerosLooseFactorPasses) {
  auto rows = verify_diag_zeros(32, 24, 50, 0.5, 0.9, 5, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].pass);
  // factor 2.5 asks for 30 zeros on a 24-cell diagonal: unattainable
  auto hard = verify_diag_zeros(32, 24, 50, 2.5, 0.9, 5, 1);
  EXPECT_FALSE(hard[0].pass);
}

TEST(Campaigns, ClaimRateSmokeAndCorrectness) {
  auto rows = verify_claim_rate(24, 18, 1.0, 200, 0.5,
                                storeall_matching_factory(), "storeall", 7, 1);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].metric, "claim-rate-lo");
  EXPECT_EQ(rows[1].metric, "claim-rate-hi");
  EXPECT_EQ(rows[2].metric, "claims-correct");
  EXPECT_TRUE(rows[2].pass);           // exact algorithm never claims wrong
  EXPECT_EQ(rows[2].observed, 1.0);
  EXPECT_EQ(rows[0].observed, rows[1].observed);
}

TEST(Campaigns, CoverRateSmoke) {
  auto rows = verify_cover_rate(24, 21, 1.0, storeall_cover_factory(),
                                "storeall", 50, 0.5, 7, 1);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].metric, "conditional-runs");
  EXPECT_GE(rows[0].observed, 50.0);
  EXPECT_EQ(rows[2].metric, "wrong-answers");
  EXPECT_EQ(rows[2].observed, 0.0);  // exact cover never decides wrong
  EXPECT_TRUE(rows[2].pass);
}

TEST(Campaigns, GroupGuaranteesSmoke) {
  auto rows = verify_group_guarantees(12, 0.5, 20, 13, 1);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].metric, "cover-valid-fraction");
  EXPECT_TRUE(rows[0].pass);
  EXPECT_EQ(rows[0].observed, 1.0);
  EXPECT_EQ(rows[1].metric, "approx-ratio-violations");
  EXPECT_TRUE(rows[1].pass);
  EXPECT_EQ(rows[1].observed, 0.0);
}

TEST(SurvivingGraphs, FoldStreamsCorrectly) {
  GraphStream s{StreamKind::general, 5,
                {{1, 2, true}, {2, 3, true}, {2, 1, false}, {4, 5, true}}};
  GeneralGraph g = surviving_general_graph(s);
  EXPECT_EQ(g.edges, (std::vector<Edge>{{2, 3}, {4, 5}}));

  GraphStream b{StreamKind::bipartite, 5,
                {{1, 2, true}, {2, 1, true}, {1, 2, false}}};
  BipartiteGraph bg = surviving_bipartite_graph(b);
  EXPECT_EQ(bg.edges, (std::vector<Edge>{{2, 1}}));
}

TEST(SpaceCurve, SlopeFitsExactPowerLaws) {
  EXPECT_DOUBLE_EQ(loglog_slope({{4, 16}, {8, 64}, {16, 256}}), 2.0);
  EXPECT_DOUBLE_EQ(loglog_slope({{2, 2}, {4, 4}, {8, 8}}), 1.0);
  EXPECT_DOUBLE_EQ(loglog_slope({{2, 5}, {4, 5}}), 0.0);
  EXPECT_THROW(loglog_slope({{4, 16}}), std::invalid_argument);
  EXPECT_THROW(loglog_slope({{1, 16}, {4, 4}}), std::invalid_argument);
  EXPECT_THROW(loglog_slope({{4, 0}, {8, 4}}), std::invalid_argument);
}

TEST(SpaceCurve, StoreAllIsQuadraticFullCoverIsFlat) {
  auto quad = space_curve(
      [](int n) { return std::make_unique<StoreAll>(n); }, {64, 128}, 99);
  ASSERT_EQ(quad.points.size(), 2u);
  // header (24 bytes) + full bitmap: 8 * (24 + n*n/8) for a nonempty graph
  EXPECT_EQ(quad.points[0].bits, 4288u);
  EXPECT_EQ(quad.points[1].bits, 16576u);
  EXPECT_GT(quad.slope, 1.8);
  EXPECT_LT(quad.slope, 2.1);

  auto flat = space_curve(
      [](int n) { return std::make_unique<FullCover>(n); }, {64, 128, 256}, 99);
  EXPECT_DOUBLE_EQ(flat.slope, 0.0);  // header-only snapshots

  auto again = space_curve(
      [](int n) { return std::make_unique<StoreAll>(n); }, {64, 128}, 99);
  EXPECT_EQ(quad.points[0].bits, again.points[0].bits);
  EXPECT_EQ(quad.points[1].bits, again.points[1].bits);
}

TEST(EvaluateProtocol, VerbatimIsPerfectAndCountsMatrixBits) {
  VerbatimProtocol proto;
  ProtocolEvaluation ev = evaluate_protocol(proto, 16, 8, 30, 5150, 1, "");
  EXPECT_EQ(ev.summary.successes, 30);
  EXPECT_DOUBLE_EQ(ev.success_rate(), 1.0);
  EXPECT_DOUBLE_EQ(ev.summary.mean_bits, 256.0);
  EXPECT_EQ(ev.summary.max_bits, 256u);
  EXPECT_EQ(ev.summary.protocol_id, "verbatim");
  for (const auto& r : ev.rows) {
    ASSERT_TRUE(r.answer.has_value());
    EXPECT_EQ(*r.answer, r.truth);
    EXPECT_TRUE(r.correct);
    EXPECT_EQ(r.bits, 256u);
  }
}

TEST(EvaluateProtocol, FixedBitHoversAtHalf) {
  FixedBitProtocol zero(0);
  ProtocolEvaluation ev = evaluate_protocol(zero, 16, 8, 2000, 424242, 1, "");
  double rate = ev.success_rate();
  EXPECT_GT(rate, 0.45);
  EXPECT_LT(rate, 0.55);
  EXPECT_EQ(ev.summary.max_bits, 0u);

  FixedBitProtocol one(1);
  ProtocolEvaluation ev2 = evaluate_protocol(one, 16, 8, 2000, 424242, 1, "");
  // complementary answers on identical instances partition the trials
  EXPECT_EQ(ev.summary.successes + ev2.summary.successes, 2000);
}

TEST(EvaluateProtocol, ThreadCountDoesNotChangeRows) {
  VerbatimProtocol proto;
  ProtocolEvaluation a = evaluate_protocol(proto, 12, 6, 40, 777, 1, "");
  ProtocolEvaluation b = evaluate_protocol(proto, 12, 6, 40, 777, 4, "");
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].truth, b.rows[i].truth);
    EXPECT_EQ(a.rows[i].answer, b.rows[i].answer);
    EXPECT_EQ(a.rows[i].bits, b.rows[i].bits);
  }
}

TEST(EvaluateProtocol, CsvWritersIncludeFailLiteral) {
  std::vector<TrialRow> rows{
      {1, 1, 1, true, 100},
      {2, std::nullopt, 0, false, 50},
  };
  std::stringstream ss;
  write_trial_csv(ss, rows);
  EXPECT_EQ(ss.str(), "trial,answer,truth,correct,total_bits\n"
                      "1,1,1,1,100\n"
                      "2,fail,0,0,50\n");

  ProtocolSummary s;
  s.protocol_id = "verbatim";
  s.n = 16;
  s.k = 8;
  s.params = "a=1;b=2";
  s.trials = 30;
  s.successes = 30;
  s.mean_bits = 256.0;
  s.max_bits = 256;
  s.seed = 5150;
  std::stringstream ss2;
  write_summary_csv(ss2, s);
  EXPECT_EQ(ss2.str(),
            "protocol_id,n,k,params,trials,successes,mean_bits,max_bits,seed\n"
            "verbatim,16,8,a=1;b=2,30,30,256,256,5150\n");
}

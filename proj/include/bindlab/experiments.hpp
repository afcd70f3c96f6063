#pragma once

// Verification campaigns and protocol evaluation. Every campaign derives all
// of its randomness from (seed, index, role), stores per-index results into
// preallocated slots and aggregates sequentially, so output is byte-identical
// for any --threads value. Report rows carry (observed, bound, pass) so a
// near-miss is diagnosable from the CSV alone; params fields join their
// key=value pairs with ';' to keep the CSV comma-free.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "bindlab/bind.hpp"
#include "bindlab/graph.hpp"
#include "bindlab/matching.hpp"
#include "bindlab/matching_reduction.hpp"
#include "bindlab/stream.hpp"
#include "bindlab/vc_reduction.hpp"
#include "bindlab/vertex_cover.hpp"

namespace bindlab {

struct ReportRow {
  std::string experiment;
  std::string params;
  std::string metric;
  double observed = 0.0;
  double bound = 0.0;
  bool pass = false;
};

inline bool all_pass(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

inline void write_report_csv(std::ostream& os,
                             const std::vector<ReportRow>& rows) {
  os << "experiment,params,metric,observed,bound,pass\n";
  for (const auto& r : rows)
    os << r.experiment << ',' << r.params << ',' << r.metric << ','
       << format_double(r.observed) << ',' << format_double(r.bound) << ','
       << (r.pass ? 1 : 0) << '\n';
}

// Worker pool over [0, count); fn(i) must not throw and must touch only its
// own slot. threads <= 1 degrades to a plain loop.
template <class Fn>
inline void parallel_for(int threads, int count, Fn&& fn) {
  if (count <= 0) return;
  int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

// --- invariant campaigns -----------------------------------------------------

// Matching size of the survivor graph G(A') - E_del lands in
// [lo_factor * k/2, hi_factor * k/2 + 2(n-k)] in at least `quantile` of
// trials. Instance (A, x, y) and run randomness (X, P) are drawn fresh per
// trial.
inline std::vector<ReportRow> verify_matching_size(int n, int k, int trials,
                                                   double lo_factor,
                                                   double hi_factor,
                                                   double quantile,
                                                   uint64_t seed, int threads) {
  if (n < 2 || k < 1 || k >= n)
    throw std::invalid_argument("matching-size: need 1 <= k < n");
  if (trials < 1) throw std::invalid_argument("matching-size: trials < 1");
  double lo = lo_factor * k / 2.0;
  double hi = hi_factor * k / 2.0 + 2.0 * (n - k);
  std::vector<uint8_t> ok(static_cast<size_t>(trials), 0);
  parallel_for(threads, trials, [&](int t) {
    Rng ri = Rng::derived(seed, static_cast<uint64_t>(t) + 1, "instance");
    BindInstance inst = BindInstance::sample(n, k, ri);
    RunRandomness rr = run_randomness(n, t + 1, seed);
    BitMatrix aprime = permute(xor_mask(inst.A, rr.X), rr.P);
    for (auto [i, j] : unpermuted_deletions(inst.A, rr.X, inst.x, inst.y, k))
      aprime.set(rr.P.s1(i), rr.P.s2(j), false);
    double mu = static_cast<double>(maximum_matching(graph_of(aprime)).size());
    ok[static_cast<size_t>(t)] = (mu >= lo && mu <= hi) ? 1 : 0;
  });
  int hits = 0;
  for (uint8_t b : ok) hits += b;
  double frac = static_cast<double>(hits) / trials;
  std::string params = "n=" + std::to_string(n) + ";k=" + std::to_string(k) +
                       ";trials=" + std::to_string(trials) +
                       ";lo=" + format_double(lo_factor) +
                       ";hi=" + format_double(hi_factor) +
                       ";seed=" + std::to_string(seed);
  return {{"matching-size", params, "in-window-fraction", frac, quantile,
           frac >= quantile}};
}

// mu(G(A') - E_del) = mu(G - F) exactly, one row per trial.
inline std::vector<ReportRow> verify_iso(int n, int k, int trials,
                                         uint64_t seed, int threads) {
  if (n < 2 || k < 1 || k >= n)
    throw std::invalid_argument("iso: need 1 <= k < n");
  if (trials < 1) throw std::invalid_argument("iso: trials < 1");
  std::vector<std::pair<size_t, size_t>> mus(static_cast<size_t>(trials));
  parallel_for(threads, trials, [&](int t) {
    Rng ri = Rng::derived(seed, static_cast<uint64_t>(t) + 1, "instance");
    BindInstance inst = BindInstance::sample(n, k, ri);
    RunRandomness rr = run_randomness(n, t + 1, seed);
    auto F = unpermuted_deletions(inst.A, rr.X, inst.x, inst.y, k);
    BitMatrix aprime = permute(xor_mask(inst.A, rr.X), rr.P);
    for (auto [i, j] : F) aprime.set(rr.P.s1(i), rr.P.s2(j), false);
    BitMatrix gf = xor_mask(inst.A, rr.X);
    for (auto [i, j] : F) gf.set(i, j, false);
    mus[static_cast<size_t>(t)] = {maximum_matching(graph_of(aprime)).size(),
                                   maximum_matching(graph_of(gf)).size()};
  });
  std::string base = "n=" + std::to_string(n) + ";k=" + std::to_string(k) +
                     ";seed=" + std::to_string(seed);
  std::vector<ReportRow> rows;
  rows.reserve(static_cast<size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    auto [m1, m2] = mus[static_cast<size_t>(t)];
    rows.push_back({"iso", base + ";trial=" + std::to_string(t + 1), "mu-equal",
                    static_cast<double>(m1), static_cast<double>(m2), m1 == m2});
  }
  return rows;
}

// Exact minimum cover of G(A') - E_S is at most 2(n-k)+1, one row per trial.
inline std::vector<ReportRow> verify_vc_size(int n, int k, int trials,
                                             uint64_t seed, int threads) {
  if (n < 2 || k < 1 || k >= n)
    throw std::invalid_argument("vc-size: need 1 <= k < n");
  if (trials < 1) throw std::invalid_argument("vc-size: trials < 1");
  std::vector<size_t> sizes(static_cast<size_t>(trials), 0);
  parallel_for(threads, trials, [&](int t) {
    Rng ri = Rng::derived(seed, static_cast<uint64_t>(t) + 1, "instance");
    BindInstance inst = BindInstance::sample(n, k, ri);
    RunRandomness rr = run_randomness(n, t + 1, seed);
    BitMatrix surv =
        permute(survivor_matrix(inst.A, rr.X, inst.x, inst.y, k), rr.P);
    sizes[static_cast<size_t>(t)] =
        minimum_vertex_cover_bipartite(graph_of(surv)).size();
  });
  int bound = cover_bound(n, k);
  std::string base = "n=" + std::to_string(n) + ";k=" + std::to_string(k) +
                     ";seed=" + std::to_string(seed);
  std::vector<ReportRow> rows;
  rows.reserve(static_cast<size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    double s = static_cast<double>(sizes[static_cast<size_t>(t)]);
    rows.push_back({"vc-size", base + ";trial=" + std::to_string(t + 1),
                    "cover-size", s, static_cast<double>(bound),
                    s <= static_cast<double>(bound)});
  }
  return rows;
}

// Per-run report rate of the matching reduction against the closed-form
// window, plus the claims-correct check (every claim must match the true bit
// when the plugged algorithm is exact). Fresh instance per run.
inline std::vector<ReportRow> verify_claim_rate(
    int n, int k, double C, int runs, double tolerance,
    const MatchingAlgFactory& factory, const std::string& alg_name,
    uint64_t seed, int threads) {
  MatchConfig cfg{n, k, C, 1};
  cfg.validate();
  if (runs < 1) throw std::invalid_argument("claim-rate: runs < 1");
  struct RunOut {
    uint8_t q = 0, correct = 0;
  };
  std::vector<RunOut> out(static_cast<size_t>(runs));
  parallel_for(threads, runs, [&](int t) {
    int run = t + 1;
    Rng ri = Rng::derived(seed, static_cast<uint64_t>(run), "instance");
    BindInstance inst = BindInstance::sample(n, k, ri);
    Snapshot snap = alice_encode(inst.alice_view(), cfg, run, factory, seed);
    MatchRun mr = bob_run(inst.bob_view(), cfg, run, snap, seed);
    out[static_cast<size_t>(t)].q = mr.Q ? 1 : 0;
    out[static_cast<size_t>(t)].correct =
        (mr.claim && *mr.claim == inst.truth()) ? 1 : 0;
  });
  int claims = 0, correct = 0;
  for (const auto& r : out) {
    claims += r.q;
    correct += r.correct;
  }
  double rate = static_cast<double>(claims) / runs;
  double correct_frac =
      claims ? static_cast<double>(correct) / claims : 1.0;
  auto [lo, hi] = claim_prob_bounds(C, n, k);
  std::string params = "n=" + std::to_string(n) + ";k=" + std::to_string(k) +
                       ";C=" + format_double(C) +
                       ";runs=" + std::to_string(runs) + ";alg=" + alg_name +
                       ";seed=" + std::to_string(seed);
  return {
      {"claim-rate", params, "claim-rate-lo", rate, lo - tolerance,
       rate >= lo - tolerance},
      {"claim-rate", params, "claim-rate-hi", rate, hi + tolerance,
       rate <= hi + tolerance},
      {"claim-rate", params, "claims-correct", correct_frac, 1.0,
       correct == claims},
  };
}

// Conditional report rate of the cover reduction: among runs whose anchor is
// absent from A', Pr[Q=1] <= cover_prob_bound(C,n,k) + tolerance. Also counts
// wrong decided bits (must be zero for a never-erring algorithm). Total run
// count is sized so the conditional sample reaches its target with margin.
inline std::vector<ReportRow> verify_cover_rate(
    int n, int k, double C, const CoverAlgFactory& factory,
    const std::string& alg_name, int target_conditional, double tolerance,
    uint64_t seed, int threads) {
  VcConfig cfg{n, k, C, 1};
  cfg.validate();
  if (target_conditional < 1)
    throw std::invalid_argument("cover-rate: target < 1");
  int total = 2 * target_conditional + std::max(400, target_conditional / 5);
  struct RunOut {
    uint8_t conditional = 0, q = 0, wrong = 0;
  };
  std::vector<RunOut> out(static_cast<size_t>(total));
  parallel_for(threads, total, [&](int t) {
    int run = t + 1;
    Rng ri = Rng::derived(seed, static_cast<uint64_t>(run), "instance");
    BindInstance inst = BindInstance::sample(n, k, ri);
    Snapshot snap = alice_encode_vc(inst.alice_view(), cfg, run, factory, seed);
    VcRun vr = bob_run_vc(inst.bob_view(), cfg, run, snap, seed);
    RunOut& o = out[static_cast<size_t>(t)];
    o.conditional = (inst.truth() ^ vr.x_bit) == 0 ? 1 : 0;
    o.q = vr.Q ? 1 : 0;
    o.wrong = (!vr.Q && vr.x_bit != inst.truth()) ? 1 : 0;
  });
  int cond = 0, q_cond = 0, wrong = 0;
  for (const auto& r : out) {
    cond += r.conditional;
    if (r.conditional) q_cond += r.q;
    wrong += r.wrong;
  }
  double rate = cond ? static_cast<double>(q_cond) / cond : 0.0;
  double bound = cover_prob_bound(C, n, k) + tolerance;
  std::string params = "n=" + std::to_string(n) + ";k=" + std::to_string(k) +
                       ";C=" + format_double(C) +
                       ";target=" + std::to_string(target_conditional) +
                       ";alg=" + alg_name + ";seed=" + std::to_string(seed);
  return {
      {"cover-rate", params, "conditional-runs", static_cast<double>(cond),
       static_cast<double>(target_conditional), cond >= target_conditional},
      {"cover-rate", params, "cover-rate", rate, bound, rate <= bound},
      {"cover-rate", params, "wrong-answers", static_cast<double>(wrong), 0.0,
       wrong == 0},
  };
}

// Fraction of trials whose anchor diagonal of A xor X carries at least
// factor * k/2 zeros must reach `quantile`.
inline std::vector<ReportRow> verify_diag_zeros(int n, int k, int trials,
                                                double factor, double quantile,
                                                uint64_t seed, int threads) {
  if (n < 2 || k < 1 || k >= n)
    throw std::invalid_argument("diag-zeros: need 1 <= k < n");
  if (trials < 1) throw std::invalid_argument("diag-zeros: trials < 1");
  std::vector<uint8_t> ok(static_cast<size_t>(trials), 0);
  parallel_for(threads, trials, [&](int t) {
    // Same draws as BindInstance::sample, minus the window copy Bob's view
    // would carry -- only the diagonal matters here.
    Rng ri = Rng::derived(seed, static_cast<uint64_t>(t) + 1, "instance");
    BitMatrix a = BitMatrix::random(n, ri);
    int x = ri.int_in(1, n - k);
    int y = ri.int_in(1, n - k);
    Rng rx = Rng::derived(seed, static_cast<uint64_t>(t) + 1, "mask");
    BitMatrix x_mask = BitMatrix::random(n, rx);
    int zeros = 0;
    for (int q = 0; q < k; ++q)
      if (a.get(x + q, y + q) == x_mask.get(x + q, y + q)) ++zeros;
    ok[static_cast<size_t>(t)] = zeros >= factor * k / 2.0 ? 1 : 0;
  });
  int hits = 0;
  for (uint8_t b : ok) hits += b;
  double frac = static_cast<double>(hits) / trials;
  std::string params = "n=" + std::to_string(n) + ";k=" + std::to_string(k) +
                       ";trials=" + std::to_string(trials) +
                       ";factor=" + format_double(factor) +
                       ";seed=" + std::to_string(seed);
  return {{"diag-zeros", params, "diag-zeros-fraction", frac, quantile,
           frac >= quantile}};
}

// --- group-contraction guarantees -------------------------------------------

inline GeneralGraph surviving_general_graph(const GraphStream& s) {
  std::set<std::pair<int, int>> live;
  for (const auto& up : s.updates) {
    auto e = std::minmax(up.u, up.v);
    std::pair<int, int> key{e.first, e.second};
    if (up.insert)
      live.insert(key);
    else
      live.erase(key);
  }
  GeneralGraph g;
  g.nV = s.n;
  for (auto [u, v] : live) g.add_edge(u, v);
  return g;
}

inline BipartiteGraph surviving_bipartite_graph(const GraphStream& s) {
  std::set<std::pair<int, int>> live;
  for (const auto& up : s.updates) {
    std::pair<int, int> key{up.u, up.v};
    if (up.insert)
      live.insert(key);
    else
      live.erase(key);
  }
  BipartiteGraph g;
  g.nL = g.nR = s.n;
  for (auto [u, v] : live) g.edges.emplace_back(u, v);
  return g;
}

// Group contraction on random dynamic streams: the extracted set is a valid
// cover of the surviving graph every time, and never more than
// ceil(n^epsilon) times the exact minimum.
inline std::vector<ReportRow> verify_group_guarantees(int n, double epsilon,
                                                      int trials,
                                                      uint64_t seed,
                                                      int threads) {
  if (trials < 1) throw std::invalid_argument("group-guarantees: trials < 1");
  struct TrialOut {
    uint8_t valid = 0, ratio_ok = 0;
  };
  std::vector<TrialOut> out(static_cast<size_t>(trials));
  double factor = std::ceil(std::pow(static_cast<double>(n), epsilon));
  parallel_for(threads, trials, [&](int t) {
    Rng rs = Rng::derived(seed, static_cast<uint64_t>(t) + 1, "stream");
    GraphStream s = random_stream(StreamKind::general, n, rs);
    GroupContractionCover alg(n, epsilon);
    for (const auto& up : s.updates) alg.process(up);
    VertexCover cover = alg.extract_cover();
    GeneralGraph g = surviving_general_graph(s);
    TrialOut& o = out[static_cast<size_t>(t)];
    o.valid = is_valid_cover(g, cover) ? 1 : 0;
    size_t opt = minimum_vertex_cover_exact(g).size();
    o.ratio_ok =
        static_cast<double>(cover.size()) <= factor * static_cast<double>(opt)
            ? 1
            : 0;
  });
  int valid = 0, ratio_ok = 0;
  for (const auto& o : out) {
    valid += o.valid;
    ratio_ok += o.ratio_ok;
  }
  std::string params = "n=" + std::to_string(n) +
                       ";epsilon=" + format_double(epsilon) +
                       ";trials=" + std::to_string(trials) +
                       ";seed=" + std::to_string(seed);
  return {
      {"group-guarantees", params, "cover-valid-fraction",
       static_cast<double>(valid) / trials, 1.0, valid == trials},
      {"group-guarantees", params, "approx-ratio-violations",
       static_cast<double>(trials - ratio_ok), 0.0, ratio_ok == trials},
  };
}

// --- space curve -------------------------------------------------------------

struct SpacePoint {
  int n = 0;
  size_t bits = 0;
};

struct SpaceCurveResult {
  std::vector<SpacePoint> points;
  double slope = 0.0;
};

inline double loglog_slope(const std::vector<SpacePoint>& pts) {
  if (pts.size() < 2)
    throw std::invalid_argument("loglog_slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    if (p.n < 2 || p.bits == 0)
      throw std::invalid_argument("loglog_slope: degenerate point");
    double lx = std::log2(static_cast<double>(p.n));
    double ly = std::log2(static_cast<double>(p.bits));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double m = static_cast<double>(pts.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// One dense random stream per size, measure the final snapshot, fit the
// log-log slope of bits against n.
inline SpaceCurveResult space_curve(
    const std::function<std::unique_ptr<StreamingAlgorithm>(int)>& make,
    const std::vector<int>& ns, uint64_t seed) {
  SpaceCurveResult res;
  for (int n : ns) {
    auto alg = make(n);
    Rng rs = Rng::derived(seed, static_cast<uint64_t>(n), "stream");
    GraphStream s = random_stream(alg->kind(), alg->n(), rs);
    for (const auto& up : s.updates) alg->process(up);
    res.points.push_back({n, measure_space(alg->snapshot())});
  }
  res.slope = loglog_slope(res.points);
  return res;
}

// --- protocol evaluation ------------------------------------------------------

struct TrialRow {
  int trial = 0;
  std::optional<int> answer;
  int truth = 0;
  bool correct = false;
  size_t bits = 0;
};

struct ProtocolSummary {
  std::string protocol_id;
  int n = 0, k = 0;
  std::string params;
  int trials = 0;
  int successes = 0;
  double mean_bits = 0.0;
  size_t max_bits = 0;
  uint64_t seed = 0;
};

struct ProtocolEvaluation {
  std::vector<TrialRow> rows;
  ProtocolSummary summary;

  double success_rate() const {
    return summary.trials
               ? static_cast<double>(summary.successes) / summary.trials
               : 0.0;
  }
};

// Fresh instance per trial: uniform bit vector of length (n-k)^2, uniform
// query position, packed into the window form. A fail answer counts as
// incorrect.
inline ProtocolEvaluation evaluate_protocol(const OneWayProtocol& proto, int n,
                                            int k, int trials, uint64_t seed,
                                            int threads,
                                            const std::string& params_desc) {
  if (n < 2 || k < 1 || k >= n)
    throw std::invalid_argument("evaluate_protocol: need 1 <= k < n");
  if (trials < 1) throw std::invalid_argument("evaluate_protocol: trials < 1");
  ProtocolEvaluation ev;
  ev.rows.resize(static_cast<size_t>(trials));
  parallel_for(threads, trials, [&](int t) {
    Rng ri = Rng::derived(seed, static_cast<uint64_t>(t) + 1, "instance");
    IndInstance ind = IndInstance::sample((n - k) * (n - k), ri);
    BindInstance inst = pack_ind_to_bind(ind, n, k);
    uint64_t shared = derive_seed(seed, static_cast<uint64_t>(t) + 1, "trial");
    Message msg = proto.alice(inst.alice_view(), shared);
    std::optional<int> ans = proto.bob(inst.bob_view(), msg, shared);
    ev.rows[static_cast<size_t>(t)] = {t + 1, ans, inst.truth(),
                                       ans.has_value() && *ans == inst.truth(),
                                       msg.bits()};
  });
  ProtocolSummary& s = ev.summary;
  s.protocol_id = proto.id();
  s.n = n;
  s.k = k;
  s.params = params_desc;
  s.trials = trials;
  s.seed = seed;
  size_t total_bits = 0;
  for (const auto& r : ev.rows) {
    if (r.correct) ++s.successes;
    total_bits += r.bits;
    s.max_bits = std::max(s.max_bits, r.bits);
  }
  s.mean_bits = static_cast<double>(total_bits) / trials;
  return ev;
}

inline void write_trial_csv(std::ostream& os,
                            const std::vector<TrialRow>& rows) {
  os << "trial,answer,truth,correct,total_bits\n";
  for (const auto& r : rows) {
    os << r.trial << ',';
    if (r.answer)
      os << *r.answer;
    else
      os << "fail";
    os << ',' << r.truth << ',' << (r.correct ? 1 : 0) << ',' << r.bits
       << '\n';
  }
}

inline void write_summary_csv(std::ostream& os, const ProtocolSummary& s) {
  os << "protocol_id,n,k,params,trials,successes,mean_bits,max_bits,seed\n";
  os << s.protocol_id << ',' << s.n << ',' << s.k << ',' << s.params << ','
     << s.trials << ',' << s.successes << ',' << format_double(s.mean_bits)
     << ',' << s.max_bits << ',' << s.seed << '\n';
}

// --- control protocols --------------------------------------------------------

// Alice ships the whole matrix; Bob reads the anchor bit out of the message.
class VerbatimProtocol : public OneWayProtocol {
 public:
  std::string id() const override { return "verbatim"; }

  Message alice(const AliceView& in, uint64_t) const override {
    Message msg;
    int n = in.n;
    msg.bytes.assign((static_cast<size_t>(n) * n + 7) / 8, 0);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (in.A.get(i, j)) {
          size_t idx = static_cast<size_t>(i - 1) * n + (j - 1);
          msg.bytes[idx >> 3] |= static_cast<uint8_t>(1u << (idx & 7));
        }
    msg.declared_bits = static_cast<size_t>(n) * n;
    return msg;
  }

  std::optional<int> bob(const BobView& in, const Message& msg,
                         uint64_t) const override {
    size_t idx =
        static_cast<size_t>(in.x - 1) * in.n + (static_cast<size_t>(in.y) - 1);
    return (msg.bytes.at(idx >> 3) >> (idx & 7)) & 1;
  }
};

// Bob ignores everything and answers a fixed bit; calibrates the 50% floor.
class FixedBitProtocol : public OneWayProtocol {
 public:
  explicit FixedBitProtocol(int bit) : bit_(bit) {}

  std::string id() const override {
    return "fixedbit:" + std::to_string(bit_);
  }

  Message alice(const AliceView&, uint64_t) const override { return {}; }

  std::optional<int> bob(const BobView&, const Message&,
                         uint64_t) const override {
    return bit_;
  }

 private:
  int bit_;
};

}  // namespace bindlab

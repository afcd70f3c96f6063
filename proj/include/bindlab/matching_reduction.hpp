#pragma once

// Window problem -> maximum matching in an insertion-deletion stream.
//
// Per run r, shared randomness (all derived from (seed, r, role)) supplies a
// uniform mask X, a permutation pair P and the stream orders. Alice streams
// the edges of A' = P(A xor X) in random order through a matching algorithm
// and sends its snapshot. Bob rebuilds X and P, derives from his window view
// the surviving window edges
//   E_S    = permuted window positions carrying a 1 in A',
//   E_diag = those on the anchor diagonal (offsets 1..k-1),
//   E_del  = E_S minus E_diag,
// deletes E_del in random order, extracts a matching M', trims it to a
// uniform tau-subset M (tau = floor(0.99 k / 2C); fewer than tau edges means
// M is dropped entirely) and reports whether the anchor edge
// (sigma1(x), sigma2(y)) landed in M. A report claims A[x][y] = 1 - X[x][y];
// the final answer is the claim majority with ties answering 1.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bindlab/algorithms.hpp"
#include "bindlab/bind.hpp"
#include "bindlab/bit_matrix.hpp"
#include "bindlab/graph.hpp"
#include "bindlab/streaming.hpp"

namespace bindlab {

struct MatchConfig {
  int n = 0;
  int k = 0;
  double C = 1.0;
  int runs = 0;  // 0 = default ceil(100 C)

  int tau() const {
    return static_cast<int>(std::floor(0.99 * k / (2.0 * C)));
  }

  int effective_runs() const {
    return runs > 0 ? runs : static_cast<int>(std::ceil(100.0 * C));
  }

  void validate() const {
    if (n < 2 || k < 1 || k >= n)
      throw std::invalid_argument("match config: need 1 <= k < n");
    if (C < 1.0) throw std::invalid_argument("match config: need C >= 1");
    if (tau() < 1)
      throw std::invalid_argument("match config: tau < 1, k too small for C");
    if (effective_runs() < 1)
      throw std::invalid_argument("match config: need at least one run");
  }
};

// Algorithm slot: builds a fresh instance for side length n; the per-run seed
// feeds algorithms with internal randomness.
using MatchingAlgFactory =
    std::function<std::unique_ptr<StreamingAlgorithm>(int n, uint64_t seed)>;

inline MatchingAlgFactory storeall_matching_factory() {
  return [](int n, uint64_t) { return std::make_unique<StoreAll>(n); };
}

inline MatchingAlgFactory subsample_matching_factory(double p) {
  return [p](int n, uint64_t seed) {
    return std::make_unique<SubsampleMatching>(n, p, seed);
  };
}

struct RunRandomness {
  BitMatrix X;
  PermutationPair P;
};

inline RunRandomness run_randomness(int n, int run, uint64_t seed) {
  Rng rx = Rng::derived(seed, static_cast<uint64_t>(run), "mask");
  Rng rp = Rng::derived(seed, static_cast<uint64_t>(run), "perms");
  RunRandomness rr{BitMatrix::random(n, rx), PermutationPair::random(n, rp)};
  return rr;
}

// Alice: encode one run. Only reads her own view plus shared randomness.
inline Snapshot alice_encode(const AliceView& alice, const MatchConfig& cfg,
                             int run, const MatchingAlgFactory& factory,
                             uint64_t seed) {
  RunRandomness rr = run_randomness(cfg.n, run, seed);
  BitMatrix aprime = permute(xor_mask(alice.A, rr.X), rr.P);

  std::vector<EdgeUpdate> inserts;
  inserts.reserve(aprime.popcount());
  aprime.for_each_set([&](int i, int j) { inserts.push_back({i, j, true}); });
  Rng order = Rng::derived(seed, static_cast<uint64_t>(run), "alice-order");
  order.shuffle(inserts);

  auto alg = factory(cfg.n, derive_seed(seed, static_cast<uint64_t>(run), "alg"));
  if (!alg->supports_matching() || alg->kind() != StreamKind::bipartite)
    throw std::invalid_argument("matching reduction: need a bipartite matching algorithm");
  for (const auto& up : inserts) alg->process(up);
  return alg->snapshot();
}

struct MatchRun {
  bool Q = false;
  int x_bit = 0;             // X[x][y] of this run
  std::optional<int> claim;  // claimed value of A[x][y], set iff Q
  size_t message_bits = 0;
  size_t mprime_size = 0;
  size_t m_size = 0;
  // populated on request, for diagnostics and invariant campaigns
  std::vector<Edge> E_S, E_diag, E_del;
  Matching Mprime, M;
};

// Keep a uniform tau-subset; an undersized matching is discarded outright.
inline Matching trim(const Matching& mprime, const MatchConfig& cfg, int run,
                     uint64_t seed) {
  size_t tau = static_cast<size_t>(cfg.tau());
  if (mprime.size() < tau) return {};
  if (mprime.size() == tau) return mprime;
  Rng pick = Rng::derived(seed, static_cast<uint64_t>(run), "trim");
  Matching m;
  m.reserve(tau);
  for (size_t idx : pick.sample_indices(mprime.size(), tau))
    m.push_back(mprime[idx]);
  return m;
}

// Bob: decode one run from the snapshot alone. Only reads his own view
// (anchor + window bits) plus shared randomness.
inline MatchRun bob_run(const BobView& bob, const MatchConfig& cfg, int run,
                        const Snapshot& snap, uint64_t seed,
                        bool keep_artifacts = false) {
  RunRandomness rr = run_randomness(cfg.n, run, seed);
  MatchRun out;
  out.message_bits = measure_space(snap);
  out.x_bit = rr.X.get(bob.x, bob.y) ? 1 : 0;

  auto alg = restore_algorithm(snap);
  if (!alg->supports_matching() || alg->kind() != StreamKind::bipartite ||
      alg->n() != cfg.n)
    throw std::invalid_argument("matching reduction: snapshot has wrong shape");

  // Window entries of A' are window xor mask; Bob never sees the rest.
  IndexWindow w{cfg.n, cfg.k, bob.x, bob.y};
  std::vector<Edge> e_del;
  for (auto [i, j] : w.indices()) {
    bool present = bob.window.at(i, j) != rr.X.get(i, j);
    if (!present) continue;
    Edge e{rr.P.s1(i), rr.P.s2(j)};
    bool diag = (i - bob.x) == (j - bob.y);
    if (keep_artifacts) {
      out.E_S.push_back(e);
      if (diag) out.E_diag.push_back(e);
    }
    if (!diag) e_del.push_back(e);
  }

  Rng order = Rng::derived(seed, static_cast<uint64_t>(run), "bob-order");
  order.shuffle(e_del);
  for (auto [u, v] : e_del) alg->process({u, v, false});
  if (keep_artifacts) out.E_del = e_del;

  Matching mprime = alg->extract_matching();
  out.mprime_size = mprime.size();

  Matching m = trim(mprime, cfg, run, seed);
  out.m_size = m.size();

  Edge anchor{rr.P.s1(bob.x), rr.P.s2(bob.y)};
  out.Q = std::find(m.begin(), m.end(), anchor) != m.end();
  if (out.Q) out.claim = 1 - out.x_bit;
  if (keep_artifacts) {
    out.Mprime = std::move(mprime);
    out.M = std::move(m);
  }
  return out;
}

struct ClaimTally {
  int p0 = 0;  // claims that A[x][y] = 0
  int p1 = 0;  // claims that A[x][y] = 1
  int runs = 0;
  size_t total_bits = 0;
};

inline int decide(const ClaimTally& t) { return t.p1 >= t.p0 ? 1 : 0; }

struct SolveResult {
  int answer = 0;
  ClaimTally tally;
};

// Both halves of the protocol back to back over all runs.
inline SolveResult solve_bind(const BindInstance& inst, const MatchConfig& cfg,
                              const MatchingAlgFactory& factory, uint64_t seed) {
  cfg.validate();
  if (inst.n != cfg.n || inst.k != cfg.k)
    throw std::invalid_argument("solve_bind: instance/config mismatch");
  SolveResult res;
  AliceView av = inst.alice_view();
  BobView bv = inst.bob_view();
  for (int run = 1; run <= cfg.effective_runs(); ++run) {
    Snapshot snap = alice_encode(av, cfg, run, factory, seed);
    MatchRun mr = bob_run(bv, cfg, run, snap, seed);
    res.tally.total_bits += mr.message_bits;
    ++res.tally.runs;
    if (mr.claim) {
      if (*mr.claim == 1)
        ++res.tally.p1;
      else
        ++res.tally.p0;
    }
  }
  res.answer = decide(res.tally);
  return res;
}

// Test-side mirror of Bob's deletions in unpermuted coordinates:
// F = window positions carrying a 1 in A xor X, anchor diagonal excluded.
inline std::vector<std::pair<int, int>> unpermuted_deletions(
    const BitMatrix& a, const BitMatrix& x_mask, int x, int y, int k) {
  IndexWindow w{a.n(), k, x, y};
  std::vector<std::pair<int, int>> f;
  for (auto [i, j] : w.indices()) {
    if ((i - x) == (j - y)) continue;
    if (a.get(i, j) != x_mask.get(i, j)) f.emplace_back(i, j);
  }
  return f;
}

// Per-run report probability window: [0.99/2C - 2(n-k)/k, 0.99/2C].
inline std::pair<double, double> claim_prob_bounds(double C, double n, double k) {
  double hi = 0.99 / (2.0 * C);
  double lo = hi - 2.0 * (n - k) / k;
  return {lo, hi};
}

// OneWayProtocol wrapper: the message is the per-run snapshot list.
class MatchingReductionProtocol : public OneWayProtocol {
 public:
  MatchingReductionProtocol(MatchConfig cfg, MatchingAlgFactory factory,
                            std::string alg_name)
      : cfg_(cfg), factory_(std::move(factory)), alg_name_(std::move(alg_name)) {
    cfg_.validate();
  }

  std::string id() const override { return "match-reduction:" + alg_name_; }

  Message alice(const AliceView& in, uint64_t shared_seed) const override {
    std::vector<Snapshot> snaps;
    snaps.reserve(static_cast<size_t>(cfg_.effective_runs()));
    for (int run = 1; run <= cfg_.effective_runs(); ++run)
      snaps.push_back(alice_encode(in, cfg_, run, factory_, shared_seed));
    Message msg;
    msg.declared_bits = 0;
    for (const auto& s : snaps) msg.declared_bits += measure_space(s);
    msg.bytes = encode_snapshot_list(snaps);
    return msg;
  }

  std::optional<int> bob(const BobView& in, const Message& msg,
                         uint64_t shared_seed) const override {
    std::vector<Snapshot> snaps = decode_snapshot_list(msg.bytes);
    ClaimTally tally;
    int run = 0;
    for (const auto& snap : snaps) {
      MatchRun mr = bob_run(in, cfg_, ++run, snap, shared_seed);
      if (mr.claim) {
        if (*mr.claim == 1)
          ++tally.p1;
        else
          ++tally.p0;
      }
    }
    return decide(tally);
  }

  const MatchConfig& config() const { return cfg_; }

 private:
  MatchConfig cfg_;
  MatchingAlgFactory factory_;
  std::string alg_name_;
};

}  // namespace bindlab

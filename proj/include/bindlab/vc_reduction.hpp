#pragma once

// Window problem -> minimum vertex cover in an insertion-deletion stream.
//
// Shares the per-run randomness of the matching reduction (mask X,
// permutation pair P, stream orders). Alice streams A' = P(A xor X) through a
// cover algorithm; general-graph algorithms run on the doubled universe
// N = 2n with the bipartite edge (i, j) mapped to (i, n + j), matching the
// unified cover ids used everywhere else. Bob deletes every surviving window
// edge and reports Q = [sigma1(x) in I or n + sigma2(y) in I] for the
// extracted cover I. The anchor cell is the only window position never
// deleted and all other survivors fit in the 2(n-k)+1 rows/columns outside
// the window, so a run with Q = 0 certifies A'[x][y] = 0, i.e.
// A[x][y] = X[x][y]. The first such run decides; if every run reports Q = 1
// the protocol gives up (explicit fail rather than a guess).

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
#include "bindlab/matching_reduction.hpp"  // RunRandomness is shared
#include "bindlab/streaming.hpp"
#include "bindlab/vertex_cover.hpp"

namespace bindlab {

struct VcConfig {
  int n = 0;
  int k = 0;
  double C = 1.0;
  int runs = 0;  // 0 = default 40

  int effective_runs() const { return runs > 0 ? runs : 40; }

  void validate() const {
    if (n < 2 || k < 1 || k >= n)
      throw std::invalid_argument("vc config: need 1 <= k < n");
    if (C < 1.0) throw std::invalid_argument("vc config: need C >= 1");
    if (effective_runs() < 1)
      throw std::invalid_argument("vc config: need at least one run");
  }
};

// Algorithm slot. n is the bipartite side; the factory decides whether the
// instance lives on n (bipartite kind) or 2n (general kind) vertices.
using CoverAlgFactory =
    std::function<std::unique_ptr<StreamingAlgorithm>(int n, uint64_t seed)>;

inline CoverAlgFactory storeall_cover_factory() {
  return [](int n, uint64_t) { return std::make_unique<StoreAll>(n); };
}

// Group contraction on the doubled universe. The group size is
// max(ceil(n^eps), ceil(2n / 64)): the first term is the size the epsilon
// parameterization asks for, the second caps the contracted graph at the
// exact-cover limit so extraction never falls back to the 2-approximation.
inline int vc_group_size(int n, double epsilon) {
  int by_eps = static_cast<int>(
      std::ceil(std::pow(static_cast<double>(n), epsilon)));
  int by_cap = (2 * n + kExactCoverCap - 1) / kExactCoverCap;
  return std::max({by_eps, by_cap, 1});
}

inline CoverAlgFactory groupvc_cover_factory(double epsilon) {
  return [epsilon](int n, uint64_t) {
    std::map<std::string, std::string> params{
        {"group", std::to_string(vc_group_size(n, epsilon))}};
    return std::make_unique<GroupContractionCover>(2 * n, params);
  };
}

inline CoverAlgFactory fullcover_factory() {
  return [](int n, uint64_t) { return std::make_unique<FullCover>(2 * n); };
}

// Deterministic size bound for any minimum cover of the graph Bob leaves
// behind: the n-k rows and n-k columns outside the window plus one anchor
// endpoint cover every edge that can survive.
inline int cover_bound(int n, int k) { return 2 * (n - k) + 1; }

// Per-run false-positive bound: Pr[Q = 1 | A'[x][y] = 0] <= 3 C (2(n-k)+1) / k
// for any algorithm whose cover is at most C times minimum.
inline double cover_prob_bound(double C, double n, double k) {
  return 3.0 * C * (2.0 * (n - k) + 1.0) / k;
}

// Alice: encode one run. Only reads her own view plus shared randomness.
inline Snapshot alice_encode_vc(const AliceView& alice, const VcConfig& cfg,
                                int run, const CoverAlgFactory& factory,
                                uint64_t seed) {
  RunRandomness rr = run_randomness(cfg.n, run, seed);
  BitMatrix aprime = permute(xor_mask(alice.A, rr.X), rr.P);

  std::vector<EdgeUpdate> inserts;
  inserts.reserve(aprime.popcount());
  aprime.for_each_set([&](int i, int j) { inserts.push_back({i, j, true}); });
  Rng order = Rng::derived(seed, static_cast<uint64_t>(run), "alice-order");
  order.shuffle(inserts);

  auto alg = factory(cfg.n, derive_seed(seed, static_cast<uint64_t>(run), "alg"));
  if (!alg->supports_cover())
    throw std::invalid_argument("vc reduction: need a cover algorithm");
  bool doubled = alg->kind() == StreamKind::general;
  if (alg->n() != (doubled ? 2 * cfg.n : cfg.n))
    throw std::invalid_argument("vc reduction: algorithm universe mismatch");
  for (EdgeUpdate up : inserts) {
    if (doubled) up.v += cfg.n;
    alg->process(up);
  }
  return alg->snapshot();
}

struct VcRun {
  bool Q = false;
  int x_bit = 0;  // X[x][y] of this run; the answer whenever Q = 0
  size_t message_bits = 0;
  size_t cover_size = 0;
  size_t deleted = 0;
  // populated on request, for diagnostics and invariant campaigns
  std::vector<Edge> E_S;
  VertexCover I;
};

// Bob: decode one run from the snapshot alone. Only reads his own view
// (anchor + window bits) plus shared randomness.
inline VcRun bob_run_vc(const BobView& bob, const VcConfig& cfg, int run,
                        const Snapshot& snap, uint64_t seed,
                        bool keep_artifacts = false) {
  RunRandomness rr = run_randomness(cfg.n, run, seed);
  VcRun out;
  out.message_bits = measure_space(snap);
  out.x_bit = rr.X.get(bob.x, bob.y) ? 1 : 0;

  auto alg = restore_algorithm(snap);
  if (!alg->supports_cover())
    throw std::invalid_argument("vc reduction: snapshot lacks cover support");
  bool doubled = alg->kind() == StreamKind::general;
  if (alg->n() != (doubled ? 2 * cfg.n : cfg.n))
    throw std::invalid_argument("vc reduction: snapshot has wrong shape");

  IndexWindow w{cfg.n, cfg.k, bob.x, bob.y};
  std::vector<Edge> e_del;
  for (auto [i, j] : w.indices()) {
    if (bob.window.at(i, j) == rr.X.get(i, j)) continue;  // not in A'
    e_del.push_back({rr.P.s1(i), rr.P.s2(j)});
  }
  Rng order = Rng::derived(seed, static_cast<uint64_t>(run), "bob-order");
  order.shuffle(e_del);
  for (auto [u, v] : e_del) alg->process({u, doubled ? v + cfg.n : v, false});
  out.deleted = e_del.size();
  if (keep_artifacts) out.E_S = e_del;

  VertexCover cover = alg->extract_cover();
  out.cover_size = cover.size();
  int left_id = rr.P.s1(bob.x);
  int right_id = cfg.n + rr.P.s2(bob.y);
  out.Q = std::find(cover.begin(), cover.end(), left_id) != cover.end() ||
          std::find(cover.begin(), cover.end(), right_id) != cover.end();
  if (keep_artifacts) out.I = std::move(cover);
  return out;
}

struct VcSolveResult {
  std::optional<int> answer;  // nullopt = every run kept the anchor covered
  int runs_used = 0;          // runs consumed up to and including the decider
  size_t total_bits = 0;      // all runs count toward the message
};

// Both halves of the protocol back to back over all runs.
inline VcSolveResult solve_bind_vc(const BindInstance& inst, const VcConfig& cfg,
                                   const CoverAlgFactory& factory,
                                   uint64_t seed) {
  cfg.validate();
  if (inst.n != cfg.n || inst.k != cfg.k)
    throw std::invalid_argument("solve_bind_vc: instance/config mismatch");
  VcSolveResult res;
  AliceView av = inst.alice_view();
  BobView bv = inst.bob_view();
  for (int run = 1; run <= cfg.effective_runs(); ++run) {
    Snapshot snap = alice_encode_vc(av, cfg, run, factory, seed);
    VcRun vr = bob_run_vc(bv, cfg, run, snap, seed);
    res.total_bits += vr.message_bits;
    if (!res.answer) {
      res.runs_used = run;
      if (!vr.Q) res.answer = vr.x_bit;
    }
  }
  return res;
}

// Survivor of one run in unpermuted coordinates: A xor X with the punctured
// window cleared. Permutations relabel vertices, so cover sizes agree with
// what Bob's algorithm faces.
inline BitMatrix survivor_matrix(const BitMatrix& a, const BitMatrix& x_mask,
                                 int x, int y, int k) {
  BitMatrix s = xor_mask(a, x_mask);
  IndexWindow w{a.n(), k, x, y};
  for (auto [i, j] : w.indices()) s.set(i, j, false);
  return s;
}

// OneWayProtocol wrapper: the message is the per-run snapshot list.
class VcReductionProtocol : public OneWayProtocol {
 public:
  VcReductionProtocol(VcConfig cfg, CoverAlgFactory factory,
                      std::string alg_name)
      : cfg_(cfg), factory_(std::move(factory)), alg_name_(std::move(alg_name)) {
    cfg_.validate();
  }

  std::string id() const override { return "vc-reduction:" + alg_name_; }

  Message alice(const AliceView& in, uint64_t shared_seed) const override {
    std::vector<Snapshot> snaps;
    snaps.reserve(static_cast<size_t>(cfg_.effective_runs()));
    for (int run = 1; run <= cfg_.effective_runs(); ++run)
      snaps.push_back(alice_encode_vc(in, cfg_, run, factory_, shared_seed));
    Message msg;
    msg.declared_bits = 0;
    for (const auto& s : snaps) msg.declared_bits += measure_space(s);
    msg.bytes = encode_snapshot_list(snaps);
    return msg;
  }

  std::optional<int> bob(const BobView& in, const Message& msg,
                         uint64_t shared_seed) const override {
    std::vector<Snapshot> snaps = decode_snapshot_list(msg.bytes);
    int run = 0;
    for (const auto& snap : snaps) {
      VcRun vr = bob_run_vc(in, cfg_, ++run, snap, shared_seed);
      if (!vr.Q) return vr.x_bit;
    }
    return std::nullopt;
  }

  const VcConfig& config() const { return cfg_; }

 private:
  VcConfig cfg_;
  CoverAlgFactory factory_;
  std::string alg_name_;
};

}  // namespace bindlab

#pragma once

// Matching via edge subsampling: keep each edge with probability p, decided
// by a stateless keyed hash of (seed, u, v), so a deletion of an edge that
// was never retained is silently a no-op and a deletion of a retained edge
// removes exactly that edge. State is the retained surviving edge set, same
// bitmap encoding as storeall; extraction is an exact maximum matching of
// the retained subgraph. Used as an inexact adversary in protocol tests.

#include <charconv>
#include <string>

#include "bindlab/matching.hpp"
#include "bindlab/store_all.hpp"
#include "bindlab/streaming.hpp"

namespace bindlab {

inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

class SubsampleMatching : public StreamingAlgorithm {
 public:
  SubsampleMatching(int n, double p, uint64_t seed)
      : inner_(n), p_(p), seed_(seed) {
    if (p < 0.0 || p > 1.0)
      throw std::invalid_argument("subsample: p outside [0, 1]");
  }

  std::string id() const override { return "subsample"; }
  StreamKind kind() const override { return StreamKind::bipartite; }
  int n() const override { return inner_.n(); }
  std::string params() const override {
    return join_params({{"p", format_double(p_)},
                        {"seed", std::to_string(seed_)}});
  }

  void process(const EdgeUpdate& up) override {
    if (!retained(up.u, up.v)) return;
    inner_.process(up);
  }

  bool retained(int u, int v) const {
    // h uniform in [0, 2^64); keep iff h < p * 2^64
    long double cut = static_cast<long double>(p_) * 18446744073709551616.0L;
    return static_cast<long double>(edge_hash(seed_, u, v)) < cut;
  }

  Snapshot snapshot() const override {
    Snapshot s;
    s.algorithm_id = id();
    s.payload = snapshot_header(id(), static_cast<uint32_t>(n()), params());
    Snapshot innerSnap = inner_.snapshot();
    SnapshotHeader h = parse_snapshot_header(innerSnap);
    s.payload.insert(s.payload.end(),
                     innerSnap.payload.begin() + static_cast<ptrdiff_t>(h.body_start),
                     innerSnap.payload.end());
    return s;
  }

  void restore(const Snapshot& s) override {
    SnapshotHeader h = checked_header(s);
    Snapshot innerSnap;
    innerSnap.algorithm_id = inner_.id();
    innerSnap.payload = snapshot_header(inner_.id(),
                                        static_cast<uint32_t>(inner_.n()), "");
    innerSnap.payload.insert(innerSnap.payload.end(),
                             s.payload.begin() + static_cast<ptrdiff_t>(h.body_start),
                             s.payload.end());
    inner_.restore(innerSnap);
  }

  bool supports_matching() const override { return true; }
  Matching extract_matching() const override {
    return inner_.extract_matching();
  }

  const StoreAll& retained_state() const { return inner_; }

 private:
  StoreAll inner_;
  double p_;
  uint64_t seed_;
};

}  // namespace bindlab

#pragma once

// Deterministic vertex-cover streaming in small space: partition [n] into
// g = ceil(n^(1-eps)) contiguous groups of at most ceil(n^eps) vertices and
// maintain one surviving-edge counter per unordered group pair (diagonal =
// intra-group edges). Post-processing contracts each group to a vertex,
// solves minimum vertex cover exactly on the contracted graph (self-loop
// groups are forced in; above the 64-vertex exact cap a flagged maximal-
// matching 2-approximation takes over) and returns the union of the chosen
// groups. The answer is always a valid cover of the surviving graph and at
// most (max group size) times larger than optimal.
//
// Snapshot body: [nonzero pair count u32] then bit-packed
// (pair rank: ceil(log2(g(g+1)/2)) bits, count: ceil(log2(n^2+1)) bits)
// entries in rank order, zero-padded to a byte boundary.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "bindlab/streaming.hpp"
#include "bindlab/subsample.hpp"  // format_double
#include "bindlab/vertex_cover.hpp"

namespace bindlab {

class GroupContractionCover : public StreamingAlgorithm {
 public:
  GroupContractionCover(int n, const std::map<std::string, std::string>& params)
      : n_(n) {
    if (n < 1) throw std::invalid_argument("groupvc: n must be positive");
    auto it = params.find("group");
    if (it != params.end()) {
      group_size_ = std::stoi(it->second);
      if (group_size_ < 1 || group_size_ > n)
        throw std::invalid_argument("groupvc: bad group size");
      g_ = (n + group_size_ - 1) / group_size_;
      params_ = join_params({{"group", std::to_string(group_size_)}});
    } else {
      auto e = params.find("epsilon");
      if (e == params.end())
        throw std::invalid_argument("groupvc: need epsilon or group param");
      double eps = std::stod(e->second);
      if (eps <= 0.0 || eps >= 1.0)
        throw std::invalid_argument("groupvc: epsilon outside (0, 1)");
      g_ = static_cast<int>(
          std::ceil(std::pow(static_cast<double>(n), 1.0 - eps)));
      group_size_ = (n + g_ - 1) / g_;
      params_ = join_params({{"epsilon", e->second}});
    }
    counters_.assign(pair_count(), 0);
  }

  GroupContractionCover(int n, double epsilon)
      : GroupContractionCover(n, {{"epsilon", format_double(epsilon)}}) {}

  std::string id() const override { return "groupvc"; }
  StreamKind kind() const override { return StreamKind::general; }
  int n() const override { return n_; }
  std::string params() const override { return params_; }

  int groups() const { return g_; }
  int group_size() const { return group_size_; }
  int group_of(int v) const { return (v - 1) / group_size_ + 1; }

  std::vector<int> group_members(int t) const {
    std::vector<int> m;
    int lo = (t - 1) * group_size_ + 1;
    int hi = std::min(t * group_size_, n_);
    for (int v = lo; v <= hi; ++v) m.push_back(v);
    return m;
  }

  void process(const EdgeUpdate& up) override {
    if (up.u < 1 || up.u > n_ || up.v < 1 || up.v > n_)
      throw std::invalid_argument("groupvc: endpoint out of range");
    size_t r = rank(group_of(up.u), group_of(up.v));
    if (up.insert) {
      ++counters_[r];
    } else {
      if (counters_[r] == 0)
        throw std::invalid_argument("groupvc: counter underflow (delete of absent edge)");
      --counters_[r];
    }
  }

  Snapshot snapshot() const override {
    Snapshot s;
    s.algorithm_id = id();
    s.payload = snapshot_header(id(), static_cast<uint32_t>(n_), params_);
    uint32_t nonzero = 0;
    for (uint32_t c : counters_)
      if (c) ++nonzero;
    put_u32(s.payload, nonzero);
    BitWriter bw;
    int wIdx = rank_bits();
    int wCnt = counter_bits();
    for (size_t r = 0; r < counters_.size(); ++r)
      if (counters_[r]) {
        bw.put(r, wIdx);
        bw.put(counters_[r], wCnt);
      }
    s.payload.insert(s.payload.end(), bw.bytes().begin(), bw.bytes().end());
    return s;
  }

  void restore(const Snapshot& s) override {
    SnapshotHeader h = checked_header(s);
    size_t pos = h.body_start;
    uint32_t nonzero = get_u32(s.payload, pos);
    std::fill(counters_.begin(), counters_.end(), 0);
    BitReader br(s.payload, pos);
    int wIdx = rank_bits();
    int wCnt = counter_bits();
    for (uint32_t i = 0; i < nonzero; ++i) {
      size_t r = br.get(wIdx);
      uint64_t c = br.get(wCnt);
      if (r >= counters_.size())
        throw std::runtime_error("groupvc: bad pair rank in snapshot");
      counters_[r] = static_cast<uint32_t>(c);
    }
  }

  bool supports_cover() const override { return true; }

  VertexCover extract_cover() const override {
    return expand(chosen_groups());
  }

  // Contracted support graph: one vertex per group, an edge (loop) wherever a
  // pair counter is nonzero.
  GeneralGraph contracted_graph() const {
    GeneralGraph cg;
    cg.nV = g_;
    for (int a = 1; a <= g_; ++a)
      for (int b = a; b <= g_; ++b)
        if (counters_[rank(a, b)]) cg.add_edge(a, b);
    return cg;
  }

  std::vector<int> chosen_groups() const {
    GeneralGraph cg = contracted_graph();
    if (g_ <= kExactCoverCap) {
      fallback_used_ = false;
      return minimum_vertex_cover_exact(cg);
    }
    fallback_used_ = true;
    return vertex_cover_2approx(cg);
  }

  VertexCover expand(const std::vector<int>& groups) const {
    VertexCover cover;
    for (int t : groups)
      for (int v : group_members(t)) cover.push_back(v);
    return cover;
  }

  // True when the last extract had to settle for the 2-approximation.
  bool fallback_used() const { return fallback_used_; }

  size_t pair_count() const {
    return static_cast<size_t>(g_) * (static_cast<size_t>(g_) + 1) / 2;
  }
  int rank_bits() const {
    return bits_for(pair_count() - 1);
  }
  int counter_bits() const {
    return bits_for(static_cast<uint64_t>(n_) * static_cast<uint64_t>(n_));
  }

  uint32_t counter(int ga, int gb) const { return counters_[rank(ga, gb)]; }

 private:
  // rank of unordered group pair, 0-based over g(g+1)/2 cells
  size_t rank(int ga, int gb) const {
    size_t i = static_cast<size_t>(std::min(ga, gb)) - 1;
    size_t j = static_cast<size_t>(std::max(ga, gb)) - 1;
    return i * static_cast<size_t>(g_) - i * (i - 1) / 2 + (j - i);
  }

  int n_;
  int g_ = 0;
  int group_size_ = 0;
  std::string params_;
  std::vector<uint32_t> counters_;
  mutable bool fallback_used_ = false;
};

}  // namespace bindlab

#pragma once

// Baseline algorithm: store the whole surviving edge set of a bipartite
// stream as an n x n bitmap. Extraction is exact on both sides of the
// duality: maximum matching (Hopcroft-Karp) or minimum cover (Koenig), so as
// a protocol component it is the C = 1 instantiation that never errs.
// Snapshot body: [edge count u32][row-major LSB-first bitmap iff count > 0];
// an empty state is header + count only (192 bits), any nonempty state is
// that plus exactly n^2 bitmap bits, independent of how many edges arrived.

#include <string>
#include <vector>

#include "bindlab/matching.hpp"
#include "bindlab/streaming.hpp"
#include "bindlab/vertex_cover.hpp"

namespace bindlab {

class StoreAll : public StreamingAlgorithm {
 public:
  explicit StoreAll(int n) : n_(n), bits_(bitmap_bytes(n), 0) {
    if (n < 1) throw std::invalid_argument("storeall: n must be positive");
  }

  std::string id() const override { return "storeall"; }
  StreamKind kind() const override { return StreamKind::bipartite; }
  int n() const override { return n_; }
  std::string params() const override { return ""; }

  void process(const EdgeUpdate& up) override {
    check_endpoints(up);
    size_t pos = index(up.u, up.v);
    bool present = (bits_[pos >> 3] >> (pos & 7)) & 1;
    if (up.insert) {
      if (present)
        throw std::invalid_argument("storeall: insert of present edge");
      bits_[pos >> 3] |= static_cast<uint8_t>(1u << (pos & 7));
      ++count_;
    } else {
      if (!present)
        throw std::invalid_argument("storeall: delete of absent edge");
      bits_[pos >> 3] &= static_cast<uint8_t>(~(1u << (pos & 7)));
      --count_;
    }
  }

  Snapshot snapshot() const override {
    Snapshot s;
    s.algorithm_id = id();
    s.payload = snapshot_header(id(), static_cast<uint32_t>(n_), params());
    put_u32(s.payload, static_cast<uint32_t>(count_));
    if (count_ > 0)
      s.payload.insert(s.payload.end(), bits_.begin(), bits_.end());
    return s;
  }

  void restore(const Snapshot& s) override {
    SnapshotHeader h = checked_header(s);
    size_t pos = h.body_start;
    count_ = get_u32(s.payload, pos);
    if (count_ == 0) {
      std::fill(bits_.begin(), bits_.end(), 0);
      return;
    }
    if (s.payload.size() != pos + bits_.size())
      throw std::runtime_error("storeall: bad snapshot body size");
    std::copy(s.payload.begin() + static_cast<ptrdiff_t>(pos), s.payload.end(),
              bits_.begin());
  }

  bool supports_matching() const override { return true; }
  bool supports_cover() const override { return true; }

  Matching extract_matching() const override {
    return maximum_matching(current_graph());
  }

  // Exact minimum cover in unified ids (left u -> u, right v -> n + v).
  VertexCover extract_cover() const override {
    return minimum_vertex_cover_bipartite(current_graph());
  }

  BipartiteGraph current_graph() const {
    BipartiteGraph g;
    g.nL = g.nR = n_;
    g.edges.reserve(count_);
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) {
        size_t pos = index(u, v);
        if ((bits_[pos >> 3] >> (pos & 7)) & 1) g.edges.emplace_back(u, v);
      }
    return g;
  }

  size_t edge_count() const { return count_; }

  static size_t bitmap_bytes(int n) {
    return (static_cast<size_t>(n) * static_cast<size_t>(n) + 7) / 8;
  }

 private:
  void check_endpoints(const EdgeUpdate& up) const {
    if (up.u < 1 || up.u > n_ || up.v < 1 || up.v > n_)
      throw std::invalid_argument("storeall: endpoint out of range");
  }
  size_t index(int u, int v) const {
    return static_cast<size_t>(u - 1) * static_cast<size_t>(n_) +
           static_cast<size_t>(v - 1);
  }

  int n_;
  size_t count_ = 0;
  std::vector<uint8_t> bits_;
};

// Documented constant: bits of an empty storeall snapshot
// (12 id + 4 n + 4 params-length + 0 params + 4 count bytes).
inline constexpr size_t kStoreAllEmptySnapshotBits = (12 + 4 + 4 + 4) * 8;

}  // namespace bindlab

#pragma once

// Degenerate control algorithm: stores nothing and always answers with the
// entire vertex set. Trivially a valid cover, maximally uninformative — a
// protocol built on it must fail every instance, which the tests rely on.

#include <string>

#include "bindlab/streaming.hpp"

namespace bindlab {

class FullCover : public StreamingAlgorithm {
 public:
  explicit FullCover(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("fullcover: n must be positive");
  }

  std::string id() const override { return "fullcover"; }
  StreamKind kind() const override { return StreamKind::general; }
  int n() const override { return n_; }
  std::string params() const override { return ""; }

  void process(const EdgeUpdate& up) override {
    if (up.u < 1 || up.u > n_ || up.v < 1 || up.v > n_)
      throw std::invalid_argument("fullcover: endpoint out of range");
  }

  Snapshot snapshot() const override {
    Snapshot s;
    s.algorithm_id = id();
    s.payload = snapshot_header(id(), static_cast<uint32_t>(n_), params());
    return s;
  }

  void restore(const Snapshot& s) override { checked_header(s); }

  bool supports_cover() const override { return true; }
  VertexCover extract_cover() const override {
    VertexCover all;
    all.reserve(static_cast<size_t>(n_));
    for (int v = 1; v <= n_; ++v) all.push_back(v);
    return all;
  }

 private:
  int n_;
};

}  // namespace bindlab

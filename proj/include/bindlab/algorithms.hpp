#pragma once

// Registry tying algorithm ids to constructors so a snapshot header (or a
// CLI --alg flag plus params) is enough to build the matching instance.

#include <map>
#include <memory>
#include <string>

#include "bindlab/full_cover.hpp"
#include "bindlab/group_contraction.hpp"
#include "bindlab/store_all.hpp"
#include "bindlab/streaming.hpp"
#include "bindlab/subsample.hpp"

namespace bindlab {

inline std::unique_ptr<StreamingAlgorithm> make_algorithm(
    const std::string& id, int n,
    const std::map<std::string, std::string>& params) {
  if (id == "storeall") return std::make_unique<StoreAll>(n);
  if (id == "groupvc") return std::make_unique<GroupContractionCover>(n, params);
  if (id == "fullcover") return std::make_unique<FullCover>(n);
  if (id == "subsample") {
    double p = 0.5;
    uint64_t seed = 0;
    if (auto it = params.find("p"); it != params.end()) p = std::stod(it->second);
    if (auto it = params.find("seed"); it != params.end())
      seed = std::stoull(it->second);
    return std::make_unique<SubsampleMatching>(n, p, seed);
  }
  throw std::invalid_argument("unknown algorithm id: " + id);
}

inline std::unique_ptr<StreamingAlgorithm> make_algorithm(
    const std::string& id, int n, const std::string& params) {
  return make_algorithm(id, n, split_params(params));
}

// Rebuild an instance purely from a snapshot (shape from the header, state
// from the body) — all a receiving party needs is the message itself.
inline std::unique_ptr<StreamingAlgorithm> restore_algorithm(const Snapshot& s) {
  SnapshotHeader h = parse_snapshot_header(s);
  auto alg = make_algorithm(h.id, static_cast<int>(h.n), h.params);
  alg->restore(s);
  return alg;
}

}  // namespace bindlab

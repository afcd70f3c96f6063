#pragma once

// Contract every streaming algorithm implements. Randomness is fixed at
// construction (seed lives in params), process() is deterministic, extract()
// never mutates state, and snapshot()/restore() round-trip the full memory
// state: splitting a stream anywhere and carrying the snapshot across must be
// observationally identical to the unsplit run.

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>

#include "bindlab/graph.hpp"
#include "bindlab/snapshot.hpp"
#include "bindlab/stream.hpp"

namespace bindlab {

using AlgorithmOutput = std::variant<Matching, VertexCover>;

class StreamingAlgorithm {
 public:
  virtual ~StreamingAlgorithm() = default;

  virtual std::string id() const = 0;
  virtual StreamKind kind() const = 0;
  virtual int n() const = 0;
  virtual std::string params() const = 0;  // canonical key=value string

  virtual void process(const EdgeUpdate& up) = 0;
  virtual Snapshot snapshot() const = 0;
  virtual void restore(const Snapshot& s) = 0;

  virtual bool supports_matching() const { return false; }
  virtual bool supports_cover() const { return false; }
  virtual Matching extract_matching() const {
    throw std::logic_error(id() + ": matching extraction unsupported");
  }
  virtual VertexCover extract_cover() const {
    throw std::logic_error(id() + ": cover extraction unsupported");
  }

  // The algorithm's primary output as a tagged value.
  AlgorithmOutput extract() const {
    if (supports_matching()) return extract_matching();
    return extract_cover();
  }

 protected:
  // Shared restore() precondition: a snapshot may only be restored into an
  // instance with the same shape it was taken from.
  SnapshotHeader checked_header(const Snapshot& s) const {
    SnapshotHeader h = parse_snapshot_header(s);
    if (h.id != id())
      throw std::invalid_argument("restore: snapshot from '" + h.id +
                                  "' offered to '" + id() + "'");
    if (static_cast<int>(h.n) != n())
      throw std::invalid_argument("restore: universe mismatch");
    if (h.params != params())
      throw std::invalid_argument("restore: params mismatch");
    return h;
  }
};

using AlgorithmFactory = std::function<std::unique_ptr<StreamingAlgorithm>()>;

struct SplitRun {
  Snapshot mid;
  std::unique_ptr<StreamingAlgorithm> final_state;
};

// Feed updates[0..split) into a fresh instance, snapshot, restore the
// snapshot into a second fresh instance, feed the rest there.
inline SplitRun run_split(const AlgorithmFactory& make, const GraphStream& s,
                          size_t split) {
  if (split > s.updates.size())
    throw std::invalid_argument("run_split: split point past stream end");
  auto first = make();
  for (size_t i = 0; i < split; ++i) first->process(s.updates[i]);
  SplitRun r;
  r.mid = first->snapshot();
  r.final_state = make();
  r.final_state->restore(r.mid);
  for (size_t i = split; i < s.updates.size(); ++i)
    r.final_state->process(s.updates[i]);
  return r;
}

}  // namespace bindlab

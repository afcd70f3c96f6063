#pragma once

// Insertion/deletion edge streams in the strict turnstile model: at every
// prefix each edge's multiplicity must stay in {0, 1}. Two stream kinds share
// one update type: bipartite streams read (u, v) as left/right ids (ordered
// pair identity), general streams read it as an unordered pair over [n].
// The text format carries no kind marker; the consumer declares it.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bindlab/rng.hpp"

namespace bindlab {

struct EdgeUpdate {
  int u = 0;      // left/first endpoint
  int v = 0;      // right/second endpoint
  bool insert = true;

  bool operator==(const EdgeUpdate&) const = default;
};

enum class StreamKind { bipartite, general };

struct GraphStream {
  StreamKind kind = StreamKind::bipartite;
  int n = 0;  // side length (bipartite) or vertex count (general)
  std::vector<EdgeUpdate> updates;
};

struct StreamViolation {
  size_t index = 0;  // 1-based position in the stream
  std::string kind;  // "endpoint", "duplicate-insert", "delete-absent", ...
  std::string message;
};

inline size_t max_simple_edges(StreamKind kind, int n) {
  size_t m = static_cast<size_t>(n);
  return kind == StreamKind::bipartite ? m * m : m * (m - 1) / 2;
}

// Full strict-turnstile audit. Returns all violations (empty = valid).
inline std::vector<StreamViolation> validate_stream(const GraphStream& s) {
  std::vector<StreamViolation> out;
  std::set<std::pair<int, int>> live;
  size_t idx = 0;
  for (const auto& up : s.updates) {
    ++idx;
    if (up.u < 1 || up.u > s.n || up.v < 1 || up.v > s.n) {
      out.push_back({idx, "endpoint",
                     "endpoint out of range at update " + std::to_string(idx)});
      continue;
    }
    if (s.kind == StreamKind::general && up.u == up.v) {
      out.push_back({idx, "self-loop",
                     "self loop at update " + std::to_string(idx)});
      continue;
    }
    std::pair<int, int> key =
        s.kind == StreamKind::bipartite
            ? std::pair<int, int>{up.u, up.v}
            : std::pair<int, int>{std::min(up.u, up.v), std::max(up.u, up.v)};
    if (up.insert) {
      if (!live.insert(key).second)
        out.push_back({idx, "duplicate-insert",
                       "insert of present edge at update " + std::to_string(idx)});
    } else {
      if (live.erase(key) == 0)
        out.push_back({idx, "delete-absent",
                       "delete of absent edge at update " + std::to_string(idx)});
    }
  }
  if (s.updates.size() > 2 * max_simple_edges(s.kind, s.n))
    out.push_back({0, "length",
                   "stream longer than twice the simple edge count"});
  return out;
}

inline bool stream_is_valid(const GraphStream& s) {
  return validate_stream(s).empty();
}

// --- text format ------------------------------------------------------------
// Header "n m", then m lines "+ u v" or "- u v".

inline void write_stream(std::ostream& os, const GraphStream& s) {
  os << s.n << " " << s.updates.size() << "\n";
  for (const auto& up : s.updates)
    os << (up.insert ? '+' : '-') << " " << up.u << " " << up.v << "\n";
}

inline GraphStream read_stream(std::istream& is, StreamKind kind) {
  GraphStream s;
  s.kind = kind;
  size_t m = 0;
  if (!(is >> s.n >> m)) throw std::runtime_error("stream: bad header");
  s.updates.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    char sign;
    EdgeUpdate up;
    if (!(is >> sign >> up.u >> up.v) || (sign != '+' && sign != '-'))
      throw std::runtime_error("stream: bad update line " + std::to_string(i + 1));
    up.insert = sign == '+';
    s.updates.push_back(up);
  }
  return s;
}

// Random valid stream: inserts a seeded random subset of all simple edges in
// random order, then deletes a random fraction of them in random order.
inline GraphStream random_stream(StreamKind kind, int n, Rng& rng,
                                 double density = 0.5,
                                 double delete_fraction = 0.3) {
  GraphStream s;
  s.kind = kind;
  s.n = n;
  std::vector<std::pair<int, int>> edges;
  if (kind == StreamKind::bipartite) {
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v)
        if (rng.real01() < density) edges.emplace_back(u, v);
  } else {
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (rng.real01() < density) edges.emplace_back(u, v);
  }
  rng.shuffle(edges);
  for (auto [u, v] : edges) s.updates.push_back({u, v, true});
  size_t dels = static_cast<size_t>(delete_fraction * static_cast<double>(edges.size()));
  auto victims = rng.sample_indices(edges.size(), dels);
  for (size_t i : victims)
    s.updates.push_back({edges[i].first, edges[i].second, false});
  return s;
}

}  // namespace bindlab

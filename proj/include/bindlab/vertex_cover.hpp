#pragma once

// Exact minimum vertex cover, two backends:
//  - bipartite graphs: Koenig construction on a maximum matching, so
//    |cover| = |matching| and there is no size limit worth speaking of;
//  - general graphs (with self loops): branch and bound over uint64 adjacency
//    masks, capped at 64 vertices. Self-loop vertices are forced into the
//    cover up front. Deterministic: reductions and branching scan ascending
//    vertex ids and the first best cover found is kept.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bindlab/graph.hpp"
#include "bindlab/matching.hpp"

namespace bindlab {

inline constexpr int kExactCoverCap = 64;

// Koenig: Z = vertices reachable from unmatched left vertices by alternating
// paths; cover = (L \ Z) + (R intersect Z), returned in unified ids.
inline VertexCover minimum_vertex_cover_bipartite(const BipartiteGraph& g) {
  Matching m = maximum_matching(g);
  std::vector<int> matchL(static_cast<size_t>(g.nL) + 1, 0);
  std::vector<int> matchR(static_cast<size_t>(g.nR) + 1, 0);
  for (auto [u, v] : m) {
    matchL[static_cast<size_t>(u)] = v;
    matchR[static_cast<size_t>(v)] = u;
  }
  std::vector<std::vector<int>> adj(static_cast<size_t>(g.nL) + 1);
  for (auto [u, v] : g.edges) adj[static_cast<size_t>(u)].push_back(v);

  std::vector<char> zL(static_cast<size_t>(g.nL) + 1, 0);
  std::vector<char> zR(static_cast<size_t>(g.nR) + 1, 0);
  std::vector<int> stack;
  for (int u = 1; u <= g.nL; ++u)
    if (matchL[static_cast<size_t>(u)] == 0) {
      zL[static_cast<size_t>(u)] = 1;
      stack.push_back(u);
    }
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<size_t>(u)]) {
      if (matchL[static_cast<size_t>(u)] == v || zR[static_cast<size_t>(v)])
        continue;
      zR[static_cast<size_t>(v)] = 1;
      int w = matchR[static_cast<size_t>(v)];
      if (w != 0 && !zL[static_cast<size_t>(w)]) {
        zL[static_cast<size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }

  VertexCover cover;
  for (int u = 1; u <= g.nL; ++u)
    if (!zL[static_cast<size_t>(u)]) cover.push_back(u);
  for (int v = 1; v <= g.nR; ++v)
    if (zR[static_cast<size_t>(v)]) cover.push_back(g.nL + v);
  return cover;
}

namespace detail {

struct CoverBnB {
  int n;
  std::vector<uint64_t> adj;  // adj[v] over 0-based ids
  uint64_t all;
  uint64_t best_mask = 0;
  int best_size = 0;

  explicit CoverBnB(const GeneralGraph& g)
      : n(g.nV), adj(static_cast<size_t>(g.nV), 0) {
    all = (n == 64) ? ~0ull : ((1ull << n) - 1);
    for (auto [u, v] : g.edges) {
      adj[static_cast<size_t>(u - 1)] |= 1ull << (v - 1);
      adj[static_cast<size_t>(v - 1)] |= 1ull << (u - 1);
    }
  }

  int residual_degree(int v, uint64_t cover) const {
    return __builtin_popcountll(adj[static_cast<size_t>(v)] & ~cover);
  }

  // Greedy maximal matching on the uncovered subgraph; each edge needs one
  // more cover vertex, so its size is a lower bound on what is still owed.
  int matching_bound(uint64_t cover) const {
    uint64_t used = cover;
    int m = 0;
    for (int v = 0; v < n; ++v) {
      if ((used >> v) & 1) continue;
      uint64_t cand = adj[static_cast<size_t>(v)] & ~used;
      if (cand) {
        int w = __builtin_ctzll(cand);
        used |= (1ull << v) | (1ull << w);
        ++m;
      }
    }
    return m;
  }

  void search(uint64_t cover, int size) {
    // ascending-order reductions until a fixpoint
    for (;;) {
      if (size >= best_size) return;
      int deg1 = -1, pick = -1, maxdeg = 0;
      for (int v = 0; v < n; ++v) {
        if ((cover >> v) & 1) continue;
        int d = residual_degree(v, cover);
        if (d == 1 && deg1 < 0) deg1 = v;
        if (d > maxdeg) {
          maxdeg = d;
          pick = v;
        }
      }
      if (maxdeg == 0) {  // everything covered
        best_size = size;
        best_mask = cover;
        return;
      }
      if (deg1 >= 0) {  // take the surviving neighbor, never worse
        uint64_t nb = adj[static_cast<size_t>(deg1)] & ~cover;
        cover |= nb;
        ++size;
        continue;
      }
      if (size + matching_bound(cover) >= best_size) return;
      // branch: pick in the cover, or pick out and all its neighbors in
      search(cover | (1ull << pick), size + 1);
      uint64_t nbs = adj[static_cast<size_t>(pick)] & ~cover;
      search(cover | nbs, size + __builtin_popcountll(nbs));
      return;
    }
  }
};

}  // namespace detail

// cap guards runtime; anything above 64 cannot be represented anyway.
inline VertexCover minimum_vertex_cover_exact(const GeneralGraph& g,
                                              int cap = kExactCoverCap) {
  if (cap > kExactCoverCap) cap = kExactCoverCap;
  if (g.nV > cap)
    throw std::invalid_argument(
        "minimum_vertex_cover_exact: graph exceeds solver cap (" +
        std::to_string(g.nV) + " > " + std::to_string(cap) + ")");
  detail::CoverBnB bnb(g);

  uint64_t forced = 0;
  for (int u : g.self_loops) forced |= 1ull << (u - 1);
  int forced_size = __builtin_popcountll(forced);

  // greedy upper bound: both endpoints of a maximal matching
  uint64_t ub_mask = forced;
  for (auto [u, v] : g.edges) {
    if (((ub_mask >> (u - 1)) & 1) || ((ub_mask >> (v - 1)) & 1)) continue;
    ub_mask |= (1ull << (u - 1)) | (1ull << (v - 1));
  }
  bnb.best_mask = ub_mask;
  bnb.best_size = __builtin_popcountll(ub_mask);
  bnb.search(forced, forced_size);

  VertexCover cover;
  for (int v = 0; v < g.nV; ++v)
    if ((bnb.best_mask >> v) & 1) cover.push_back(v + 1);
  return cover;
}

// Maximal-matching 2-approximation (plus forced loop vertices); used when a
// contracted graph is too large for the exact backend.
inline VertexCover vertex_cover_2approx(const GeneralGraph& g) {
  std::vector<char> in(static_cast<size_t>(g.nV) + 1, 0);
  for (int u : g.self_loops) in[static_cast<size_t>(u)] = 1;
  for (auto [u, v] : g.edges)
    if (!in[static_cast<size_t>(u)] && !in[static_cast<size_t>(v)])
      in[static_cast<size_t>(u)] = in[static_cast<size_t>(v)] = 1;
  VertexCover cover;
  for (int v = 1; v <= g.nV; ++v)
    if (in[static_cast<size_t>(v)]) cover.push_back(v);
  return cover;
}

}  // namespace bindlab

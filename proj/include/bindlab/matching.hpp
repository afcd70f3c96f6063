#pragma once

// Exact maximum bipartite matching, Hopcroft-Karp. Adjacency is sorted and
// vertices are scanned in ascending order, so the returned matching is a
// deterministic function of the input graph.

#include <algorithm>
#include <queue>
#include <vector>

#include "bindlab/graph.hpp"

namespace bindlab {

namespace detail {

struct HopcroftKarp {
  int nL, nR;
  std::vector<std::vector<int>> adj;  // left -> sorted right neighbors
  std::vector<int> matchL, matchR;    // 0 = unmatched
  std::vector<int> dist;

  explicit HopcroftKarp(const BipartiteGraph& g)
      : nL(g.nL),
        nR(g.nR),
        adj(static_cast<size_t>(g.nL) + 1),
        matchL(static_cast<size_t>(g.nL) + 1, 0),
        matchR(static_cast<size_t>(g.nR) + 1, 0),
        dist(static_cast<size_t>(g.nL) + 1, 0) {
    for (auto [u, v] : g.edges) adj[static_cast<size_t>(u)].push_back(v);
    for (auto& a : adj) std::sort(a.begin(), a.end());
  }

  static constexpr int kInf = 1 << 29;

  bool bfs() {
    std::queue<int> q;
    for (int u = 1; u <= nL; ++u) {
      if (matchL[static_cast<size_t>(u)] == 0) {
        dist[static_cast<size_t>(u)] = 0;
        q.push(u);
      } else {
        dist[static_cast<size_t>(u)] = kInf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[static_cast<size_t>(u)]) {
        int w = matchR[static_cast<size_t>(v)];
        if (w == 0) {
          found = true;
        } else if (dist[static_cast<size_t>(w)] == kInf) {
          dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : adj[static_cast<size_t>(u)]) {
      int w = matchR[static_cast<size_t>(v)];
      if (w == 0 ||
          (dist[static_cast<size_t>(w)] == dist[static_cast<size_t>(u)] + 1 &&
           dfs(w))) {
        matchL[static_cast<size_t>(u)] = v;
        matchR[static_cast<size_t>(v)] = u;
        return true;
      }
    }
    dist[static_cast<size_t>(u)] = kInf;
    return false;
  }

  void run() {
    while (bfs())
      for (int u = 1; u <= nL; ++u)
        if (matchL[static_cast<size_t>(u)] == 0) dfs(u);
  }
};

}  // namespace detail

inline Matching maximum_matching(const BipartiteGraph& g) {
  detail::HopcroftKarp hk(g);
  hk.run();
  Matching m;
  for (int u = 1; u <= g.nL; ++u)
    if (hk.matchL[static_cast<size_t>(u)] != 0)
      m.emplace_back(u, hk.matchL[static_cast<size_t>(u)]);
  return m;
}

}  // namespace bindlab

#pragma once

// Concrete graph values the exact solvers and reductions operate on.
// Bipartite vertices are addressed two ways: edges as (left u, right v) pairs
// with u in [nL], v in [nR]; covers in unified ids where left u -> u and
// right v -> nL + v. The unified form is what the streaming covers and the
// protocol checks use.

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bindlab/bit_matrix.hpp"

namespace bindlab {

using Edge = std::pair<int, int>;

struct BipartiteGraph {
  int nL = 0;
  int nR = 0;
  std::vector<Edge> edges;  // (u, v), 1-based per side

  void validate() const {
    std::set<Edge> seen;
    for (auto [u, v] : edges) {
      if (u < 1 || u > nL || v < 1 || v > nR)
        throw std::invalid_argument("BipartiteGraph: endpoint out of range");
      if (!seen.insert({u, v}).second)
        throw std::invalid_argument("BipartiteGraph: duplicate edge");
    }
  }
};

struct GeneralGraph {
  int nV = 0;
  std::vector<Edge> edges;       // unordered pairs, stored with u < v
  std::vector<int> self_loops;   // vertices carrying a loop

  void add_edge(int u, int v) {
    if (u == v) {
      self_loops.push_back(u);
      return;
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }

  void validate() const {
    std::set<Edge> seen;
    for (auto [u, v] : edges) {
      if (u < 1 || u > nV || v < 1 || v > nV || u >= v)
        throw std::invalid_argument("GeneralGraph: bad edge");
      if (!seen.insert({u, v}).second)
        throw std::invalid_argument("GeneralGraph: duplicate edge");
    }
    for (int u : self_loops)
      if (u < 1 || u > nV)
        throw std::invalid_argument("GeneralGraph: bad self loop");
  }
};

using Matching = std::vector<Edge>;     // bipartite (u, v) pairs
using VertexCover = std::vector<int>;   // unified / general vertex ids

// Edge (u_i, v_j) present iff B[i][j] = 1.
inline BipartiteGraph graph_of(const BitMatrix& b) {
  BipartiteGraph g;
  g.nL = g.nR = b.n();
  g.edges.reserve(b.popcount());
  b.for_each_set([&](int i, int j) { g.edges.emplace_back(i, j); });
  return g;
}

inline bool is_valid_matching(const BipartiteGraph& g, const Matching& m) {
  std::set<Edge> have(g.edges.begin(), g.edges.end());
  std::set<int> left, right;
  for (auto [u, v] : m) {
    if (!have.count({u, v})) return false;
    if (!left.insert(u).second) return false;
    if (!right.insert(v).second) return false;
  }
  return true;
}

// Bipartite cover check, cover given in unified ids.
inline bool is_valid_cover(const BipartiteGraph& g, const VertexCover& cover) {
  std::set<int> c(cover.begin(), cover.end());
  for (int id : cover)
    if (id < 1 || id > g.nL + g.nR) return false;
  for (auto [u, v] : g.edges)
    if (!c.count(u) && !c.count(g.nL + v)) return false;
  return true;
}

inline bool is_valid_cover(const GeneralGraph& g, const VertexCover& cover) {
  std::set<int> c(cover.begin(), cover.end());
  for (int id : cover)
    if (id < 1 || id > g.nV) return false;
  for (auto [u, v] : g.edges)
    if (!c.count(u) && !c.count(v)) return false;
  for (int u : g.self_loops)
    if (!c.count(u)) return false;
  return true;
}

// --- edge-list text format --------------------------------------------------
// Bipartite: header "nL nR", one "u v" line per edge.
// General:   header "nV",    one "u v" line per edge (u = v is a self loop).

inline void write_graph(std::ostream& os, const BipartiteGraph& g) {
  os << g.nL << " " << g.nR << "\n";
  for (auto [u, v] : g.edges) os << u << " " << v << "\n";
}

inline BipartiteGraph read_bipartite_graph(std::istream& is) {
  BipartiteGraph g;
  if (!(is >> g.nL >> g.nR)) throw std::runtime_error("graph: bad header");
  int u, v;
  while (is >> u >> v) g.edges.emplace_back(u, v);
  g.validate();
  return g;
}

inline void write_graph(std::ostream& os, const GeneralGraph& g) {
  os << g.nV << "\n";
  for (auto [u, v] : g.edges) os << u << " " << v << "\n";
  for (int u : g.self_loops) os << u << " " << u << "\n";
}

inline GeneralGraph read_general_graph(std::istream& is) {
  GeneralGraph g;
  if (!(is >> g.nV)) throw std::runtime_error("graph: bad header");
  int u, v;
  while (is >> u >> v) g.add_edge(u, v);
  g.validate();
  return g;
}

}  // namespace bindlab

// Copyright 2026 The arbocc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Matchings on E+ and the clusterings they induce.

#ifndef ARBOCC_MATCHING_HPP_
#define ARBOCC_MATCHING_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "arbocc/common.hpp"
#include "arbocc/graph.hpp"
#include "arbocc/ordering.hpp"

namespace arbocc {

struct Matching {
  std::vector<Edge> edges;  // sorted

  std::size_t size() const noexcept { return edges.size(); }
  bool operator==(const Matching&) const = default;

  // Pairwise disjoint edges of g.
  bool valid_in(const SignedGraph& g) const {
    std::vector<bool> used(g.vertex_count(), false);
    for (const Edge& e : edges) {
      if (e.v >= g.vertex_count() || !g.has_edge(e.u, e.v)) return false;
      if (used[e.u] || used[e.v]) return false;
      used[e.u] = used[e.v] = true;
    }
    return true;
  }

  bool maximal_in(const SignedGraph& g) const {
    std::vector<bool> used(g.vertex_count(), false);
    for (const Edge& e : edges) used[e.u] = used[e.v] = true;
    for (const Edge& e : g.edges()) {
      if (!used[e.u] && !used[e.v]) return false;
    }
    return true;
  }
};

namespace detail {

inline Matching from_mates(const std::vector<Vertex>& mate) {
  Matching m;
  for (Vertex v = 0; v < mate.size(); ++v) {
    if (mate[v] != kNoVertex && v < mate[v]) m.edges.emplace_back(v, mate[v]);
  }
  return m;
}

inline std::vector<Vertex> mates_of(std::size_t n, const Matching& m) {
  std::vector<Vertex> mate(n, kNoVertex);
  for (const Edge& e : m.edges) {
    mate[e.u] = e.v;
    mate[e.v] = e.u;
  }
  return mate;
}

}  // namespace detail

// Maximum matching of a forest. Vertices are visited leaves-first within
// each rooted tree; a vertex still free is matched to its parent if the
// parent is free, which is optimal on trees.
inline Matching tree_max_matching(const SignedGraph& g) {
  if (!is_forest(g)) throw NotAForest("positive graph contains a cycle");
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> parent(n, kNoVertex), order;
  std::vector<bool> seen(n, false);
  order.reserve(n);
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    const std::size_t begin = order.size();
    order.push_back(root);
    for (std::size_t i = begin; i < order.size(); ++i) {
      for (Vertex w : g.neighbors(order[i])) {
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = order[i];
          order.push_back(w);
        }
      }
    }
  }
  std::vector<Vertex> mate(n, kNoVertex);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it, p = parent[v];
    if (mate[v] == kNoVertex && p != kNoVertex && mate[p] == kNoVertex) {
      mate[v] = p;
      mate[p] = v;
    }
  }
  return detail::from_mates(mate);
}

// Greedy maximal matching scanning `order` (edges of g).
inline Matching maximal_matching_in_order(const SignedGraph& g, std::span<const Edge> order) {
  std::vector<Vertex> mate(g.vertex_count(), kNoVertex);
  for (const Edge& e : order) {
    if (mate[e.u] == kNoVertex && mate[e.v] == kNoVertex) {
      mate[e.u] = e.v;
      mate[e.v] = e.u;
    }
  }
  return detail::from_mates(mate);
}

// Edges scanned by (smaller endpoint rank, larger endpoint rank).
inline Matching maximal_matching_greedy(const SignedGraph& g, const VertexOrdering& pi) {
  std::vector<Edge> order = g.edges();
  auto key = [&](const Edge& e) {
    const Rank a = pi.rank_of(e.u), b = pi.rank_of(e.v);
    return std::pair(std::min(a, b), std::max(a, b));
  };
  std::sort(order.begin(), order.end(),
            [&](const Edge& x, const Edge& y) { return key(x) < key(y); });
  return maximal_matching_in_order(g, order);
}

namespace detail {

// Depth-first search for an augmenting path from free vertex `v` with at
// most `budget` more edges. Alternation: from an even position a non-matching
// edge is taken, from an odd position the matching edge.
inline bool extend_augmenting(const SignedGraph& g, const std::vector<Vertex>& mate,
                              std::vector<bool>& on_path, const std::vector<bool>& blocked,
                              Vertex v, std::size_t budget, std::vector<Vertex>& path) {
  if (budget == 0) return false;
  for (Vertex w : g.neighbors(v)) {
    if (on_path[w] || blocked[w] || mate[v] == w) continue;
    if (mate[w] == kNoVertex) {
      path.push_back(w);
      return true;
    }
    const Vertex x = mate[w];
    if (budget < 3 || on_path[x] || blocked[x]) continue;
    on_path[w] = on_path[x] = true;
    path.push_back(w);
    path.push_back(x);
    if (extend_augmenting(g, mate, on_path, blocked, x, budget - 2, path)) return true;
    path.pop_back();
    path.pop_back();
    on_path[w] = on_path[x] = false;
  }
  return false;
}

}  // namespace detail

// Improves `initial` by flipping maximal sets of vertex-disjoint augmenting
// paths of at most 2*ceil(1/eps)-1 edges until none is left. Without such
// paths (1 + eps) * |M| >= |M*| holds on every graph.
inline Matching approx_matching_eps(const SignedGraph& g, double epsilon,
                                    const Matching& initial) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw PreconditionError("epsilon must lie in (0, 1]");
  }
  if (!initial.valid_in(g)) throw InvariantViolation("initial matching is not valid");
  const auto k = static_cast<std::size_t>(std::ceil(1.0 / epsilon - 1e-12));
  const std::size_t max_len = 2 * k - 1;
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> mate = detail::mates_of(n, initial);
  while (true) {
    std::vector<bool> blocked(n, false), on_path(n, false);
    std::vector<std::vector<Vertex>> found;
    for (Vertex s = 0; s < n; ++s) {
      if (mate[s] != kNoVertex || blocked[s]) continue;
      std::vector<Vertex> path{s};
      on_path[s] = true;
      if (detail::extend_augmenting(g, mate, on_path, blocked, s, max_len, path)) {
        for (Vertex v : path) blocked[v] = true;
        found.push_back(path);
      }
      for (Vertex v : path) on_path[v] = false;
    }
    if (found.empty()) break;
    for (const auto& path : found) {
      for (std::size_t i = 0; i + 1 < path.size(); i += 2) {
        mate[path[i]] = path[i + 1];
        mate[path[i + 1]] = path[i];
      }
    }
  }
  return detail::from_mates(mate);
}

// Starts from the greedy maximal matching in edge-id order.
inline Matching approx_matching_eps(const SignedGraph& g, double epsilon) {
  return approx_matching_eps(g, epsilon, maximal_matching_in_order(g, g.edges()));
}

// Matched pairs become clusters of two, everything else is a singleton.
inline Clustering matching_to_clustering(const SignedGraph& g, const Matching& m) {
  if (!m.valid_in(g)) throw InvariantViolation("not a matching of the positive graph");
  std::vector<Vertex> mate = detail::mates_of(g.vertex_count(), m);
  std::vector<ClusterId> a(g.vertex_count());
  for (Vertex v = 0; v < a.size(); ++v) a[v] = mate[v] == kNoVertex ? v : std::min(v, mate[v]);
  return Clustering(std::move(a));
}

}  // namespace arbocc

#endif  // ARBOCC_MATCHING_HPP_

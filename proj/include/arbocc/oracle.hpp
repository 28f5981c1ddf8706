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

// Brute-force and sequential reference implementations. These are ground
// truth for the tests; they favour obviousness over speed and enforce size
// limits explicitly.

#ifndef ARBOCC_ORACLE_HPP_
#define ARBOCC_ORACLE_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "arbocc/common.hpp"
#include "arbocc/graph.hpp"
#include "arbocc/ordering.hpp"

namespace arbocc::oracle {

inline constexpr std::size_t kMaxOptVertices = 12;
inline constexpr std::size_t kMaxMatchingEdges = 24;
inline constexpr std::size_t kMaxArboricityVertices = 16;
inline constexpr std::size_t kMaxPivotExpectationVertices = 16;
inline constexpr std::size_t kMaxExhaustiveRadiusVertices = 10;

struct OptResult {
  std::uint64_t opt_cost = 0;
  Clustering witness;
  // First optimum (in enumeration order) whose clusters all have size at
  // most max(1, 4*lambda - 2); empty if no optimum satisfies the bound.
  std::optional<Clustering> bounded_witness;
};

inline std::size_t cluster_size_bound(std::size_t lambda) {
  return lambda == 0 ? 1 : 4 * lambda - 2;
}

// Exhaustive search over all set partitions, enumerated as restricted-growth
// strings in lexicographic order. Branches whose partial cost already exceeds
// the best complete cost are cut; ties are kept, so every optimum is visited
// and the witnesses are the lexicographically first qualifying ones.
inline OptResult brute_force_opt(const SignedGraph& g, std::size_t lambda) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxOptVertices) {
    throw SizeError("brute_force_opt supports n <= " +
                    std::to_string(kMaxOptVertices) + ", got n=" +
                    std::to_string(n));
  }
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  const std::size_t bound = cluster_size_bound(lambda);

  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::vector<ClusterId> rgs(n, 0), best_rgs, bounded_rgs;
  bool have_bounded = false;
  std::vector<std::uint32_t> masks(n, 0);
  std::vector<std::size_t> sizes(n, 0);

  std::function<void(std::size_t, std::size_t, std::uint64_t, std::size_t)> go =
      [&](std::size_t v, std::size_t blocks, std::uint64_t partial,
          std::size_t largest) {
        if (partial > best) return;
        if (v == n) {
          if (partial < best) {
            best = partial;
            best_rgs = rgs;
            have_bounded = false;
          }
          if (!have_bounded && largest <= bound) {
            have_bounded = true;
            bounded_rgs = rgs;
          }
          return;
        }
        const std::uint32_t earlier = (1u << v) - 1;
        const std::uint32_t pos_earlier = adj[v] & earlier;
        for (std::size_t k = 0; k <= blocks && k < n; ++k) {
          const std::uint32_t m = masks[k];
          std::uint64_t delta =
              std::popcount(pos_earlier & ~m) +
              std::popcount(m & ~adj[v]);
          rgs[v] = static_cast<ClusterId>(k);
          masks[k] |= 1u << v;
          ++sizes[k];
          go(v + 1, k == blocks ? blocks + 1 : blocks, partial + delta,
             std::max(largest, sizes[k]));
          --sizes[k];
          masks[k] &= ~(1u << v);
        }
      };
  go(0, 0, 0, 0);

  OptResult r;
  r.opt_cost = n == 0 ? 0 : best;
  r.witness = Clustering(n == 0 ? std::vector<ClusterId>{} : best_rgs);
  if (n == 0) {
    r.bounded_witness = r.witness;
  } else if (have_bounded) {
    r.bounded_witness = Clustering(bounded_rgs);
  }
  return r;
}

// Arboricity by the Nash-Williams formula: max over vertex subsets S with
// |S| >= 2 of ceil(|E(S)| / (|S| - 1)).
inline std::size_t exact_arboricity(const SignedGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxArboricityVertices) {
    throw SizeError("exact_arboricity supports n <= " +
                    std::to_string(kMaxArboricityVertices));
  }
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    const int k = std::popcount(s);
    if (k < 2) continue;
    std::size_t inside = 0;
    for (const Edge& e : g.edges()) {
      if ((s >> e.u & 1u) && (s >> e.v & 1u)) ++inside;
    }
    best = std::max(best, (inside + k - 2) / (k - 1));
  }
  return best;
}

// Maximum-cardinality matching by exhaustive include/exclude search over the
// edge list.
inline std::vector<Edge> brute_force_max_matching(const SignedGraph& g) {
  const auto& edges = g.edges();
  if (edges.size() > kMaxMatchingEdges) {
    throw SizeError("brute_force_max_matching supports |E+| <= " +
                    std::to_string(kMaxMatchingEdges) + ", got " +
                    std::to_string(edges.size()));
  }
  std::vector<bool> used(g.vertex_count(), false);
  std::vector<Edge> current, best;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (current.size() + (edges.size() - i) <= best.size()) return;
    if (i == edges.size()) {
      best = current;
      return;
    }
    const Edge& e = edges[i];
    if (!used[e.u] && !used[e.v]) {
      used[e.u] = used[e.v] = true;
      current.push_back(e);
      go(i + 1);
      current.pop_back();
      used[e.u] = used[e.v] = false;
    }
    go(i + 1);
  };
  go(0);
  return best;
}

// Greedy MIS with respect to `pi`: scan by rank, take a vertex iff no
// earlier-ranked neighbour was taken. Returns the MIS sorted by vertex id.
inline std::vector<Vertex> sequential_greedy_mis(const SignedGraph& g,
                                                 const VertexOrdering& pi) {
  std::vector<bool> taken(g.vertex_count(), false), blocked(g.vertex_count(), false);
  for (Vertex v : pi.order()) {
    if (blocked[v]) continue;
    taken[v] = true;
    for (Vertex w : g.neighbors(v)) blocked[w] = true;
  }
  std::vector<Vertex> mis;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (taken[v]) mis.push_back(v);
  }
  return mis;
}

// Round (1-based) at which each vertex is decided by the synchronous greedy
// rule: an undecided vertex joins when every lower-ranked neighbour is
// dominated, and a vertex is dominated in the round a neighbour joins.
inline std::vector<std::size_t> greedy_decision_rounds(const SignedGraph& g,
                                                       const VertexOrdering& pi) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> round(n, 0);
  std::vector<bool> in_mis(n, false);
  for (Vertex v : pi.order()) {
    const Rank rv = pi.rank_of(v);
    std::size_t last_blocker = 0;
    std::size_t first_dominator = std::numeric_limits<std::size_t>::max();
    for (Vertex w : g.neighbors(v)) {
      if (pi.rank_of(w) > rv) continue;
      if (in_mis[w]) {
        first_dominator = std::min(first_dominator, round[w]);
      } else {
        last_blocker = std::max(last_blocker, round[w]);
      }
    }
    if (first_dominator == std::numeric_limits<std::size_t>::max()) {
      in_mis[v] = true;
      round[v] = last_blocker + 1;
    } else {
      round[v] = first_dominator;
    }
  }
  return round;
}

// Longest dependency chain realised by `pi`: the number of synchronous
// greedy rounds needed before every vertex is decided.
inline std::size_t longest_dependency_path(const SignedGraph& g,
                                           const VertexOrdering& pi) {
  auto rounds = greedy_decision_rounds(g, pi);
  return rounds.empty() ? 0 : *std::max_element(rounds.begin(), rounds.end());
}

struct DependencyRadius {
  std::size_t hops = 0;
  // false: `hops` is the dependency-chain proxy (decision round of v), not
  // the exhaustively certified radius.
  bool exact = true;
};

inline std::vector<std::size_t> bfs_distances(const SignedGraph& g, Vertex s) {
  std::vector<std::size_t> dist(g.vertex_count(),
                                std::numeric_limits<std::size_t>::max());
  std::queue<Vertex> q;
  dist[s] = 0;
  q.push(s);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == std::numeric_limits<std::size_t>::max()) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

// Smallest r such that v's greedy-MIS status is the same for every ordering
// that keeps the ranks of the r-hop ball of v fixed and permutes the other
// vertices over the remaining ranks. Exhaustive up to
// kMaxExhaustiveRadiusVertices vertices; beyond that returns the proxy.
inline DependencyRadius dependency_radius(const SignedGraph& g,
                                          const VertexOrdering& pi, Vertex v) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxExhaustiveRadiusVertices) {
    return {greedy_decision_rounds(g, pi)[v], false};
  }
  const auto dist = bfs_distances(g, v);
  auto status = [&](const std::vector<Rank>& ranks) {
    std::vector<Vertex> order(n);
    for (Vertex u = 0; u < n; ++u) order[ranks[u]] = u;
    std::vector<bool> blocked(n, false);
    for (Vertex u : order) {
      if (u == v) return !blocked[u];
      if (blocked[u]) continue;
      for (Vertex w : g.neighbors(u)) blocked[w] = true;
    }
    return false;
  };
  const bool reference = status(std::vector<Rank>(pi.ranks().begin(), pi.ranks().end()));
  for (std::size_t r = 0;; ++r) {
    std::vector<Vertex> outside;
    std::vector<Rank> free_ranks;
    std::vector<Rank> ranks(n);
    for (Vertex u = 0; u < n; ++u) {
      if (dist[u] <= r) {
        ranks[u] = pi.rank_of(u);
      } else {
        outside.push_back(u);
        free_ranks.push_back(pi.rank_of(u));
      }
    }
    std::sort(free_ranks.begin(), free_ranks.end());
    bool stable = true;
    do {
      for (std::size_t i = 0; i < outside.size(); ++i) ranks[outside[i]] = free_ranks[i];
      if (status(ranks) != reference) {
        stable = false;
        break;
      }
    } while (std::next_permutation(free_ranks.begin(), free_ranks.end()));
    if (stable) return {r, true};
  }
}

// Exact expected PIVOT cost under a uniformly random ordering: the first
// pivot is uniform over the remaining vertices, recursively.
inline double exact_pivot_expectation(const SignedGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxPivotExpectationVertices) {
    throw SizeError("exact_pivot_expectation supports n <= " +
                    std::to_string(kMaxPivotExpectationVertices));
  }
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  std::vector<double> memo(std::size_t{1} << n, -1.0);
  memo[0] = 0.0;
  std::function<double(std::uint32_t)> expect = [&](std::uint32_t alive) {
    if (memo[alive] >= 0.0) return memo[alive];
    double total = 0.0;
    for (Vertex v = 0; v < n; ++v) {
      if (!(alive >> v & 1u)) continue;
      const std::uint32_t cluster = (adj[v] & alive) | (1u << v);
      const std::uint32_t rest = alive & ~cluster;
      std::uint64_t inside_pos = 0, cut = 0;
      for (Vertex u = 0; u < n; ++u) {
        if (!(cluster >> u & 1u)) continue;
        inside_pos += std::popcount(adj[u] & cluster);
        cut += std::popcount(adj[u] & rest);
      }
      inside_pos /= 2;
      const std::uint64_t k = std::popcount(cluster);
      const double here = static_cast<double>(k * (k - 1) / 2 - inside_pos + cut);
      total += here + expect(rest);
    }
    return memo[alive] = total / std::popcount(alive);
  };
  return n == 0 ? 0.0 : expect(static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1));
}

}  // namespace arbocc::oracle

#endif  // ARBOCC_ORACLE_HPP_

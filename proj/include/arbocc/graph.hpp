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

// Complete signed graphs stored as their positive edge set, clusterings,
// and the disagreement cost.

#ifndef ARBOCC_GRAPH_HPP_
#define ARBOCC_GRAPH_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "arbocc/common.hpp"

namespace arbocc {

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  // Normalized so that u < v.
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  auto operator<=>(const Edge&) const = default;
};

// A complete signed graph on vertices 0..n-1. Only E+ is stored; every pair
// not in E+ is a negative edge.
class SignedGraph {
 public:
  SignedGraph() : offsets_(1, 0) {}
  explicit SignedGraph(std::size_t n) : n_(n), offsets_(n + 1, 0) {}

  // Builds from an arbitrary edge list. Duplicates (in either orientation)
  // collapse; self-loops and out-of-range endpoints throw.
  static SignedGraph from_edges(std::size_t n, std::vector<Edge> edges) {
    for (const Edge& e : edges) {
      if (e.u == e.v) {
        throw InvariantViolation("self-loop at vertex " + std::to_string(e.u));
      }
      if (e.v >= n) {
        throw InvariantViolation("edge endpoint " + std::to_string(e.v) +
                                 " out of range for n=" + std::to_string(n));
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    SignedGraph g(n);
    g.edges_ = std::move(edges);
    g.build_adjacency();
    return g;
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t positive_edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex a, Vertex b) const {
    if (a == b) return false;
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  // Same vertex set; every positive edge touching a vertex flagged in
  // `removed` is dropped, so removed vertices become isolated.
  SignedGraph without_vertices(const std::vector<bool>& removed) const {
    std::vector<Edge> kept;
    kept.reserve(edges_.size());
    for (const Edge& e : edges_) {
      if (!removed[e.u] && !removed[e.v]) kept.push_back(e);
    }
    SignedGraph g(n_);
    g.edges_ = std::move(kept);
    g.build_adjacency();
    return g;
  }

  // Induced subgraph on `keep`, relabelled to 0..k-1 in the order given.
  SignedGraph induced(std::span<const Vertex> keep) const {
    std::unordered_map<Vertex, Vertex> local;
    local.reserve(keep.size());
    for (Vertex i = 0; i < keep.size(); ++i) local.emplace(keep[i], i);
    std::vector<Edge> sub;
    for (Vertex i = 0; i < keep.size(); ++i) {
      for (Vertex w : neighbors(keep[i])) {
        auto it = local.find(w);
        if (it != local.end() && i < it->second) sub.emplace_back(i, it->second);
      }
    }
    return from_edges(keep.size(), std::move(sub));
  }

  bool operator==(const SignedGraph& o) const {
    return n_ == o.n_ && edges_ == o.edges_;
  }

 private:
  void build_adjacency() {
    offsets_.assign(n_ + 1, 0);
    for (const Edge& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adj_.assign(2 * edges_.size(), 0);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges_) {
      adj_[fill[e.u]++] = e.v;
      adj_[fill[e.v]++] = e.u;
    }
    // Edges are sorted by (u, v), so each list is already sorted: entries
    // below v come from edges (w, v) in increasing w, and entries above v
    // from edges (v, w) in increasing w, and the former precede the latter.
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adj_;
};

// Reads the edge-list text format: one "u v" pair per line, whitespace
// separated, '#' starts a comment, blank lines ignored.
inline SignedGraph load_graph(std::istream& in, std::size_t n) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string tok;
    std::vector<std::string> toks;
    while (fields >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (toks.size() != 2) {
      throw ParseError(line_no, "expected exactly two vertex ids, got " +
                                    std::to_string(toks.size()) + " fields");
    }
    Vertex ends[2];
    for (int k = 0; k < 2; ++k) {
      const std::string& t = toks[k];
      if (t.empty() || !std::all_of(t.begin(), t.end(), [](char ch) {
            return ch >= '0' && ch <= '9';
          })) {
        throw ParseError(line_no, "malformed vertex id '" + t + "'");
      }
      unsigned long long value = 0;
      try {
        value = std::stoull(t);
      } catch (const std::exception&) {
        throw ParseError(line_no, "vertex id '" + t + "' does not fit");
      }
      if (value >= n) {
        throw ParseError(line_no, "vertex id " + t + " out of range for n=" +
                                      std::to_string(n));
      }
      ends[k] = static_cast<Vertex>(value);
    }
    if (ends[0] == ends[1]) {
      throw ParseError(line_no, "self-loop at vertex " + toks[0]);
    }
    edges.emplace_back(ends[0], ends[1]);
  }
  return SignedGraph::from_edges(n, std::move(edges));
}

inline SignedGraph load_graph(const std::string& text, std::size_t n) {
  std::istringstream in(text);
  return load_graph(in, n);
}

inline void write_edge_list(std::ostream& out, const SignedGraph& g) {
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

// A partition of 0..n-1, stored as a total assignment vertex -> cluster id.
class Clustering {
 public:
  Clustering() = default;
  explicit Clustering(std::vector<ClusterId> assignment)
      : assignment_(std::move(assignment)) {}

  static Clustering singletons(std::size_t n) {
    std::vector<ClusterId> a(n);
    std::iota(a.begin(), a.end(), ClusterId{0});
    return Clustering(std::move(a));
  }
  static Clustering one_cluster(std::size_t n) {
    return Clustering(std::vector<ClusterId>(n, 0));
  }

  // Throws InvariantViolation unless `clusters` are disjoint and cover 0..n-1.
  static Clustering from_clusters(std::size_t n,
                                  const std::vector<std::vector<Vertex>>& clusters) {
    std::vector<ClusterId> a(n, std::numeric_limits<ClusterId>::max());
    for (ClusterId c = 0; c < clusters.size(); ++c) {
      for (Vertex v : clusters[c]) {
        if (v >= n) throw InvariantViolation("cluster member out of range");
        if (a[v] != std::numeric_limits<ClusterId>::max()) {
          throw InvariantViolation("vertex " + std::to_string(v) +
                                   " assigned to two clusters");
        }
        a[v] = c;
      }
    }
    for (Vertex v = 0; v < n; ++v) {
      if (a[v] == std::numeric_limits<ClusterId>::max()) {
        throw InvariantViolation("vertex " + std::to_string(v) +
                                 " not covered by any cluster");
      }
    }
    return Clustering(std::move(a));
  }

  std::size_t vertex_count() const noexcept { return assignment_.size(); }
  ClusterId cluster_of(Vertex v) const { return assignment_[v]; }
  std::span<const ClusterId> assignment() const noexcept { return assignment_; }

  // Clusters ordered by their smallest member; members sorted.
  std::vector<std::vector<Vertex>> clusters() const {
    std::vector<std::vector<Vertex>> out;
    std::unordered_map<ClusterId, std::size_t> slot;
    for (Vertex v = 0; v < assignment_.size(); ++v) {
      auto [it, fresh] = slot.try_emplace(assignment_[v], out.size());
      if (fresh) out.emplace_back();
      out[it->second].push_back(v);
    }
    return out;
  }

  // Relabels clusters 0,1,2,... in order of first appearance. Two clusterings
  // describe the same partition iff their canonical forms are equal.
  Clustering canonical() const {
    std::vector<ClusterId> a(assignment_.size());
    std::unordered_map<ClusterId, ClusterId> relabel;
    for (Vertex v = 0; v < a.size(); ++v) {
      auto [it, fresh] = relabel.try_emplace(
          assignment_[v], static_cast<ClusterId>(relabel.size()));
      a[v] = it->second;
    }
    return Clustering(std::move(a));
  }

  bool same_partition(const Clustering& o) const {
    return canonical().assignment_ == o.canonical().assignment_;
  }

  std::size_t max_cluster_size() const {
    std::unordered_map<ClusterId, std::size_t> sizes;
    std::size_t best = 0;
    for (ClusterId c : assignment_) best = std::max(best, ++sizes[c]);
    return best;
  }

 private:
  std::vector<ClusterId> assignment_;
};

// Number of disagreements: positive edges between clusters plus negative
// pairs inside clusters. Negative pairs are counted per cluster as
// C(|C|,2) minus the positive pairs it contains.
inline std::uint64_t cost(const SignedGraph& g, const Clustering& c) {
  if (c.vertex_count() != g.vertex_count()) {
    throw InvariantViolation("clustering covers " +
                             std::to_string(c.vertex_count()) +
                             " vertices, graph has " +
                             std::to_string(g.vertex_count()));
  }
  std::unordered_map<ClusterId, std::uint64_t> size;
  std::unordered_map<ClusterId, std::uint64_t> inside;
  for (ClusterId id : c.assignment()) ++size[id];
  std::uint64_t cut = 0;
  for (const Edge& e : g.edges()) {
    if (c.cluster_of(e.u) == c.cluster_of(e.v)) {
      ++inside[c.cluster_of(e.u)];
    } else {
      ++cut;
    }
  }
  std::uint64_t negative_inside = 0;
  for (auto [id, s] : size) negative_inside += s * (s - 1) / 2 - inside[id];
  return cut + negative_inside;
}

struct DegreeProfile {
  std::vector<std::size_t> degrees;
  std::size_t max_degree = 0;
};

inline DegreeProfile degree_profile(const SignedGraph& g) {
  DegreeProfile p;
  p.degrees.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    p.degrees[v] = g.degree(v);
    p.max_degree = std::max(p.max_degree, p.degrees[v]);
  }
  return p;
}

// Degeneracy by repeated removal of a minimum-degree vertex (bucket queue).
inline std::size_t degeneracy(const SignedGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return 0;
  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::vector<Vertex>> buckets(max_deg + 1);
  for (Vertex v = 0; v < n; ++v) buckets[deg[v]].push_back(v);
  std::vector<bool> gone(n, false);
  std::size_t result = 0;
  std::size_t low = 0;
  for (std::size_t removed = 0; removed < n;) {
    while (buckets[low].empty()) ++low;
    Vertex v = buckets[low].back();
    buckets[low].pop_back();
    if (gone[v] || deg[v] != low) continue;  // stale entry
    gone[v] = true;
    ++removed;
    result = std::max(result, low);
    for (Vertex w : g.neighbors(v)) {
      if (gone[w]) continue;
      --deg[w];
      buckets[deg[w]].push_back(w);
      if (deg[w] < low) low = deg[w];
    }
  }
  return result;
}

struct ArboricityEstimate {
  std::optional<std::size_t> lambda_input;
  std::size_t degeneracy = 0;
  // Certified interval [lower, upper] containing the arboricity.
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::optional<std::string> warning;

  // λ to hand to algorithms: the declared value if given, else the upper end.
  std::size_t lambda() const { return lambda_input.value_or(upper); }
};

inline ArboricityEstimate estimate_arboricity(
    const SignedGraph& g, std::optional<std::size_t> lambda_input = {}) {
  ArboricityEstimate est;
  est.lambda_input = lambda_input;
  est.degeneracy = degeneracy(g);
  est.lower = (est.degeneracy + 1) / 2;
  est.upper = est.degeneracy;
  if (lambda_input &&
      (*lambda_input < est.lower || *lambda_input > est.upper)) {
    est.warning = "declared lambda " + std::to_string(*lambda_input) +
                  " outside certified interval [" + std::to_string(est.lower) +
                  ", " + std::to_string(est.upper) + "]";
  }
  return est;
}

// Size of a greedy packing of pairwise-disjoint bad triangles (triples with
// two positive and one negative pair). Any clustering pays at least one
// disagreement per packed triangle.
inline std::size_t greedy_bad_triangle_packing(const SignedGraph& g) {
  std::unordered_set<std::uint64_t> used;
  auto key = [](Vertex a, Vertex b) {
    Edge e(a, b);
    return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
  };
  std::size_t packed = 0;
  for (Vertex center = 0; center < g.vertex_count(); ++center) {
    auto nb = g.neighbors(center);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (used.contains(key(center, nb[i]))) continue;
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        Vertex a = nb[i], b = nb[j];
        if (g.has_edge(a, b)) continue;
        if (used.contains(key(center, b)) || used.contains(key(a, b))) continue;
        used.insert(key(center, a));
        used.insert(key(center, b));
        used.insert(key(a, b));
        ++packed;
        break;
      }
    }
  }
  return packed;
}

// Connected components of E+; returns component id per vertex, ids assigned
// in order of smallest member.
inline std::vector<std::size_t> connected_components(const SignedGraph& g,
                                                     std::size_t* count = nullptr) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> comp(n, n);
  std::size_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (comp[w] == n) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

inline bool is_forest(const SignedGraph& g) {
  std::size_t components = 0;
  connected_components(g, &components);
  return g.positive_edge_count() + components == g.vertex_count();
}

}  // namespace arbocc

#endif  // ARBOCC_GRAPH_HPP_

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

// Correlation clustering algorithms: PIVOT (sequential and on the MPC
// simulator), the high-degree truncation wrapper, and the clique-singleton
// algorithm for low-arboricity graphs.

#ifndef ARBOCC_CLUSTER_ALGS_HPP_
#define ARBOCC_CLUSTER_ALGS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "arbocc/common.hpp"
#include "arbocc/graph.hpp"
#include "arbocc/greedy_mis.hpp"
#include "arbocc/matching.hpp"
#include "arbocc/mpc.hpp"
#include "arbocc/ordering.hpp"

namespace arbocc {

// Scans ranks in order; every vertex still present becomes a pivot and
// takes its present positive neighbours along.
inline Clustering pivot_sequential(const SignedGraph& g, const VertexOrdering& pi) {
  const std::size_t n = g.vertex_count();
  std::vector<ClusterId> a(n, std::numeric_limits<ClusterId>::max());
  constexpr ClusterId kUnassigned = std::numeric_limits<ClusterId>::max();
  for (Vertex pivot : pi.order()) {
    if (a[pivot] != kUnassigned) continue;
    a[pivot] = pivot;
    for (Vertex w : g.neighbors(pivot)) {
      if (a[w] == kUnassigned) a[w] = pivot;
    }
  }
  return Clustering(std::move(a));
}

// PIVOT clusters from a greedy MIS: each MIS vertex leads a cluster and
// every other vertex joins its smallest-rank MIS neighbour.
inline Clustering pivot_from_mis(const SignedGraph& g, const VertexOrdering& pi,
                                 std::span<const Vertex> mis) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> in(n, false);
  for (Vertex v : mis) in[v] = true;
  std::vector<ClusterId> a(n);
  for (Vertex v = 0; v < n; ++v) {
    if (in[v]) {
      a[v] = v;
      continue;
    }
    Vertex best = kNoVertex;
    for (Vertex w : g.neighbors(v)) {
      if (in[w] && (best == kNoVertex || pi.rank_of(w) < pi.rank_of(best))) best = w;
    }
    if (best == kNoVertex) throw InvariantViolation("set is not dominating");
    a[v] = best;
  }
  return Clustering(std::move(a));
}

struct PivotExpectation {
  double mean_cost = 0.0;
  std::size_t trials = 0;
  std::uint64_t min_cost = 0;
  std::uint64_t max_cost = 0;
};

// Mean PIVOT cost over `trials` orderings seeded by derive_seed(seed, t).
inline PivotExpectation pivot_expectation_check(const SignedGraph& g, std::size_t trials,
                                                std::uint64_t seed) {
  PivotExpectation out;
  out.trials = trials;
  out.min_cost = std::numeric_limits<std::uint64_t>::max();
  double total = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto pi = VertexOrdering::random(g.vertex_count(), derive_seed(seed, t));
    const std::uint64_t c = cost(g, pivot_sequential(g, pi));
    total += static_cast<double>(c);
    out.min_cost = std::min(out.min_cost, c);
    out.max_cost = std::max(out.max_cost, c);
  }
  if (trials == 0) out.min_cost = 0;
  out.mean_cost = trials == 0 ? 0.0 : total / static_cast<double>(trials);
  return out;
}

// ---------------------------------------------------------------------------
// Truncation.

struct TruncationSplit {
  double epsilon = 0.0;
  std::size_t lambda = 0;
  double threshold = 0.0;      // 8(1+eps)/eps * lambda
  std::vector<Vertex> high;    // degree strictly above the threshold
  std::vector<bool> is_high;
  SignedGraph g_prime;         // same vertex set, high vertices isolated
  std::size_t marked_edges = 0;  // positive edges touching a high vertex
  std::size_t high_degree_sum = 0;
};

inline double truncation_threshold(std::size_t lambda, double epsilon) {
  return 8.0 * (1.0 + epsilon) / epsilon * static_cast<double>(lambda);
}

inline TruncationSplit truncate(const SignedGraph& g, std::size_t lambda, double epsilon) {
  if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be positive");
  if (lambda < 1) throw PreconditionError("lambda must be at least 1");
  TruncationSplit s;
  s.epsilon = epsilon;
  s.lambda = lambda;
  s.threshold = truncation_threshold(lambda, epsilon);
  s.is_high.assign(g.vertex_count(), false);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (static_cast<double>(g.degree(v)) > s.threshold) {
      s.is_high[v] = true;
      s.high.push_back(v);
      s.high_degree_sum += g.degree(v);
    }
  }
  for (const Edge& e : g.edges()) s.marked_edges += (s.is_high[e.u] || s.is_high[e.v]) ? 1 : 0;
  s.g_prime = g.without_vertices(s.is_high);
  return s;
}

// Forces every high vertex into its own cluster.
inline Clustering with_high_singletons(const TruncationSplit& split, const Clustering& inner) {
  std::vector<ClusterId> a(inner.assignment().begin(), inner.assignment().end());
  const ClusterId fresh = static_cast<ClusterId>(a.size());
  for (Vertex v : split.high) a[v] = fresh + v;
  return Clustering(std::move(a)).canonical();
}

struct TruncationResult {
  Clustering clustering;
  TruncationSplit split;
};

using ClusteringAlgorithm = std::function<Clustering(const SignedGraph&)>;

// Runs `inner` on the graph without high-degree vertices and returns its
// clustering with high vertices as singletons.
inline TruncationResult truncate_and_run(const SignedGraph& g, std::size_t lambda,
                                         double epsilon, const ClusteringAlgorithm& inner) {
  TruncationSplit split = truncate(g, lambda, epsilon);
  Clustering inner_result = inner(split.g_prime);
  if (inner_result.vertex_count() != g.vertex_count()) {
    throw InvariantViolation("inner algorithm returned a clustering of the wrong size");
  }
  Clustering out = with_high_singletons(split, inner_result);
  return {std::move(out), std::move(split)};
}

// ---------------------------------------------------------------------------
// PIVOT on the MPC simulator.

struct PivotMpcResult {
  Clustering clustering;
  TruncationSplit split;
  mis::MisReport mis;
  std::size_t rounds = 0;
  std::size_t peak_memory = 0;
};

// Truncation at eps = 2 (threshold 12 lambda), greedy MIS on the remainder
// planned with max degree 12 lambda, then one min-aggregate that hands every
// dominated vertex the rank of its smallest-rank MIS neighbour.
inline PivotMpcResult pivot_mpc(mpc::MpcRuntime& rt, const SignedGraph& g, std::size_t lambda,
                                const VertexOrdering& pi,
                                mis::Subroutine sub = mis::Subroutine::alg2,
                                mis::MisOptions opt = {}) {
  const std::size_t start = rt.round();
  TruncationSplit split = truncate(g, lambda, 2.0);
  // High vertices know their own degree; one round tells their neighbours
  // to drop the shared edges.
  {
    std::vector<mpc::NoState> st(rt.machine_count());
    rt.run_round(st, [&](std::size_t m, mpc::NoState&, auto, mpc::Outbox& out) {
      std::unordered_map<std::size_t, std::vector<mpc::Word>> per_dest;
      for (Vertex v : rt.hosted(m)) {
        if (!split.is_high[v]) continue;
        for (Vertex w : g.neighbors(v)) {
          per_dest[rt.machine_of(w)].push_back(w);
          per_dest[rt.machine_of(w)].push_back(v);
        }
      }
      std::vector<std::size_t> dests;
      for (auto& [d, _] : per_dest) dests.push_back(d);
      std::sort(dests.begin(), dests.end());
      for (std::size_t d : dests) out.send(d, per_dest[d]);
    });
    rt.local_step(st, [](std::size_t, mpc::NoState&, std::span<const mpc::MessageView>) {});
  }
  opt.planning_max_degree = 12 * lambda;
  mis::MisResult mr = mis::greedy_mis_alg1(rt, split.g_prime, pi, sub, opt);
  std::vector<std::optional<mpc::Word>> values(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (mr.state.status[v] == mis::MisStatus::in_mis) values[v] = pi.rank_of(v);
  }
  const auto smallest = mpc::broadcast_aggregate(rt, split.g_prime, mpc::Aggregate::min, values);
  std::vector<ClusterId> a(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (mr.state.status[v] == mis::MisStatus::in_mis) {
      a[v] = v;
    } else {
      if (!smallest[v]) throw InvariantViolation("dominated vertex without MIS neighbour");
      a[v] = pi.at(static_cast<Rank>(*smallest[v]));
    }
  }
  PivotMpcResult res{with_high_singletons(split, Clustering(std::move(a))), std::move(split),
                     std::move(mr.report), 0, 0};
  res.rounds = rt.round() - start;
  res.peak_memory = rt.report().peak_memory;
  return res;
}

// The sequential pipeline pivot_mpc reproduces.
inline Clustering pivot_truncated_sequential(const SignedGraph& g, std::size_t lambda,
                                             const VertexOrdering& pi) {
  return truncate_and_run(g, lambda, 2.0, [&](const SignedGraph& gp) {
           return pivot_sequential(gp, pi);
         }).clustering;
}

// ---------------------------------------------------------------------------
// Clique-singleton.

struct CliqueSingletonResult {
  Clustering clustering;
  std::size_t rounds = 0;
  std::size_t low_degree_vertices = 0;
  std::size_t hash_candidates = 0;
  std::size_t accepted = 0;
};

namespace detail {

inline std::uint64_t closed_neighborhood_hash(const SignedGraph& g, Vertex v) {
  std::vector<Vertex> closed(g.neighbors(v).begin(), g.neighbors(v).end());
  closed.insert(std::lower_bound(closed.begin(), closed.end(), v), v);
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (Vertex w : closed) h = mix64(h ^ (static_cast<std::uint64_t>(w) + 0x632be59bd9b4e019ull));
  return h >> 1;
}

}  // namespace detail

// Every positive component that is a clique on at most 2*lambda vertices
// becomes one cluster, everything else is a singleton. A vertex of degree
// at most 2*lambda-1 hashes its closed neighbourhood; two aggregates
// (min and max over neighbours) find vertices whose neighbours all agree,
// one exact round compares the neighbourhoods themselves, and a final
// min-aggregate requires acceptance by all neighbours.
inline CliqueSingletonResult clique_singleton(mpc::MpcRuntime& rt, const SignedGraph& g,
                                              std::size_t lambda) {
  if (lambda < 1) throw PreconditionError("lambda must be at least 1");
  const std::size_t start = rt.round();
  const std::size_t n = g.vertex_count();
  const std::size_t degree_cap = 2 * lambda - 1;
  CliqueSingletonResult res;
  std::vector<bool> low(n, false);
  std::vector<std::optional<mpc::Word>> hash(n);
  for (Vertex v = 0; v < n; ++v) {
    low[v] = g.degree(v) <= degree_cap;
    if (low[v]) {
      hash[v] = detail::closed_neighborhood_hash(g, v);
      ++res.low_degree_vertices;
    }
  }
  const auto lo = mpc::broadcast_aggregate(rt, g, mpc::Aggregate::min, hash);
  const auto hi = mpc::broadcast_aggregate(rt, g, mpc::Aggregate::max, hash);
  std::vector<bool> candidate(n, false);
  for (Vertex v = 0; v < n; ++v) {
    if (!low[v]) continue;
    candidate[v] = g.degree(v) == 0 || (lo[v] == hash[v] && hi[v] == hash[v]);
    res.hash_candidates += candidate[v] ? 1 : 0;
  }

  // Exact pass: candidates send their closed neighbourhood to their
  // neighbours, which accept only if every neighbour sent theirs and all of
  // them equal their own.
  struct Received {
    std::size_t count = 0;
    std::size_t words() const noexcept { return 0; }
  };
  std::vector<bool> exact(n, false);
  std::vector<std::size_t> agreeing(n, 0);
  std::vector<Received> st(rt.machine_count());
  auto closed_of = [&](Vertex v) {
    std::vector<mpc::Word> c(g.neighbors(v).begin(), g.neighbors(v).end());
    c.insert(std::lower_bound(c.begin(), c.end(), mpc::Word{v}), v);
    return c;
  };
  rt.run_round(st, [&](std::size_t m, Received&, auto, mpc::Outbox& out) {
    for (Vertex v : rt.hosted(m)) {
      if (!candidate[v]) continue;
      const auto c = closed_of(v);
      std::vector<mpc::Word> payload;
      for (Vertex w : g.neighbors(v)) {
        payload.assign({w});
        payload.insert(payload.end(), c.begin(), c.end());
        out.send(rt.machine_of(w), payload);
      }
    }
  });
  rt.local_step(st, [&](std::size_t, Received&, std::span<const mpc::MessageView> inbox) {
    for (const auto& msg : inbox) {
      const auto w = static_cast<Vertex>(msg.payload[0]);
      if (!candidate[w]) continue;
      const auto own = closed_of(w);
      const auto theirs = msg.payload.subspan(1);
      if (std::equal(own.begin(), own.end(), theirs.begin(), theirs.end())) ++agreeing[w];
    }
  });
  for (Vertex v = 0; v < n; ++v) exact[v] = candidate[v] && agreeing[v] == g.degree(v);

  std::vector<std::optional<mpc::Word>> flag(n);
  for (Vertex v = 0; v < n; ++v) flag[v] = exact[v] ? 1 : 0;
  const auto unanimous = mpc::broadcast_aggregate(rt, g, mpc::Aggregate::min, flag);
  std::vector<ClusterId> a(n);
  for (Vertex v = 0; v < n; ++v) {
    const bool accept = exact[v] && (g.degree(v) == 0 || unanimous[v] == mpc::Word{1});
    res.accepted += accept ? 1 : 0;
    // The closed neighbourhood is the whole component: label by its minimum.
    a[v] = accept ? std::min<Vertex>(v, g.degree(v) ? g.neighbors(v).front() : v) : v;
  }
  res.clustering = Clustering(std::move(a)).canonical();
  res.rounds = rt.round() - start;
  return res;
}

// ---------------------------------------------------------------------------
// Best of several seeds.

struct BestOf {
  Clustering clustering;
  std::uint64_t cost = 0;
  std::uint64_t seed = 0;
  std::size_t index = 0;
};

// Runs `run(seed_k)` for k = 0..copies-1 with seed_k = derive_seed(seed, k)
// and keeps the cheapest clustering (earliest on ties).
inline BestOf best_of(const SignedGraph& g, std::size_t copies, std::uint64_t seed,
                      const std::function<Clustering(std::uint64_t)>& run) {
  if (copies == 0) throw PreconditionError("best-of needs at least one copy");
  BestOf best;
  for (std::size_t k = 0; k < copies; ++k) {
    const std::uint64_t s = derive_seed(seed, k);
    Clustering c = run(s);
    const std::uint64_t value = cost(g, c);
    if (k == 0 || value < best.cost) best = {std::move(c), value, s, k};
  }
  return best;
}

}  // namespace arbocc

#endif  // ARBOCC_CLUSTER_ALGS_HPP_

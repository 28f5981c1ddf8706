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

// Deterministic graph generators.

#ifndef ARBOCC_GENERATORS_HPP_
#define ARBOCC_GENERATORS_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "arbocc/common.hpp"
#include "arbocc/graph.hpp"

namespace arbocc::gen {

inline SignedGraph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return SignedGraph::from_edges(n, std::move(e));
}

// Center 0, leaves 1..leaves.
inline SignedGraph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return SignedGraph::from_edges(leaves + 1, std::move(e));
}

inline SignedGraph clique(std::size_t k) {
  std::vector<Edge> e;
  for (Vertex a = 0; a < k; ++a) {
    for (Vertex b = a + 1; b < k; ++b) e.emplace_back(a, b);
  }
  return SignedGraph::from_edges(k, std::move(e));
}

// Two k-cliques on 0..k-1 and k..2k-1 joined by the edge (k-1, k).
inline SignedGraph barbell(std::size_t k) {
  if (k == 0) throw PreconditionError("barbell needs cliques of at least one vertex");
  std::vector<Edge> e;
  for (Vertex base : {Vertex{0}, static_cast<Vertex>(k)}) {
    for (Vertex a = 0; a < k; ++a) {
      for (Vertex b = a + 1; b < k; ++b) e.emplace_back(base + a, base + b);
    }
  }
  e.emplace_back(static_cast<Vertex>(k - 1), static_cast<Vertex>(k));
  return SignedGraph::from_edges(2 * k, std::move(e));
}

// Vertex v > 0 attaches to a uniform earlier vertex with probability
// `attach_probability`, else starts a new tree.
inline SignedGraph forest(std::size_t n, std::uint64_t seed, double attach_probability = 0.8) {
  Rng rng(seed);
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) {
    if (uniform_unit(rng) < attach_probability) {
      e.emplace_back(static_cast<Vertex>(uniform_below(rng, v)), v);
    }
  }
  return SignedGraph::from_edges(n, std::move(e));
}

// Union of `lambda` random spanning trees (random attachment over a random
// vertex order). Arboricity is at most lambda by construction.
inline SignedGraph arboric(std::size_t n, std::size_t lambda, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> e;
  std::vector<Vertex> perm(n);
  for (std::size_t f = 0; f < lambda; ++f) {
    for (Vertex v = 0; v < n; ++v) perm[v] = v;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
    for (std::size_t i = 1; i < n; ++i) e.emplace_back(perm[uniform_below(rng, i)], perm[i]);
  }
  return SignedGraph::from_edges(n, std::move(e));
}

// G(n, p) by geometric skipping over vertex pairs. With `max_degree`, an
// edge is dropped when either endpoint already has that many neighbours.
inline SignedGraph gnp(std::size_t n, double p, std::uint64_t seed,
                       std::optional<std::size_t> max_degree = {}) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> e;
  std::vector<std::size_t> deg(n, 0);
  auto add = [&](Vertex a, Vertex b) {
    if (max_degree && (deg[a] >= *max_degree || deg[b] >= *max_degree)) return;
    ++deg[a];
    ++deg[b];
    e.emplace_back(a, b);
  };
  if (p >= 1.0) {
    for (Vertex b = 1; b < n; ++b) {
      for (Vertex a = 0; a < b; ++a) add(a, b);
    }
  } else if (p > 0.0) {
    const double log_q = std::log1p(-p);
    std::int64_t v = 1, w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
      const double r = uniform_unit(rng);
      w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) add(static_cast<Vertex>(w), static_cast<Vertex>(v));
    }
  }
  return SignedGraph::from_edges(n, std::move(e));
}

// Random graph with average degree about `average_degree` and max degree
// at most `max_degree`.
inline SignedGraph bounded_degree(std::size_t n, double average_degree, std::size_t max_degree,
                                  std::uint64_t seed) {
  const double p = n > 1 ? std::min(1.0, average_degree / static_cast<double>(n - 1)) : 0.0;
  return gnp(n, p, seed, max_degree);
}

}  // namespace arbocc::gen

#endif  // ARBOCC_GENERATORS_HPP_

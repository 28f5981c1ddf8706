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

#ifndef ARBOCC_ORDERING_HPP_
#define ARBOCC_ORDERING_HPP_

#include <numeric>
#include <span>
#include <vector>

#include "arbocc/common.hpp"

namespace arbocc {

// A permutation of the vertices: at(r) is the vertex with rank r, and
// rank_of(v) its inverse. Lower rank means earlier.
class VertexOrdering {
 public:
  VertexOrdering() = default;

  // `order` lists vertices by increasing rank; must be a permutation.
  explicit VertexOrdering(std::vector<Vertex> order) : order_(std::move(order)) {
    rank_.assign(order_.size(), kUnset);
    for (Rank r = 0; r < order_.size(); ++r) {
      Vertex v = order_[r];
      if (v >= order_.size() || rank_[v] != kUnset) {
        throw InvariantViolation("vertex ordering is not a permutation");
      }
      rank_[v] = r;
    }
  }

  static VertexOrdering identity(std::size_t n) {
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    return VertexOrdering(std::move(order));
  }

  // Fisher-Yates shuffle driven by a seeded 64-bit generator.
  static VertexOrdering random(std::size_t n, Rng& rng) {
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    for (std::size_t i = n; i > 1; --i) {
      std::size_t j = uniform_below(rng, i);
      std::swap(order[i - 1], order[j]);
    }
    return VertexOrdering(std::move(order));
  }
  static VertexOrdering random(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return random(n, rng);
  }

  std::size_t size() const noexcept { return order_.size(); }
  Vertex at(Rank r) const { return order_[r]; }
  Rank rank_of(Vertex v) const { return rank_[v]; }
  std::span<const Vertex> order() const noexcept { return order_; }
  std::span<const Rank> ranks() const noexcept { return rank_; }

  // Builds an ordering from a rank per vertex (must be a permutation of
  // 0..n-1).
  static VertexOrdering from_ranks(std::span<const Rank> ranks) {
    std::vector<Vertex> order(ranks.size(), kUnset);
    for (Vertex v = 0; v < ranks.size(); ++v) {
      if (ranks[v] >= ranks.size() || order[ranks[v]] != kUnset) {
        throw InvariantViolation("rank assignment is not a permutation");
      }
      order[ranks[v]] = v;
    }
    return VertexOrdering(std::move(order));
  }

 private:
  static constexpr Rank kUnset = ~Rank{0};
  std::vector<Vertex> order_;
  std::vector<Rank> rank_;
};

}  // namespace arbocc

#endif  // ARBOCC_ORDERING_HPP_

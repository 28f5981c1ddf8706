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

#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "arbocc/generators.hpp"
#include "arbocc/graph.hpp"
#include "arbocc/oracle.hpp"

namespace arbocc {
namespace {

std::vector<Edge> edge_set(const SignedGraph& g) { return g.edges(); }

TEST(LoadGraph, ParsesTwoEdges) {
  const SignedGraph g = load_graph("0 1\n1 2", 3);
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(edge_set(g), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(LoadGraph, EmptyStreamGivesEdgelessGraph) {
  const SignedGraph g = load_graph("", 5);
  EXPECT_EQ(g.vertex_count(), 5u);
  EXPECT_EQ(g.positive_edge_count(), 0u);
}

TEST(LoadGraph, ReversedDuplicateCollapses) {
  const SignedGraph g = load_graph("0 1\n1 0", 2);
  EXPECT_EQ(edge_set(g), (std::vector<Edge>{{0, 1}}));
}

TEST(LoadGraph, SkipsCommentsAndBlankLines) {
  const SignedGraph g = load_graph("# header\n\n0 1\n  # indented\n2 1\n", 3);
  EXPECT_EQ(g.positive_edge_count(), 2u);
}

TEST(LoadGraph, ErrorsNameTheLine) {
  auto line_of = [](const std::string& text, std::size_t n) -> std::size_t {
    try {
      load_graph(text, n);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("0 1\n1 5\n", 3), 2u);    // out of range
  EXPECT_EQ(line_of("0 1\n\n2 2\n", 3), 3u);  // self-loop
  EXPECT_EQ(line_of("0 x\n", 3), 1u);         // malformed id
  EXPECT_EQ(line_of("0 1 2\n", 3), 1u);       // too many fields
  EXPECT_EQ(line_of("0\n", 3), 1u);           // too few fields
  EXPECT_EQ(line_of("-1 2\n", 3), 1u);        // negative id
}

TEST(SignedGraph, AdjacencyIsSortedAndSymmetric) {
  const SignedGraph g = gen::gnp(40, 0.2, 11);
  std::size_t total = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto nb = g.neighbors(v);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    for (Vertex w : nb) {
      EXPECT_NE(v, w);
      EXPECT_TRUE(g.has_edge(w, v));
    }
    total += nb.size();
  }
  EXPECT_EQ(total, 2 * g.positive_edge_count());
}

TEST(SignedGraph, FromEdgesRejectsSelfLoopsAndRange) {
  EXPECT_THROW(SignedGraph::from_edges(3, {{1, 1}}), InvariantViolation);
  EXPECT_THROW(SignedGraph::from_edges(3, {{0, 3}}), InvariantViolation);
}

TEST(SignedGraph, InducedRelabels) {
  const SignedGraph p = gen::path(5);
  const std::vector<Vertex> keep{1, 2, 4};
  const SignedGraph sub = p.induced(keep);
  EXPECT_EQ(sub.vertex_count(), 3u);
  EXPECT_EQ(edge_set(sub), (std::vector<Edge>{{0, 1}}));
}

TEST(Cost, AllPositiveTriangleInOneCluster) {
  EXPECT_EQ(cost(gen::clique(3), Clustering::one_cluster(3)), 0u);
}

TEST(Cost, BadTriangleInOneCluster) {
  const SignedGraph g = load_graph("0 1\n1 2\n", 3);
  EXPECT_EQ(cost(g, Clustering::one_cluster(3)), 1u);
}

TEST(Cost, PathWithMiddlePair) {
  const SignedGraph g = gen::path(4);
  const auto c = Clustering::from_clusters(4, {{1, 2}, {0}, {3}});
  EXPECT_EQ(cost(g, c), 2u);
}

TEST(Cost, RejectsSizeMismatch) {
  EXPECT_THROW(cost(gen::path(4), Clustering::singletons(3)), InvariantViolation);
}

TEST(Clustering, FromClustersValidatesPartition) {
  EXPECT_THROW(Clustering::from_clusters(3, {{0, 1}, {1, 2}}), InvariantViolation);
  EXPECT_THROW(Clustering::from_clusters(3, {{0, 1}}), InvariantViolation);
  EXPECT_THROW(Clustering::from_clusters(2, {{0, 2}}), InvariantViolation);
}

TEST(Clustering, CanonicalFormIgnoresLabels) {
  const Clustering a(std::vector<ClusterId>{7, 7, 3, 9});
  const Clustering b(std::vector<ClusterId>{0, 0, 1, 2});
  EXPECT_TRUE(a.same_partition(b));
  EXPECT_EQ(a.clusters(), (std::vector<std::vector<Vertex>>{{0, 1}, {2}, {3}}));
  EXPECT_EQ(a.max_cluster_size(), 2u);
}

TEST(DegreeProfile, Star) {
  const auto p = degree_profile(gen::star(4));
  EXPECT_EQ(p.degrees, (std::vector<std::size_t>{4, 1, 1, 1, 1}));
  EXPECT_EQ(p.max_degree, 4u);
}

TEST(DegreeProfile, EmptyAndPath) {
  const auto e = degree_profile(SignedGraph(3));
  EXPECT_EQ(e.degrees, (std::vector<std::size_t>{0, 0, 0}));
  EXPECT_EQ(e.max_degree, 0u);
  const auto p = degree_profile(gen::path(4));
  EXPECT_EQ(p.degrees, (std::vector<std::size_t>{1, 2, 2, 1}));
  EXPECT_EQ(p.max_degree, 2u);
}

TEST(Arboricity, TreeHasDegeneracyOne) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    // Attach probability 1 gives a spanning tree.
    const auto est = estimate_arboricity(gen::forest(30, seed, 1.0));
    EXPECT_EQ(est.degeneracy, 1u);
    EXPECT_EQ(est.lower, 1u);
    EXPECT_EQ(est.upper, 1u);
    EXPECT_EQ(est.lambda(), 1u);
  }
}

TEST(Arboricity, K4BoundsContainExactValue) {
  const SignedGraph k4 = gen::clique(4);
  const auto est = estimate_arboricity(k4);
  EXPECT_EQ(est.degeneracy, 3u);
  EXPECT_EQ(est.lower, 2u);
  EXPECT_EQ(est.upper, 3u);
  EXPECT_EQ(oracle::exact_arboricity(k4), 2u);
}

TEST(Arboricity, EmptyGraph) {
  const auto est = estimate_arboricity(SignedGraph(4));
  EXPECT_EQ(est.degeneracy, 0u);
  EXPECT_EQ(est.lower, 0u);
  EXPECT_EQ(est.upper, 0u);
}

TEST(Arboricity, DeclaredValueOutsideIntervalWarns) {
  const auto est = estimate_arboricity(gen::clique(4), 5);
  ASSERT_TRUE(est.warning.has_value());
  EXPECT_EQ(est.lambda(), 5u);
  EXPECT_FALSE(estimate_arboricity(gen::clique(4), 2).warning.has_value());
}

TEST(Forest, Detection) {
  EXPECT_TRUE(is_forest(gen::forest(40, 3)));
  EXPECT_FALSE(is_forest(gen::clique(3)));
  EXPECT_TRUE(is_forest(SignedGraph(5)));
}

// Properties over random graphs.

class CostProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(CostProperties, RelabelSymmetryAndExtremes) {
  const std::uint64_t seed = GetParam();
  Rng rng(seed);
  const std::size_t n = 2 + uniform_below(rng, 30);
  const SignedGraph g = gen::gnp(n, 0.3, seed);
  std::vector<ClusterId> a(n);
  for (auto& x : a) x = static_cast<ClusterId>(uniform_below(rng, 5));
  std::vector<ClusterId> perm{4, 2, 0, 3, 1};
  std::vector<ClusterId> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = perm[a[i]] + 100;
  EXPECT_EQ(cost(g, Clustering(a)), cost(g, Clustering(b)));
  EXPECT_EQ(cost(g, Clustering::singletons(n)), g.positive_edge_count());
  EXPECT_EQ(cost(g, Clustering::one_cluster(n)), n * (n - 1) / 2 - g.positive_edge_count());
}

TEST_P(CostProperties, BadTrianglePackingBoundsEveryClustering) {
  const std::uint64_t seed = GetParam();
  Rng rng(seed);
  const std::size_t n = 3 + uniform_below(rng, 7);
  const SignedGraph g = gen::gnp(n, 0.5, seed ^ 77);
  const std::size_t packed = greedy_bad_triangle_packing(g);
  EXPECT_LE(packed, oracle::brute_force_opt(g, 1).opt_cost);
  for (int k = 0; k < 20; ++k) {
    std::vector<ClusterId> a(n);
    for (auto& x : a) x = static_cast<ClusterId>(uniform_below(rng, 4));
    EXPECT_LE(packed, cost(g, Clustering(a)));
  }
}

TEST_P(CostProperties, SubgraphDegeneracyIsMonotone) {
  const std::uint64_t seed = GetParam();
  Rng rng(seed);
  const SignedGraph g = gen::gnp(40, 0.15, seed);
  const std::size_t d = degeneracy(g);
  for (int k = 0; k < 10; ++k) {
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (uniform_unit(rng) < 0.6) keep.push_back(v);
    }
    EXPECT_LE(degeneracy(g.induced(keep)), d);
  }
}

TEST_P(CostProperties, DegeneracyIntervalContainsExactArboricity) {
  const std::uint64_t seed = GetParam();
  Rng rng(seed);
  const std::size_t n = 2 + uniform_below(rng, 9);
  const SignedGraph g = gen::gnp(n, 0.2 + 0.6 * uniform_unit(rng), seed ^ 5);
  const auto est = estimate_arboricity(g);
  const std::size_t lambda = oracle::exact_arboricity(g);
  EXPECT_LE(est.lower, lambda);
  EXPECT_LE(lambda, est.upper);
  if (lambda > 0) {
    EXPECT_LE(est.degeneracy, 2 * lambda - 1);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CostProperties, ::testing::Range<std::uint64_t>(1, 41));

}  // namespace
}  // namespace arbocc

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

#include <algorithm>
#include <map>

#include <gtest/gtest.h>

#include "arbocc/cluster_algs.hpp"
#include "arbocc/generators.hpp"
#include "arbocc/oracle.hpp"

namespace arbocc {
namespace {

using mpc::MpcConfig;
using mpc::Model;

mpc::MpcRuntime make_runtime(const SignedGraph& g, Model model = Model::sublinear,
                             std::size_t n_config = 0) {
  MpcConfig cfg;
  cfg.model = model;
  cfg.n = std::max(n_config, g.vertex_count());
  return mpc::init_runtime(cfg, g);
}

TEST(PivotSequential, StarCenterFirst) {
  const SignedGraph g = gen::star(3);
  const Clustering c = pivot_sequential(g, VertexOrdering({0, 1, 2, 3}));
  EXPECT_EQ(c.clusters().size(), 1u);
  EXPECT_EQ(cost(g, c), 3u);
}

TEST(PivotSequential, StarLeafFirst) {
  const SignedGraph g = gen::star(3);
  const Clustering c = pivot_sequential(g, VertexOrdering({1, 0, 2, 3}));
  EXPECT_TRUE(c.same_partition(Clustering::from_clusters(4, {{0, 1}, {2}, {3}})));
  EXPECT_EQ(cost(g, c), 2u);
}

TEST(PivotSequential, EmptyGraphAllSingletons) {
  const SignedGraph g(5);
  const Clustering c = pivot_sequential(g, VertexOrdering::random(5, 3));
  EXPECT_EQ(c.clusters().size(), 5u);
  EXPECT_EQ(cost(g, c), 0u);
}

TEST(PivotSequential, EqualsPivotFromGreedyMis) {
  for (std::uint64_t s = 1; s <= 40; ++s) {
    const SignedGraph g = gen::gnp(80, 0.06, s);
    const auto pi = VertexOrdering::random(80, s + 1000);
    const auto mis = oracle::sequential_greedy_mis(g, pi);
    EXPECT_TRUE(pivot_sequential(g, pi).same_partition(pivot_from_mis(g, pi, mis)));
  }
}

TEST(PivotFromMis, RejectsNonDominatingSet) {
  const SignedGraph g = gen::path(3);
  const std::vector<Vertex> bad{0};
  EXPECT_THROW(pivot_from_mis(g, VertexOrdering::identity(3), bad), InvariantViolation);
}

TEST(PivotExpectation, MatchesExactEnumeration) {
  const SignedGraph bad_triangle = load_graph("0 1\n1 2\n", 3);
  for (const SignedGraph& g : {gen::star(3), bad_triangle, gen::clique(4), gen::path(5)}) {
    const auto e = pivot_expectation_check(g, 20000, 17);
    EXPECT_NEAR(e.mean_cost, oracle::exact_pivot_expectation(g), 0.06);
    EXPECT_LE(e.min_cost, e.max_cost);
  }
  EXPECT_NEAR(pivot_expectation_check(gen::star(3), 10000, 5).mean_cost, 2.25, 0.1);
  EXPECT_DOUBLE_EQ(pivot_expectation_check(gen::clique(6), 50, 1).mean_cost, 0.0);
}

TEST(PivotExpectation, ExactExpectationWithinThreeTimesOpt) {
  for (std::uint64_t s = 1; s <= 40; ++s) {
    const SignedGraph g = gen::gnp(8, 0.4, s);
    const double opt = static_cast<double>(oracle::brute_force_opt(g, 1).opt_cost);
    EXPECT_LE(oracle::exact_pivot_expectation(g), 3.0 * opt + 1e-9);
  }
}

TEST(Truncation, ThresholdAndSplit) {
  EXPECT_DOUBLE_EQ(truncation_threshold(1, 2.0), 12.0);
  EXPECT_DOUBLE_EQ(truncation_threshold(3, 1.0), 48.0);
  const SignedGraph g = gen::star(13);
  const auto s = truncate(g, 1, 2.0);
  EXPECT_EQ(s.high, std::vector<Vertex>{0});
  EXPECT_EQ(s.marked_edges, 13u);
  EXPECT_EQ(s.g_prime.vertex_count(), 14u);
  EXPECT_EQ(s.g_prime.positive_edge_count(), 0u);
  // Degree exactly at the threshold stays.
  EXPECT_TRUE(truncate(gen::star(12), 1, 2.0).high.empty());
}

TEST(Truncation, StrictlyBelowThresholdIsNoOp) {
  const SignedGraph g = gen::gnp(60, 0.1, 4);
  const auto r = truncate_and_run(g, 10, 1.0, [](const SignedGraph& gp) {
    return pivot_sequential(gp, VertexOrdering::identity(gp.vertex_count()));
  });
  EXPECT_TRUE(r.split.high.empty());
  EXPECT_TRUE(r.clustering.same_partition(pivot_sequential(g, VertexOrdering::identity(60))));
}

TEST(Truncation, HighStarCenterBecomesSingleton) {
  const SignedGraph g = gen::star(13);
  const auto r = truncate_and_run(g, 1, 2.0, [](const SignedGraph& gp) {
    return Clustering::one_cluster(gp.vertex_count());
  });
  // The inner clustering merges everything; the center is split off anyway.
  EXPECT_NE(r.clustering.assignment()[0], r.clustering.assignment()[1]);
  const auto singles = truncate_and_run(g, 1, 2.0, [](const SignedGraph& gp) {
    return Clustering::singletons(gp.vertex_count());
  });
  EXPECT_EQ(cost(g, singles.clustering), 13u);
}

TEST(Truncation, Preconditions) {
  EXPECT_THROW(truncate(gen::path(3), 1, 0.0), PreconditionError);
  EXPECT_THROW(truncate(gen::path(3), 0, 1.0), PreconditionError);
}

TEST(Truncation, MarkedEdgesBoundedByHighDegreeSum) {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const SignedGraph g = gen::arboric(200, 2, s);
    for (double eps : {0.5, 1.0, 2.0}) {
      const auto split = truncate(g, 1, eps);
      EXPECT_LE(split.marked_edges, split.high_degree_sum);
      for (Vertex v = 0; v < 200; ++v) {
        if (!split.is_high[v]) {
          EXPECT_LE(static_cast<double>(split.g_prime.degree(v)), split.threshold);
        }
      }
    }
  }
}

TEST(Truncation, BruteForceInnerStaysWithinOnePlusEps) {
  for (std::uint64_t s = 1; s <= 60; ++s) {
    Rng rng(s);
    const std::size_t n = 4 + uniform_below(rng, 6);
    const SignedGraph g = gen::gnp(n, 0.5, s * 3);
    const std::size_t lambda = std::max<std::size_t>(1, degeneracy(g));
    const double opt = static_cast<double>(oracle::brute_force_opt(g, lambda).opt_cost);
    for (double eps : {0.5, 1.0, 2.0}) {
      const auto r = truncate_and_run(g, lambda, eps, [&](const SignedGraph& gp) {
        return oracle::brute_force_opt(gp, lambda).witness;
      });
      EXPECT_LE(static_cast<double>(cost(g, r.clustering)), (1.0 + eps) * opt + 1e-9);
    }
  }
}

TEST(Truncation, ShrinkingLambdaForcesHighVertices) {
  // A star whose center has degree 40 against lambda 1, eps 0.5
  // (threshold 24): the center must be a singleton.
  const SignedGraph g = gen::star(40);
  const auto r = truncate_and_run(g, 1, 0.5, [](const SignedGraph& gp) {
    return Clustering::one_cluster(gp.vertex_count());
  });
  const auto clusters = r.clustering.clusters();
  const auto it = std::find_if(clusters.begin(), clusters.end(), [](const auto& c) {
    return std::find(c.begin(), c.end(), Vertex{0}) != c.end();
  });
  ASSERT_NE(it, clusters.end());
  EXPECT_EQ(it->size(), 1u);
}

TEST(PivotMpc, ForestMatchesSequentialPipeline) {
  const SignedGraph g = gen::forest(500, 21);
  const auto pi = VertexOrdering::random(500, 22);
  mpc::MpcRuntime rt = make_runtime(g);
  const auto res = pivot_mpc(rt, g, 1, pi);
  EXPECT_TRUE(res.clustering.same_partition(pivot_truncated_sequential(g, 1, pi)));
  EXPECT_LE(res.peak_memory, rt.memory_words());
  EXPECT_GT(res.rounds, 0u);
}

TEST(PivotMpc, EmptyGraph) {
  const SignedGraph g(20);
  mpc::MpcRuntime rt = make_runtime(g);
  const auto res = pivot_mpc(rt, g, 1, VertexOrdering::random(20, 1));
  EXPECT_EQ(res.clustering.clusters().size(), 20u);
  EXPECT_EQ(cost(g, res.clustering), 0u);
}

TEST(PivotMpc, HighDegreeVerticesAreSingletons) {
  const SignedGraph g = gen::star(30);  // threshold 12 at lambda 1
  mpc::MpcRuntime rt = make_runtime(g, Model::sublinear, 4096);
  const auto pi = VertexOrdering::random(31, 4);
  const auto res = pivot_mpc(rt, g, 1, pi);
  EXPECT_EQ(res.split.high, std::vector<Vertex>{0});
  EXPECT_EQ(res.clustering.clusters().size(), 31u);
  EXPECT_TRUE(res.clustering.same_partition(pivot_truncated_sequential(g, 1, pi)));
}

TEST(PivotMpc, BothSubroutinesAgree) {
  for (std::uint64_t s = 1; s <= 8; ++s) {
    const SignedGraph g = gen::arboric(300, 2, s);
    const auto pi = VertexOrdering::random(300, s * 5);
    mpc::MpcRuntime a = make_runtime(g, Model::sublinear);
    mpc::MpcRuntime b = make_runtime(g, Model::sublinear_extra);
    const auto want = pivot_truncated_sequential(g, 2, pi);
    EXPECT_TRUE(pivot_mpc(a, g, 2, pi, mis::Subroutine::alg2).clustering.same_partition(want));
    EXPECT_TRUE(pivot_mpc(b, g, 2, pi, mis::Subroutine::alg3).clustering.same_partition(want));
  }
}

TEST(PivotMpc, MeanCostWithinThreeTimesOpt) {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const SignedGraph g = gen::arboric(9, 1, s);
    const double opt = static_cast<double>(oracle::brute_force_opt(g, 1).opt_cost);
    double total = 0.0;
    constexpr int kTrials = 300;
    for (int t = 0; t < kTrials; ++t) {
      mpc::MpcRuntime rt = make_runtime(g, Model::sublinear, 1024);
      const auto pi = VertexOrdering::random(9, derive_seed(s, t));
      total += static_cast<double>(cost(g, pivot_mpc(rt, g, 1, pi).clustering));
    }
    EXPECT_LE(total / kTrials, 3.0 * opt * 1.05 + 1e-9);
  }
}

TEST(CliqueSingleton, SmallCliqueIsOneCluster) {
  const SignedGraph g = gen::clique(4);
  mpc::MpcRuntime rt = make_runtime(g, Model::sublinear, 1024);
  const auto r = clique_singleton(rt, g, 2);
  EXPECT_EQ(r.clustering.clusters().size(), 1u);
  EXPECT_EQ(cost(g, r.clustering), 0u);
  EXPECT_EQ(r.rounds, 4u);
}

TEST(CliqueSingleton, CliqueAboveTwiceLambdaIsShattered) {
  const SignedGraph g = gen::clique(5);
  mpc::MpcRuntime rt = make_runtime(g, Model::sublinear, 1024);
  const auto r = clique_singleton(rt, g, 2);
  EXPECT_EQ(r.clustering.clusters().size(), 5u);
}

TEST(CliqueSingleton, PathIsAllSingletons) {
  const SignedGraph g = gen::path(4);
  mpc::MpcRuntime rt = make_runtime(g, Model::sublinear, 1024);
  const auto r = clique_singleton(rt, g, 1);
  EXPECT_EQ(r.clustering.clusters().size(), 4u);
  EXPECT_EQ(cost(g, r.clustering), 3u);
  EXPECT_EQ(oracle::brute_force_opt(g, 1).opt_cost, 1u);
}

TEST(CliqueSingleton, BarbellIsAllSingletons) {
  for (std::size_t k = 2; k <= 6; ++k) {
    const SignedGraph g = gen::barbell(k);
    mpc::MpcRuntime rt = make_runtime(g, Model::sublinear, 4096);
    const auto r = clique_singleton(rt, g, k);
    EXPECT_EQ(r.clustering.clusters().size(), 2 * k);
    EXPECT_EQ(cost(g, r.clustering), k * (k - 1) + 1);
  }
}

TEST(CliqueSingleton, MatchesDirectComponentCheck) {
  // Reference: a component becomes one cluster iff it is a clique with at
  // most 2 lambda vertices.
  for (std::uint64_t s = 1; s <= 30; ++s) {
    std::vector<Edge> edges;
    Rng rng(s);
    Vertex next = 0;
    std::vector<std::vector<Vertex>> parts;
    while (next < 60) {
      const std::size_t size = 1 + uniform_below(rng, 6);
      std::vector<Vertex> part;
      for (std::size_t i = 0; i < size && next < 60; ++i) part.push_back(next++);
      const bool full = uniform_below(rng, 2) == 0;
      for (std::size_t i = 0; i < part.size(); ++i) {
        for (std::size_t j = i + 1; j < part.size(); ++j) {
          if (full || j == i + 1) edges.emplace_back(part[i], part[j]);
        }
      }
      parts.push_back(part);
    }
    const SignedGraph g = SignedGraph::from_edges(60, edges);
    const std::size_t lambda = 1 + uniform_below(rng, 3);
    mpc::MpcRuntime rt = make_runtime(g, Model::sublinear, 4096);
    const auto got = clique_singleton(rt, g, lambda).clustering;
    std::vector<std::vector<Vertex>> want;
    for (const auto& part : parts) {
      std::size_t inside = 0;
      for (std::size_t i = 0; i < part.size(); ++i) inside += g.degree(part[i]);
      const bool clique = inside == part.size() * (part.size() - 1);
      if (clique && part.size() <= 2 * lambda) {
        want.push_back(part);
      } else {
        for (Vertex v : part) want.push_back({v});
      }
    }
    EXPECT_TRUE(got.same_partition(Clustering::from_clusters(60, want)));
  }
}

TEST(BestOf, KeepsCheapestAndEarliest) {
  const SignedGraph g = gen::star(3);
  const auto best = best_of(g, 8, 3, [&](std::uint64_t s) {
    return pivot_sequential(g, VertexOrdering::random(4, s));
  });
  EXPECT_EQ(best.cost, cost(g, best.clustering));
  for (std::size_t k = 0; k < 8; ++k) {
    const auto c = cost(g, pivot_sequential(g, VertexOrdering::random(4, derive_seed(3, k))));
    EXPECT_LE(best.cost, c);
    if (k < best.index) {
      EXPECT_GT(c, best.cost);
    }
  }
  EXPECT_THROW(best_of(g, 0, 1, [](std::uint64_t) { return Clustering(); }),
               PreconditionError);
}

}  // namespace
}  // namespace arbocc

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

// Property suites behind `arbocc validate`. Every case draws its instance
// from derive_seed(master seed, case index), so failing cases can be
// replayed individually.

#ifndef ARBOCC_VALIDATE_HPP_
#define ARBOCC_VALIDATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "arbocc/cluster_algs.hpp"
#include "arbocc/generators.hpp"
#include "arbocc/graph.hpp"
#include "arbocc/greedy_mis.hpp"
#include "arbocc/matching.hpp"
#include "arbocc/mpc.hpp"
#include "arbocc/oracle.hpp"
#include "arbocc/parallel.hpp"
#include "arbocc/report.hpp"

namespace arbocc::validate {

// Ratio constant for clique-singleton: cost <= kCliqueSingletonConstant *
// lambda^2 * opt. Clusters of an optimum have at most 4*lambda-2 vertices,
// which gives about lambda * (4*lambda - 2) <= 4 * lambda^2.
inline constexpr double kCliqueSingletonConstant = 4.0;

// Longest realised greedy dependency path <= kDependencyPathConstant * ln n.
inline constexpr double kDependencyPathConstant = 2.0;

struct PropertyResult {
  std::string suite;
  std::string property;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::vector<std::uint64_t> failing_seeds;
  json detail = json::object();

  bool ok() const noexcept { return passed == cases; }
  bool vacuous() const noexcept { return cases == 0; }
};

struct SuiteOptions {
  std::size_t cases = 100;
  std::uint64_t seed = 1;
  std::size_t n = 0;  // 0 picks the suite default
  std::size_t trials = 200;
  std::size_t workers = 0;
};

inline json to_json(const PropertyResult& r) {
  json j{{"suite", r.suite},
         {"property", r.property},
         {"cases", r.cases},
         {"passed", r.passed},
         {"pass", r.ok()},
         {"failing_seeds", r.failing_seeds}};
  if (r.vacuous()) j["warning"] = "no cases: vacuous pass";
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

namespace detail {

// Per-case verdicts collected into one PropertyResult.
class Tally {
 public:
  Tally(std::string suite, std::string property, std::size_t cases)
      : result_{std::move(suite), std::move(property), cases, 0, {}, json::object()},
        ok_(cases, 0), seeds_(cases, 0) {}
  void record(std::size_t i, std::uint64_t seed, bool ok) {
    ok_[i] = ok ? 1 : 0;
    seeds_[i] = seed;
  }
  PropertyResult finish() {
    for (std::size_t i = 0; i < ok_.size(); ++i) {
      if (ok_[i]) {
        ++result_.passed;
      } else {
        result_.failing_seeds.push_back(seeds_[i]);
      }
    }
    return std::move(result_);
  }
  json& detail() { return result_.detail; }

 private:
  PropertyResult result_;
  std::vector<char> ok_;
  std::vector<std::uint64_t> seeds_;
};

// Random graph on 2..max_n vertices with a random edge density.
inline SignedGraph small_random_graph(std::uint64_t seed, std::size_t max_n) {
  Rng rng(seed);
  const std::size_t n = 2 + uniform_below(rng, max_n - 1);
  const double p = 0.15 + 0.55 * uniform_unit(rng);
  return gen::gnp(n, p, rng());
}

inline SignedGraph small_random_forest(std::uint64_t seed, std::size_t max_n) {
  Rng rng(seed);
  const std::size_t n = 2 + uniform_below(rng, max_n - 1);
  return gen::forest(n, rng(), 0.5 + 0.5 * uniform_unit(rng));
}

inline SignedGraph small_arboric_graph(std::uint64_t seed, std::size_t max_n,
                                       std::size_t max_lambda) {
  Rng rng(seed);
  const std::size_t n = 2 + uniform_below(rng, max_n - 1);
  const std::size_t lambda = 1 + uniform_below(rng, max_lambda);
  return gen::arboric(n, lambda, rng());
}

inline std::uint64_t forest_opt(const SignedGraph& g) {
  return g.positive_edge_count() - oracle::brute_force_max_matching(g).size();
}

}  // namespace detail

inline std::vector<PropertyResult> structural_suite(const SuiteOptions& o) {
  const std::size_t max_n = o.n ? o.n : 9;
  detail::Tally bounded("structural", "bounded_optimum_exists", o.cases);
  detail::Tally interval("structural", "arboricity_within_degeneracy_interval", o.cases);
  detail::Tally packing("structural", "bad_triangle_packing_below_opt", o.cases);
  parallel_for(o.cases, [&](std::size_t i) {
    const std::uint64_t s = derive_seed(o.seed, i);
    const SignedGraph g = detail::small_random_graph(s, max_n);
    const std::size_t lambda = oracle::exact_arboricity(g);
    const auto opt = oracle::brute_force_opt(g, lambda);
    bounded.record(i, s, opt.bounded_witness.has_value());
    const auto est = estimate_arboricity(g);
    interval.record(i, s, est.lower <= lambda && lambda <= est.upper);
    packing.record(i, s, greedy_bad_triangle_packing(g) <= opt.opt_cost);
  }, o.workers);
  return {bounded.finish(), interval.finish(), packing.finish()};
}

inline std::vector<PropertyResult> mis_equiv_suite(const SuiteOptions& o) {
  const std::size_t n = o.n ? o.n : 256;
  detail::Tally alg2("mis-equiv", "alg2_equals_sequential", o.cases);
  detail::Tally alg3("mis-equiv", "alg3_equals_sequential", o.cases);
  detail::Tally valid("mis-equiv", "sequential_is_maximal_independent", o.cases);
  detail::Tally pivot("mis-equiv", "pivot_equals_mis_assignment", o.cases);
  parallel_for(o.cases, [&](std::size_t i) {
    const std::uint64_t s = derive_seed(o.seed, i);
    const SignedGraph g = gen::bounded_degree(n, 8.0, std::min<std::size_t>(32, n - 1), s);
    const auto pi = VertexOrdering::random(n, derive_seed(s, 1));
    const auto expected = oracle::sequential_greedy_mis(g, pi);
    mpc::MpcConfig cfg;
    cfg.hash_seed = derive_seed(s, 2);
    cfg.model = mpc::Model::sublinear;
    alg2.record(i, s, mis::greedy_mis_mpc(g, pi, cfg, mis::Subroutine::alg2).state.mis() == expected);
    cfg.model = mpc::Model::sublinear_extra;
    alg3.record(i, s, mis::greedy_mis_mpc(g, pi, cfg, mis::Subroutine::alg3).state.mis() == expected);
    valid.record(i, s, mis::is_maximal_independent(g, expected));
    pivot.record(i, s, pivot_sequential(g, pi).same_partition(pivot_from_mis(g, pi, expected)));
  }, o.workers);
  return {alg2.finish(), alg3.finish(), valid.finish(), pivot.finish()};
}

inline std::vector<PropertyResult> ratios_suite(const SuiteOptions& o) {
  const std::size_t max_n = o.n ? o.n : 10;
  detail::Tally pivot("ratios", "pivot_mean_within_3_opt", o.cases);
  detail::Tally trunc("ratios", "truncation_within_max_1_plus_eps", o.cases);
  detail::Tally forest("ratios", "forest_matching_is_optimal", o.cases);
  detail::Tally maximal("ratios", "maximal_matching_within_2_opt", o.cases);
  detail::Tally approx("ratios", "approx_matching_within_1_5_opt", o.cases);
  detail::Tally clique("ratios", "clique_singleton_within_c_lambda_sq_opt", o.cases);
  std::vector<double> clique_ratio(o.cases, 0.0);
  parallel_for(o.cases, [&](std::size_t i) {
    const std::uint64_t s = derive_seed(o.seed, i);
    {
      const SignedGraph g = detail::small_random_graph(s, max_n);
      const std::size_t lambda = std::max<std::size_t>(1, oracle::exact_arboricity(g));
      const auto opt = oracle::brute_force_opt(g, lambda).opt_cost;
      const auto mean = pivot_expectation_check(g, o.trials, derive_seed(s, 1)).mean_cost;
      pivot.record(i, s, mean <= 3.0 * static_cast<double>(opt) * 1.05);
      bool ok = true;
      for (double eps : {0.5, 1.0, 2.0}) {
        const auto r = truncate_and_run(g, lambda, eps, [&](const SignedGraph& gp) {
          return oracle::brute_force_opt(gp, lambda).witness;
        });
        ok = ok && static_cast<double>(cost(g, r.clustering)) <=
                       std::max(1.0 + eps, 1.0) * static_cast<double>(opt) + 1e-9;
      }
      trunc.record(i, s, ok);
    }
    {
      const SignedGraph f = detail::small_random_forest(derive_seed(s, 2), 12);
      const auto opt = oracle::brute_force_opt(f, 1).opt_cost;
      const auto m = tree_max_matching(f);
      forest.record(i, s, cost(f, matching_to_clustering(f, m)) == opt &&
                              opt == f.positive_edge_count() - m.size());
      const auto pi = VertexOrdering::random(f.vertex_count(), derive_seed(s, 3));
      maximal.record(i, s, cost(f, matching_to_clustering(f, maximal_matching_greedy(f, pi))) <=
                               2 * opt);
    }
    {
      const SignedGraph f = detail::small_random_forest(derive_seed(s, 4), 24);
      const auto opt = detail::forest_opt(f);
      const auto c = cost(f, matching_to_clustering(f, approx_matching_eps(f, 0.5)));
      approx.record(i, s, 2 * c <= 3 * opt);
    }
    {
      const SignedGraph g = detail::small_arboric_graph(derive_seed(s, 5), max_n, 3);
      const std::size_t lambda = std::max<std::size_t>(1, oracle::exact_arboricity(g));
      const auto opt = oracle::brute_force_opt(g, lambda).opt_cost;
      mpc::MpcConfig cfg;
      auto rt = mpc::init_runtime(cfg, g);
      const auto c = cost(g, clique_singleton(rt, g, lambda).clustering);
      const double bound =
          kCliqueSingletonConstant * static_cast<double>(lambda * lambda) * static_cast<double>(opt);
      clique.record(i, s, static_cast<double>(c) <= bound);
      clique_ratio[i] = opt == 0 ? 0.0
                                 : static_cast<double>(c) /
                                       (static_cast<double>(opt) * static_cast<double>(lambda * lambda));
    }
  }, o.workers);
  auto clique_result = clique.finish();
  clique_result.detail["max_ratio_over_lambda_sq"] =
      clique_ratio.empty() ? 0.0 : *std::max_element(clique_ratio.begin(), clique_ratio.end());
  return {pivot.finish(), trunc.finish(), forest.finish(), maximal.finish(), approx.finish(),
          std::move(clique_result)};
}

// Rounds of the prefix loop with the exponentiation subroutine at fixed
// max degree 16 for n = 2^8 .. 2^max_exp (mean over `cases` seeds).
inline std::vector<PropertyResult> rounds_suite(const SuiteOptions& o) {
  const std::size_t max_exp = o.n ? static_cast<std::size_t>(std::log2(o.n)) : 12;
  PropertyResult growth{"rounds", "alg3_rounds_growth_at_most_1_5x", 0, 0, {}, json::object()};
  PropertyResult memory{"rounds", "peak_memory_within_S", 0, 0, {}, json::object()};
  json per_n = json::array();
  std::vector<double> means;
  for (std::size_t e = 8; e <= max_exp; ++e) {
    const std::size_t n = std::size_t{1} << e;
    std::vector<std::size_t> rounds(o.cases, 0);
    std::vector<char> mem_ok(o.cases, 0);
    parallel_for(o.cases, [&](std::size_t i) {
      const std::uint64_t s = derive_seed(o.seed, e * 1000 + i);
      const SignedGraph g = gen::bounded_degree(n, 8.0, 16, s);
      const auto pi = VertexOrdering::random(n, derive_seed(s, 1));
      mpc::MpcConfig cfg;
      cfg.model = mpc::Model::sublinear_extra;
      const auto r = mis::greedy_mis_mpc(g, pi, cfg, mis::Subroutine::alg3);
      rounds[i] = r.report.rounds;
      mem_ok[i] = r.report.peak_memory <= r.report.memory_words ? 1 : 0;
    }, o.workers);
    double mean = 0.0;
    for (std::size_t r : rounds) mean += static_cast<double>(r);
    mean = o.cases ? mean / static_cast<double>(o.cases) : 0.0;
    means.push_back(mean);
    per_n.push_back(json{{"n", n}, {"mean_rounds", mean}});
    for (std::size_t i = 0; i < o.cases; ++i) {
      ++memory.cases;
      if (mem_ok[i]) {
        ++memory.passed;
      } else {
        memory.failing_seeds.push_back(derive_seed(o.seed, e * 1000 + i));
      }
    }
  }
  if (o.cases > 0 && means.size() >= 2) {
    growth.cases = 1;
    growth.passed = means.back() <= 1.5 * means.front() ? 1 : 0;
  }
  growth.detail["per_n"] = per_n;
  return {std::move(growth), std::move(memory)};
}

inline std::vector<PropertyResult> stats_suite(const SuiteOptions& o) {
  const std::size_t n = o.n ? o.n : 2000;
  detail::Tally residual("stats", "residual_degree_below_10_n_ln_n_over_t", o.cases);
  detail::Tally component("stats", "chunk_component_below_100_ln_n", o.cases);
  std::vector<std::size_t> paths(o.cases, 0);
  parallel_for(o.cases, [&](std::size_t i) {
    const std::uint64_t s = derive_seed(o.seed, i);
    const SignedGraph g = gen::gnp(n, 20.0 / static_cast<double>(n - 1), s);
    const std::size_t t = n / 2;
    const auto pi = VertexOrdering::random(n, derive_seed(s, 1));
    const double bound = 10.0 * static_cast<double>(n) * std::log(static_cast<double>(n)) /
                         static_cast<double>(t);
    residual.record(i, s, static_cast<double>(mis::residual_after_prefix(g, pi, t)) <= bound);
    paths[i] = oracle::longest_dependency_path(g, pi);
    mpc::MpcConfig cfg;
    cfg.hash_seed = derive_seed(s, 2);
    const auto r = mis::greedy_mis_mpc(g, pi, cfg, mis::Subroutine::alg2);
    component.record(i, s, static_cast<double>(r.report.max_chunk_component) <=
                               100.0 * std::log(static_cast<double>(n)));
  }, o.workers);
  auto res = residual.finish();
  auto comp = component.finish();
  res.detail["n"] = n;
  comp.detail["max_dependency_path"] =
      paths.empty() ? 0 : *std::max_element(paths.begin(), paths.end());
  comp.detail["ln_n"] = std::log(static_cast<double>(n));
  return {std::move(res), std::move(comp)};
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"structural", "mis-equiv", "ratios", "rounds",
                                              "stats"};
  return names;
}

inline std::vector<PropertyResult> run_suite(const std::string& name, const SuiteOptions& o) {
  if (name == "structural") return structural_suite(o);
  if (name == "mis-equiv") return mis_equiv_suite(o);
  if (name == "ratios") return ratios_suite(o);
  if (name == "rounds") return rounds_suite(o);
  if (name == "stats") return stats_suite(o);
  throw PreconditionError("unknown suite '" + name + "'");
}

}  // namespace arbocc::validate

#endif  // ARBOCC_VALIDATE_HPP_

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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "arbocc/arbocc.hpp"
#include "arbocc/validate.hpp"

namespace {

using namespace arbocc;
using mpc::Model;

struct Verdict {
  bool pass = true;
  std::string detail;
};

template <class... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

mpc::MpcConfig config(Model model, std::uint64_t hash_seed, double delta = 0.5) {
  mpc::MpcConfig cfg;
  cfg.model = model;
  cfg.delta = delta;
  cfg.hash_seed = hash_seed;
  return cfg;
}

// Shared suite of small graphs for the ratio criteria.
std::vector<SignedGraph> small_suite(std::size_t count, std::size_t max_n, std::uint64_t seed) {
  std::vector<SignedGraph> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(validate::detail::small_random_graph(derive_seed(seed, i), max_n));
  }
  return out;
}

// 1. Both MIS subroutines reproduce the sequential greedy MIS exactly.
Verdict mis_exactness() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t sizes[] = {64, 256, 1024};
  const std::size_t degree_caps[] = {4, 8, 16, 32};
  std::size_t alg2_ok = 0, alg3_ok = 0, runs = 0, violations = 0;
  std::vector<std::uint64_t> failing;
  for (std::size_t i = 0; i < 200; ++i) {
    const std::uint64_t s = derive_seed(101, i);
    const std::size_t n = sizes[i % 3];
    const std::size_t cap = std::min(degree_caps[(i / 3) % 4], n - 1);
    const SignedGraph g = gen::bounded_degree(n, 0.6 * static_cast<double>(cap), cap, s);
    const auto pi = VertexOrdering::random(n, derive_seed(s, 1));
    const auto want = oracle::sequential_greedy_mis(g, pi);
    // Small graphs with hub vertices need a larger memory exponent: every
    // vertex keeps about 4 * degree words.
    const double delta = n <= 64 ? 0.75 : 0.5;
    ++runs;
    try {
      const auto a = mis::greedy_mis_mpc(g, pi, config(Model::sublinear, derive_seed(s, 2), delta),
                                         mis::Subroutine::alg2);
      alg2_ok += a.state.mis() == want ? 1 : 0;
      const auto b = mis::greedy_mis_mpc(
          g, pi, config(Model::sublinear_extra, derive_seed(s, 3), delta), mis::Subroutine::alg3);
      alg3_ok += b.state.mis() == want ? 1 : 0;
      if (a.state.mis() != want || b.state.mis() != want) failing.push_back(s);
    } catch (const mpc::BudgetViolation& e) {
      ++violations;
      failing.push_back(s);
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Verdict v;
  v.pass = alg2_ok == runs && alg3_ok == runs && secs < 120.0;
  v.detail = format("alg2 %zu/%zu, alg3 %zu/%zu exact, %zu budget violations, %.1fs (< 120s)",
                    alg2_ok, runs, alg3_ok, runs, violations, secs);
  if (!failing.empty()) v.detail += format(", first failing seed %llu",
                                           static_cast<unsigned long long>(failing.front()));
  return v;
}

// 2. MPC PIVOT equals truncation followed by sequential PIVOT.
Verdict pipeline_exactness() {
  const std::size_t sizes[] = {256, 512, 1024, 2048};
  std::size_t ok = 0;
  std::vector<std::uint64_t> failing;
  for (std::size_t i = 0; i < 100; ++i) {
    const std::uint64_t s = derive_seed(202, i);
    const std::size_t n = sizes[i % 4];
    const std::size_t lambda = 1 + (i / 4) % 4;
    const SignedGraph g = gen::arboric(n, lambda, s);
    const auto pi = VertexOrdering::random(n, derive_seed(s, 1));
    const bool extra = i % 2 == 1;
    auto rt = mpc::init_runtime(config(extra ? Model::sublinear_extra : Model::sublinear,
                                       derive_seed(s, 2)),
                                g);
    const auto got = pivot_mpc(rt, g, lambda, pi,
                               extra ? mis::Subroutine::alg3 : mis::Subroutine::alg2);
    if (got.clustering.same_partition(pivot_truncated_sequential(g, lambda, pi))) {
      ++ok;
    } else {
      failing.push_back(s);
    }
  }
  return {ok == 100, format("%zu/100 identical partitions (lambda 1..4, n 256..2048)", ok)};
}

// 3. PIVOT mean cost within 3 * opt, and the star expectation.
Verdict pivot_three_approx() {
  const auto suite = small_suite(300, 10, 303);
  std::size_t ok = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const SignedGraph& g = suite[i];
    const double opt = static_cast<double>(oracle::brute_force_opt(g, 1).opt_cost);
    const double mean = pivot_expectation_check(g, 500, derive_seed(304, i)).mean_cost;
    if (mean <= 3.0 * opt * 1.05 + 1e-12) ++ok;
    if (opt > 0) worst = std::max(worst, mean / opt);
  }
  const double star = pivot_expectation_check(gen::star(3), 500, 305).mean_cost;
  const double exact = oracle::exact_pivot_expectation(gen::star(3));
  const bool star_ok = std::abs(star - 2.25) <= 0.1 && std::abs(exact - 2.25) < 1e-12;
  return {ok == suite.size() && star_ok,
          format("%zu/%zu within 3.15*opt (worst mean/opt %.3f); K_{1,3} empirical %.3f, "
                 "exact %.4f vs 2.25",
                 ok, suite.size(), worst, star, exact)};
}

// 4. Some optimum has all clusters of at most 4*lambda-2 vertices.
Verdict bounded_clusters() {
  std::size_t ok = 0, with_lambda_2_plus = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    const std::uint64_t s = derive_seed(404, i);
    const SignedGraph g = i % 2 == 0 ? validate::detail::small_random_graph(s, 9)
                                     : validate::detail::small_arboric_graph(s, 9, 3);
    const std::size_t lambda = oracle::exact_arboricity(g);
    with_lambda_2_plus += lambda >= 2 ? 1 : 0;
    const auto r = oracle::brute_force_opt(g, lambda);
    if (r.bounded_witness &&
        r.bounded_witness->max_cluster_size() <= oracle::cluster_size_bound(lambda) &&
        cost(g, *r.bounded_witness) == r.opt_cost) {
      ++ok;
    }
  }
  return {ok == 500, format("%zu/500 have a bounded optimum (%zu with lambda >= 2)", ok,
                            with_lambda_2_plus)};
}

// 5. Truncation with an exact inner solver stays within (1 + eps) * opt.
Verdict truncation_bound() {
  const auto suite = small_suite(300, 10, 303);
  std::size_t ok = 0, checks = 0;
  for (const SignedGraph& g : suite) {
    const std::size_t lambda = std::max<std::size_t>(1, oracle::exact_arboricity(g));
    const auto opt = static_cast<double>(oracle::brute_force_opt(g, lambda).opt_cost);
    for (double eps : {0.5, 1.0, 2.0}) {
      const auto r = truncate_and_run(g, lambda, eps, [&](const SignedGraph& gp) {
        return oracle::brute_force_opt(gp, lambda).witness;
      });
      ++checks;
      ok += static_cast<double>(cost(g, r.clustering)) <= std::max(1.0 + eps, 1.0) * opt ? 1 : 0;
    }
  }
  // On at most 10 vertices no degree exceeds the threshold 8(1+eps)/eps >= 12,
  // so the split is also exercised on forests with high-degree hubs, where
  // the matching clustering is an exact inner solver with a matching oracle.
  std::size_t forest_ok = 0, forest_checks = 0, high_total = 0;
  for (std::size_t i = 0; i < 60; ++i) {
    const std::uint64_t s = derive_seed(505, i);
    std::vector<Edge> edges = gen::forest(60, s, 0.7).edges();
    // Attach up to 3 hubs with many leaves, keeping the forest property.
    Vertex next = 60;
    Rng rng(s);
    const std::size_t hubs = 1 + uniform_below(rng, 3);
    for (std::size_t h = 0; h < hubs; ++h) {
      const Vertex hub = next++;
      const std::size_t leaves = 10 + uniform_below(rng, 30);
      edges.emplace_back(hub, static_cast<Vertex>(uniform_below(rng, 60)));
      for (std::size_t l = 0; l < leaves; ++l) edges.emplace_back(hub, next++);
    }
    const SignedGraph g = SignedGraph::from_edges(next, edges);
    const auto opt = static_cast<double>(g.positive_edge_count() - tree_max_matching(g).size());
    for (double eps : {0.5, 1.0, 2.0}) {
      const auto r = truncate_and_run(g, 1, eps, [](const SignedGraph& gp) {
        return matching_to_clustering(gp, tree_max_matching(gp));
      });
      high_total += r.split.high.size();
      ++forest_checks;
      forest_ok +=
          static_cast<double>(cost(g, r.clustering)) <= std::max(1.0 + eps, 1.0) * opt ? 1 : 0;
    }
  }
  return {ok == checks && forest_ok == forest_checks && high_total > 0,
          format("%zu/%zu small-suite checks, %zu/%zu hub-forest checks (%zu high vertices)",
                 ok, checks, forest_ok, forest_checks, high_total)};
}

// 6. Forest matching clustering is optimal.
Verdict forest_exactness() {
  std::size_t ok = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const SignedGraph f = validate::detail::small_random_forest(derive_seed(606, i), 12);
    const auto m = tree_max_matching(f);
    const auto c = cost(f, matching_to_clustering(f, m));
    const auto opt = oracle::brute_force_opt(f, 1).opt_cost;
    const auto best_matching = oracle::brute_force_max_matching(f).size();
    ok += (c == opt && c == f.positive_edge_count() - best_matching) ? 1 : 0;
  }
  return {ok == 200, format("%zu/200 forests: cost == opt == |E+| - |M*|", ok)};
}

// 7. Matching ratios on forests and the tight path.
Verdict matching_ratios() {
  std::size_t maximal_ok = 0, approx_ok = 0, count = 0;
  double worst_maximal = 0.0, worst_approx = 0.0;
  for (std::size_t i = 0; i < 300; ++i) {
    const std::uint64_t s = derive_seed(707, i);
    const SignedGraph f = validate::detail::small_random_forest(s, 24);
    const auto opt = validate::detail::forest_opt(f);
    ++count;
    const auto pi = VertexOrdering::random(f.vertex_count(), derive_seed(s, 1));
    const auto maximal = cost(f, matching_to_clustering(f, maximal_matching_greedy(f, pi)));
    const auto approx = cost(f, matching_to_clustering(f, approx_matching_eps(f, 0.5)));
    maximal_ok += maximal <= 2 * opt ? 1 : 0;
    approx_ok += 2 * approx <= 3 * opt ? 1 : 0;
    if (opt > 0) {
      worst_maximal = std::max(worst_maximal, static_cast<double>(maximal) / opt);
      worst_approx = std::max(worst_approx, static_cast<double>(approx) / opt);
    }
  }
  const SignedGraph p4 = gen::path(4);
  const std::vector<Edge> middle_first{{1, 2}, {0, 1}, {2, 3}};
  const double tight =
      static_cast<double>(cost(p4, matching_to_clustering(p4, maximal_matching_in_order(p4, middle_first)))) /
      static_cast<double>(oracle::brute_force_opt(p4, 1).opt_cost);
  return {maximal_ok == count && approx_ok == count && tight == 2.0,
          format("maximal %zu/%zu <= 2*opt (worst %.3f), eps=0.5 %zu/%zu <= 1.5*opt (worst "
                 "%.3f), P4 ratio %.1f",
                 maximal_ok, count, worst_maximal, approx_ok, count, worst_approx, tight)};
}

// 8. Clique-singleton: quadratic lower bound on barbells, upper bound with
// the pinned constant on the arboric suite.
Verdict clique_singleton_ratio() {
  constexpr double kLower = 0.5;
  bool lower_ok = true;
  std::string barbells;
  for (std::size_t lambda = 2; lambda <= 6; ++lambda) {
    const SignedGraph g = gen::barbell(lambda);
    auto rt = mpc::init_runtime(config(Model::sublinear, 808), g);
    const auto c = cost(g, clique_singleton(rt, g, lambda).clustering);
    const auto opt = oracle::brute_force_opt(g, lambda).opt_cost;
    const double ratio = static_cast<double>(c) / static_cast<double>(opt);
    lower_ok = lower_ok && opt > 0 && ratio >= kLower * static_cast<double>(lambda * lambda);
    barbells += format(" %zu:%.0f", lambda, ratio);
  }
  std::size_t ok = 0, count = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < 300; ++i) {
    const std::uint64_t s = derive_seed(809, i);
    const SignedGraph g = validate::detail::small_arboric_graph(s, 10, 3);
    const std::size_t lambda = std::max<std::size_t>(1, oracle::exact_arboricity(g));
    const auto opt = static_cast<double>(oracle::brute_force_opt(g, lambda).opt_cost);
    auto rt = mpc::init_runtime(config(Model::sublinear, derive_seed(s, 1)), g);
    const auto c = static_cast<double>(cost(g, clique_singleton(rt, g, lambda).clustering));
    const double scale = static_cast<double>(lambda * lambda);
    ++count;
    ok += c <= validate::kCliqueSingletonConstant * scale * opt ? 1 : 0;
    if (opt > 0) worst = std::max(worst, c / (opt * scale));
  }
  return {lower_ok && ok == count,
          format("barbell ratios (lambda:ratio)%s >= %.1f*lambda^2; %zu/%zu <= %.1f*lambda^2*opt "
                 "(max cost/(lambda^2 opt) %.3f)",
                 barbells.c_str(), kLower, ok, count, validate::kCliqueSingletonConstant, worst)};
}

// 9. Statistical properties of the greedy process.
Verdict statistical() {
  // (a) residual degree after half the ranks.
  const std::size_t n_a = 2000;
  const SignedGraph ga = gen::gnp(n_a, 20.0 / static_cast<double>(n_a - 1), 901);
  const double bound_a = 10.0 * n_a * std::log(static_cast<double>(n_a)) / (n_a / 2.0);
  const auto residual = mis::residual_degree_stats(ga, n_a / 2, 100, 902);
  const auto within = std::count_if(residual.begin(), residual.end(),
                                    [&](std::size_t d) { return static_cast<double>(d) <= bound_a; });
  const std::size_t max_residual = *std::max_element(residual.begin(), residual.end());

  // (b) largest chunk component in chunked-MIS runs.
  const std::size_t n_b = 4096;
  const double bound_b = 100.0 * std::log(static_cast<double>(n_b));
  std::size_t comp_ok = 0, max_comp = 0, runs_b = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const std::uint64_t s = derive_seed(903, i);
    const SignedGraph g = gen::bounded_degree(n_b, 10.0, 32, s);
    const auto pi = VertexOrdering::random(n_b, derive_seed(s, 1));
    const auto r = mis::greedy_mis_mpc(g, pi, config(Model::sublinear, derive_seed(s, 2)),
                                       mis::Subroutine::alg2);
    ++runs_b;
    comp_ok += static_cast<double>(r.report.max_chunk_component) <= bound_b ? 1 : 0;
    max_comp = std::max(max_comp, r.report.max_chunk_component);
  }

  // (c) longest dependency path against c * ln n.
  const double bound_c = validate::kDependencyPathConstant * std::log(static_cast<double>(n_b));
  std::size_t path_ok = 0, max_path = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const std::uint64_t s = derive_seed(904, i);
    const SignedGraph g = i % 2 == 0 ? gen::bounded_degree(n_b, 10.0, 64, s)
                                     : gen::arboric(n_b, 1 + i % 4, s);
    const std::size_t len = oracle::longest_dependency_path(g, VertexOrdering::random(n_b, s + 1));
    path_ok += static_cast<double>(len) <= bound_c ? 1 : 0;
    max_path = std::max(max_path, len);
  }
  Verdict v;
  v.pass = within >= 99 && comp_ok * 100 >= 99 * runs_b && path_ok == 100;
  v.detail = format("(a) %zu/100 residual <= %.0f (max %zu); (b) %zu/%zu components <= %.0f "
                    "(max %zu); (c) %zu/100 dependency paths <= %.1f*ln n = %.1f (max %zu)",
                    static_cast<std::size_t>(within), bound_a, max_residual, comp_ok, runs_b,
                    bound_b, max_comp, path_ok, validate::kDependencyPathConstant, bound_c,
                    max_path);
  return v;
}

// 10. Round growth of the prefix loop with exponentiation.
Verdict round_accounting() {
  bool memory_ok = true;
  auto mean_rounds = [&](std::size_t n, std::size_t max_degree, std::uint64_t seed) {
    double total = 0.0;
    constexpr std::size_t kSeeds = 3;
    for (std::size_t k = 0; k < kSeeds; ++k) {
      const std::uint64_t s = derive_seed(seed, k);
      const SignedGraph g =
          gen::bounded_degree(n, 0.75 * static_cast<double>(max_degree), max_degree, s);
      const auto pi = VertexOrdering::random(n, derive_seed(s, 1));
      const auto r = mis::greedy_mis_mpc(g, pi, config(Model::sublinear_extra, derive_seed(s, 2)),
                                         mis::Subroutine::alg3);
      memory_ok = memory_ok && r.report.peak_memory <= r.report.memory_words;
      total += static_cast<double>(r.report.rounds);
    }
    return total / kSeeds;
  };
  std::string by_n;
  const double small = mean_rounds(std::size_t{1} << 10, 16, 1001);
  const double large = mean_rounds(std::size_t{1} << 14, 16, 1002);
  by_n = format("n=2^10: %.1f, n=2^14: %.1f rounds (ratio %.2f <= 1.5)", small, large,
                large / small);
  const double d4 = mean_rounds(std::size_t{1} << 12, 4, 1003);
  const double d16 = mean_rounds(std::size_t{1} << 12, 16, 1004);
  const double d64 = mean_rounds(std::size_t{1} << 12, 64, 1005);
  // Linear in log2 of the degree: rounds(D) <= rounds(4) * log2(D) / 2.
  const bool degree_ok = d16 <= d4 * 2.0 && d64 <= d4 * 3.0;
  return {large <= 1.5 * small && degree_ok && memory_ok,
          by_n + format("; n=2^12 Delta 4/16/64: %.1f/%.1f/%.1f rounds (limits %.1f/%.1f); "
                        "peak memory within S: %s",
                        d4, d16, d64, 2.0 * d4, 3.0 * d4, memory_ok ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"1 mis-exactness", mis_exactness},
      {"2 pipeline-exactness", pipeline_exactness},
      {"3 pivot-3-approx", pivot_three_approx},
      {"4 bounded-clusters", bounded_clusters},
      {"5 truncation-bound", truncation_bound},
      {"6 forest-exactness", forest_exactness},
      {"7 matching-ratios", matching_ratios},
      {"8 clique-singleton-ratio", clique_singleton_ratio},
      {"9 statistical", statistical},
      {"10 round-accounting", round_accounting},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", name,
                v.detail.c_str(), secs);
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

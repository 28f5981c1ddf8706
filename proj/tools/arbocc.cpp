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

// arbocc: generate graphs, run the clustering algorithms, validate.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "arbocc/arbocc.hpp"
#include "arbocc/report.hpp"
#include "arbocc/validate.hpp"

namespace {

using namespace arbocc;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Usage problems discovered after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Edge lists written by `gen` start with "# n=<count>"; otherwise the
// vertex count is one more than the largest id.
SignedGraph read_graph(const std::string& path, std::optional<std::size_t> n_flag) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::optional<std::size_t> n = n_flag;
  if (!n) {
    std::istringstream lines(text);
    std::string line;
    std::size_t max_id = 0;
    bool any = false;
    while (std::getline(lines, line)) {
      if (line.rfind("# n=", 0) == 0) {
        n = std::stoull(line.substr(4));
        break;
      }
      if (line.empty() || line[0] == '#') continue;
      std::istringstream fields(line);
      std::size_t a = 0, b = 0;
      if (fields >> a >> b) {
        max_id = std::max({max_id, a, b});
        any = true;
      }
    }
    if (!n) n = any ? max_id + 1 : 0;
  }
  return load_graph(text, *n);
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

struct GenArgs {
  std::string kind;
  std::size_t size = 0;
  std::size_t lambda = 2;
  double p = -1.0;
  std::optional<std::size_t> max_degree;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_gen(const GenArgs& a) {
  SignedGraph g;
  if (a.kind == "path") {
    g = gen::path(a.size);
  } else if (a.kind == "star") {
    g = gen::star(a.size);
  } else if (a.kind == "clique") {
    g = gen::clique(a.size);
  } else if (a.kind == "barbell") {
    if (a.size == 0) throw UsageError("barbell needs a clique size >= 1");
    g = gen::barbell(a.size);
  } else if (a.kind == "forest") {
    g = gen::forest(a.size, a.seed, a.p < 0 ? 0.8 : a.p);
  } else if (a.kind == "arboric") {
    if (a.lambda == 0) throw UsageError("arboric needs --lambda >= 1");
    g = gen::arboric(a.size, a.lambda, a.seed);
  } else if (a.kind == "gnp") {
    if (a.p < 0) throw UsageError("gnp needs --p");
    g = gen::gnp(a.size, a.p, a.seed, a.max_degree);
  } else {
    throw UsageError("unknown graph kind '" + a.kind + "'");
  }
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!a.output.empty()) {
    file.open(a.output);
    if (!file) throw UsageError("cannot write '" + a.output + "'");
    out = &file;
  }
  *out << "# n=" << g.vertex_count() << '\n';
  write_edge_list(*out, g);
  return kExitOk;
}

struct RunArgs {
  std::string algorithm;
  std::string graph;
  std::optional<std::size_t> n;
  std::uint64_t seed = 1;
  std::optional<double> eps;
  std::optional<std::size_t> lambda;
  double delta = 0.5;
  std::string model = "sublinear";
  std::string subroutine;
  std::size_t trials = 0;
  std::size_t best_of = 1;
  bool oracle = false;
  std::string trace;
};

mpc::MpcConfig make_config(const RunArgs& a, std::size_t n) {
  mpc::MpcConfig cfg;
  cfg.n = n;
  cfg.delta = a.delta;
  cfg.hash_seed = derive_seed(a.seed, 0x6d6163);
  if (a.model == "sublinear") {
    cfg.model = mpc::Model::sublinear;
  } else if (a.model == "extra") {
    cfg.model = mpc::Model::sublinear_extra;
  } else {
    throw UsageError("--model must be 'sublinear' or 'extra'");
  }
  return cfg;
}

mis::Subroutine pick_subroutine(const RunArgs& a) {
  if (a.subroutine.empty()) return a.model == "extra" ? mis::Subroutine::alg3 : mis::Subroutine::alg2;
  if (a.subroutine == "alg2") return mis::Subroutine::alg2;
  if (a.subroutine == "alg3") return mis::Subroutine::alg3;
  throw UsageError("--subroutine must be 'alg2' or 'alg3'");
}

void write_trace_file(const std::string& path, const mpc::MpcRuntime& rt) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write trace file '" + path + "'");
  write_trace(out, rt);
}

// Rejects bad model or subroutine names even for algorithms that ignore them.
void check_model_flags(const RunArgs& a) {
  make_config(a, 0);
  pick_subroutine(a);
}

int cmd_run(const RunArgs& a) {
  const auto started = std::chrono::steady_clock::now();
  check_model_flags(a);
  const SignedGraph g = read_graph(a.graph, a.n);
  const std::size_t n = g.vertex_count();
  const ArboricityEstimate est = estimate_arboricity(g, a.lambda);
  const std::size_t lambda = std::max<std::size_t>(1, est.lambda());
  if (est.warning) std::cerr << "warning: " << *est.warning << '\n';
  if (a.best_of == 0) throw UsageError("--best-of must be at least 1");

  RunSummary summary;
  summary.algorithm = a.algorithm;
  summary.seed = a.seed;
  Clustering result;
  json extra = json::object();

  if (a.algorithm == "pivot-seq") {
    if (a.best_of == 1) {
      result = pivot_sequential(g, VertexOrdering::random(n, a.seed));
    } else {
      const auto best = best_of(g, a.best_of, a.seed, [&](std::uint64_t s) {
        return pivot_sequential(g, VertexOrdering::random(n, s));
      });
      result = best.clustering;
      extra["best_of"] = json{{"copies", a.best_of}, {"chosen_seed", best.seed}};
    }
    if (a.trials > 0) {
      const auto e = pivot_expectation_check(g, a.trials, a.seed);
      extra["expectation"] = json{{"trials", e.trials}, {"mean_cost", e.mean_cost},
                                  {"min_cost", e.min_cost}, {"max_cost", e.max_cost}};
    }
  } else if (a.algorithm == "pivot-mpc") {
    summary.lambda = lambda;
    summary.epsilon = 2.0;
    const auto sub = pick_subroutine(a);
    std::optional<PivotMpcResult> chosen;
    std::optional<mpc::MpcRuntime> chosen_rt;
    std::uint64_t best_cost = 0;
    for (std::size_t k = 0; k < a.best_of; ++k) {
      const std::uint64_t s = a.best_of == 1 ? a.seed : derive_seed(a.seed, k);
      auto rt = mpc::init_runtime(make_config(a, n), g);
      auto r = pivot_mpc(rt, g, lambda, VertexOrdering::random(n, s), sub);
      const std::uint64_t c = cost(g, r.clustering);
      if (!chosen || c < best_cost) {
        best_cost = c;
        chosen = std::move(r);
        chosen_rt.emplace(std::move(rt));
      }
    }
    result = chosen->clustering;
    summary.rounds = chosen->rounds;
    summary.peak_memory = chosen->peak_memory;
    extra["mis"] = mis_report_json(chosen->mis);
    extra["runtime"] = runtime_json(*chosen_rt);
    extra["truncation"] = json{{"threshold", chosen->split.threshold},
                               {"high_vertices", chosen->split.high.size()},
                               {"marked_edges", chosen->split.marked_edges}};
    write_trace_file(a.trace, *chosen_rt);
  } else if (a.algorithm == "forest-exact") {
    const Matching m = tree_max_matching(g);
    result = matching_to_clustering(g, m);
    extra["matching_size"] = m.size();
  } else if (a.algorithm == "forest-approx") {
    const double eps = a.eps.value_or(0.5);
    summary.epsilon = eps;
    const Matching m = approx_matching_eps(g, eps);
    result = matching_to_clustering(g, m);
    extra["matching_size"] = m.size();
  } else if (a.algorithm == "maximal-match") {
    const Matching m = maximal_matching_greedy(g, VertexOrdering::random(n, a.seed));
    result = matching_to_clustering(g, m);
    extra["matching_size"] = m.size();
  } else if (a.algorithm == "clique-singleton") {
    summary.lambda = lambda;
    auto rt = mpc::init_runtime(make_config(a, n), g);
    const auto r = clique_singleton(rt, g, lambda);
    result = r.clustering;
    summary.rounds = r.rounds;
    summary.peak_memory = rt.report().peak_memory;
    extra["runtime"] = runtime_json(rt);
    write_trace_file(a.trace, rt);
  } else if (a.algorithm == "brute-opt") {
    summary.lambda = lambda;
    const auto opt = oracle::brute_force_opt(g, lambda);
    result = opt.witness;
    summary.opt_cost = opt.opt_cost;
    extra["bounded_witness_found"] = opt.bounded_witness.has_value();
  } else {
    throw UsageError("unknown algorithm '" + a.algorithm + "'");
  }

  if (a.oracle && !summary.opt_cost) {
    if (n <= oracle::kMaxOptVertices) {
      summary.opt_cost = oracle::brute_force_opt(g, lambda).opt_cost;
    } else {
      std::cerr << "warning: --oracle skipped, n=" << n << " exceeds "
                << oracle::kMaxOptVertices << '\n';
    }
  }
  if (result.vertex_count() != n) throw InvariantViolation("clustering has the wrong size");
  json report = run_report_json(g, result, summary);
  report["input"] = input_summary_json(g, est);
  for (auto& [key, value] : extra.items()) report[key] = value;
  emit(report);
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
  std::cerr << "wall_time_s " << elapsed.count() << '\n';
  return kExitOk;
}

int cmd_mis(const RunArgs& a) {
  check_model_flags(a);
  const SignedGraph g = read_graph(a.graph, a.n);
  const auto pi = VertexOrdering::random(g.vertex_count(), a.seed);
  auto rt = mpc::init_runtime(make_config(a, g.vertex_count()), g);
  auto r = mis::greedy_mis_alg1(rt, g, pi, pick_subroutine(a));
  r.report.seed = a.seed;
  json j = mis_report_json(r.report);
  j["mis"] = r.state.mis();
  if (a.oracle) j["matches_sequential"] = r.state.mis() == oracle::sequential_greedy_mis(g, pi);
  emit(j);
  write_trace_file(a.trace, rt);
  return kExitOk;
}

struct ValidateArgs {
  std::string suite;
  std::optional<std::size_t> cases;
  std::uint64_t seed = 1;
  std::size_t n = 0;
  std::size_t trials = 200;
};

std::size_t default_cases(const std::string& suite) {
  if (suite == "structural") return 500;
  if (suite == "ratios") return 300;
  if (suite == "rounds") return 3;
  return 100;
}

int cmd_validate(const ValidateArgs& a) {
  validate::SuiteOptions o;
  o.cases = a.cases.value_or(default_cases(a.suite));
  o.seed = a.seed;
  o.n = a.n;
  o.trials = a.trials;
  const auto known = validate::suite_names();
  if (std::find(known.begin(), known.end(), a.suite) == known.end()) {
    throw UsageError("unknown suite '" + a.suite + "'");
  }
  const auto results = validate::run_suite(a.suite, o);
  bool all_ok = true;
  std::cerr << "suite        property                                      passed/cases\n";
  for (const auto& r : results) {
    emit(validate::to_json(r));
    all_ok = all_ok && r.ok();
    std::cerr << (r.ok() ? "PASS " : "FAIL ") << r.suite << "  " << r.property << "  "
              << r.passed << '/' << r.cases << (r.vacuous() ? "  (vacuous)" : "") << '\n';
    if (r.vacuous()) std::cerr << "warning: " << r.property << " ran no cases\n";
  }
  return all_ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation clustering on low-arboricity graphs and an MPC simulator"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Write a generated graph as an edge list");
  gen->add_option("kind", gen_args.kind, "forest|arboric|barbell|star|path|clique|gnp")->required();
  gen->add_option("size", gen_args.size,
                  "vertices (path, forest, arboric, gnp), leaves (star), clique size (clique, barbell)")
      ->required();
  gen->add_option("--lambda", gen_args.lambda, "forests in the union (arboric)");
  gen->add_option("--p", gen_args.p, "edge probability (gnp) or attach probability (forest)");
  gen->add_option("--max-degree", gen_args.max_degree, "degree cap (gnp)");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("-o,--output", gen_args.output, "output file (default stdout)");

  RunArgs run_args;
  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("graph", run_args.graph, "edge-list file")->required();
    cmd->add_option("--n", run_args.n, "vertex count (default: from header or max id)");
    cmd->add_option("--seed", run_args.seed, "ordering seed");
    cmd->add_option("--lambda", run_args.lambda, "arboricity bound (default: degeneracy)");
    cmd->add_option("--delta", run_args.delta, "memory exponent");
    cmd->add_option("--model", run_args.model, "sublinear|extra");
    cmd->add_option("--subroutine", run_args.subroutine, "alg2|alg3 (default by model)");
    cmd->add_flag("--oracle", run_args.oracle, "compare against the brute-force optimum");
    cmd->add_option("--trace", run_args.trace, "write the per-round trace (JSON lines)");
  };
  auto* run = app.add_subcommand("run", "Run a clustering algorithm and print a JSON report");
  run->add_option("algorithm", run_args.algorithm,
                  "pivot-seq|pivot-mpc|forest-exact|forest-approx|maximal-match|clique-singleton|brute-opt")
      ->required();
  add_run_flags(run);
  run->add_option("--eps", run_args.eps, "epsilon");
  run->add_option("--trials", run_args.trials, "PIVOT trials for the empirical mean");
  run->add_option("--best-of", run_args.best_of, "independent copies; keep the cheapest");

  auto* mis_cmd = app.add_subcommand("mis", "Compute the greedy MIS on the simulator");
  add_run_flags(mis_cmd);

  ValidateArgs val_args;
  auto* val = app.add_subcommand("validate", "Run a property suite (JSON lines on stdout)");
  val->add_option("suite", val_args.suite, "structural|mis-equiv|ratios|rounds|stats")->required();
  val->add_option("--cases", val_args.cases, "number of cases");
  val->add_option("--seed", val_args.seed, "master seed");
  val->add_option("--n", val_args.n, "instance size override");
  val->add_option("--trials", val_args.trials, "PIVOT trials per instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (*gen) return cmd_gen(gen_args);
    if (*run) return cmd_run(run_args);
    if (*mis_cmd) return cmd_mis(run_args);
    if (*val) return cmd_validate(val_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const arbocc::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

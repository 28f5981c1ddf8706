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

// JSON serialization of clusterings, MPC traces and run reports.

#ifndef ARBOCC_REPORT_HPP_
#define ARBOCC_REPORT_HPP_

#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"

#include "arbocc/cluster_algs.hpp"
#include "arbocc/graph.hpp"
#include "arbocc/greedy_mis.hpp"
#include "arbocc/mpc.hpp"

namespace arbocc {

using json = nlohmann::ordered_json;

// {"assignment": [...], "cost": int}; the cost is recomputed here.
inline json clustering_json(const SignedGraph& g, const Clustering& c) {
  json j;
  j["assignment"] = std::vector<ClusterId>(c.assignment().begin(), c.assignment().end());
  j["cost"] = cost(g, c);
  return j;
}

inline json phase_json(const mis::PhaseLog& p) {
  return json{{"i", p.index},
              {"t_i", p.size},
              {"offset", p.offset},
              {"residual", p.residual},
              {"prefix_max_degree", p.prefix_max_degree},
              {"residual_max_degree", p.residual_max_degree},
              {"residual_bound", p.residual_bound},
              {"target_degree", p.target_degree},
              {"rounds", p.rounds}};
}

inline json mis_report_json(const mis::MisReport& r) {
  json j{{"algorithm", r.algorithm},
         {"n", r.n},
         {"delta", r.delta},
         {"seed", r.seed},
         {"max_degree", r.max_degree},
         {"planning_max_degree", r.planning_max_degree},
         {"rounds", r.rounds},
         {"peak_memory", r.peak_memory},
         {"peak_traffic", r.peak_traffic},
         {"memory_words", r.memory_words},
         {"mis_size", r.mis_size}};
  j["phases"] = json::array();
  for (const auto& p : r.phases) j["phases"].push_back(phase_json(p));
  j["chunks_processed"] = r.chunks_processed;
  j["max_chunk_component"] = r.max_chunk_component;
  j["giant_fallbacks"] = r.giant_fallbacks;
  j["max_radius"] = r.max_radius;
  j["supersteps"] = r.supersteps;
  j["doubling_rounds"] = r.doubling_rounds;
  j["warnings"] = r.warnings;
  return j;
}

inline json round_record_json(const mpc::RoundRecord& r) {
  return json{{"round", r.round},
              {"max_mem", r.max_mem},
              {"max_traffic", r.max_traffic},
              {"active_machines", r.active_machines}};
}

// One JSON object per line.
inline void write_trace(std::ostream& out, const mpc::MpcRuntime& rt) {
  for (const auto& r : rt.trace()) out << round_record_json(r).dump() << '\n';
}

inline json runtime_json(const mpc::MpcRuntime& rt) {
  const auto r = rt.report();
  return json{{"model", mpc::model_name(rt.config().model)},
              {"machines", r.machines},
              {"memory_words", r.memory_words},
              {"traffic_cap", rt.traffic_cap()},
              {"hash_seed", r.hash_seed},
              {"rounds", r.rounds},
              {"peak_memory", r.peak_memory},
              {"peak_traffic", r.peak_traffic}};
}

inline json input_summary_json(const SignedGraph& g, const ArboricityEstimate& est) {
  json j{{"n", g.vertex_count()},
         {"positive_edges", g.positive_edge_count()},
         {"max_degree", degree_profile(g).max_degree},
         {"degeneracy", est.degeneracy},
         {"lambda_lower", est.lower},
         {"lambda_upper", est.upper},
         {"lambda", est.lambda()}};
  if (est.warning) j["lambda_warning"] = *est.warning;
  return j;
}

// Clustering JSON extended with run metadata. `opt` adds opt_cost and ratio.
struct RunSummary {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  std::optional<std::size_t> lambda;
  std::optional<std::size_t> rounds;
  std::optional<std::size_t> peak_memory;
  std::optional<std::uint64_t> opt_cost;
};

inline json run_report_json(const SignedGraph& g, const Clustering& c, const RunSummary& s) {
  json j{{"algorithm", s.algorithm}, {"seed", s.seed}};
  const json cj = clustering_json(g, c);
  j["assignment"] = cj["assignment"];
  j["cost"] = cj["cost"];
  j["epsilon"] = s.epsilon ? json(*s.epsilon) : json(nullptr);
  j["lambda"] = s.lambda ? json(*s.lambda) : json(nullptr);
  if (s.rounds) j["rounds"] = *s.rounds;
  if (s.peak_memory) j["peak_memory"] = *s.peak_memory;
  if (s.opt_cost) {
    j["opt_cost"] = *s.opt_cost;
    const auto value = cj["cost"].get<std::uint64_t>();
    j["ratio"] = *s.opt_cost == 0 ? (value == 0 ? json(1.0) : json(nullptr))
                                  : json(static_cast<double>(value) /
                                         static_cast<double>(*s.opt_cost));
  }
  return j;
}

}  // namespace arbocc

#endif  // ARBOCC_REPORT_HPP_

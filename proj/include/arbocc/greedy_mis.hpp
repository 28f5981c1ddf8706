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

// Greedy MIS with respect to a random ordering, computed on the MPC
// simulator. A prefix loop processes ever longer rank intervals; each
// interval is handed to one of two subroutines:
//
//   * chunk shattering: the interval is cut into small rank chunks whose
//     live subgraphs fall apart into tiny components, each component is
//     gathered by exponentiation and solved by its lowest-id vertex;
//   * exponentiation: every vertex gathers its R-hop ball and the
//     synchronous greedy process is simulated R steps per round.
//
// Both produce exactly the sequential greedy MIS.

#ifndef ARBOCC_GREEDY_MIS_HPP_
#define ARBOCC_GREEDY_MIS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "arbocc/common.hpp"
#include "arbocc/graph.hpp"
#include "arbocc/mpc.hpp"
#include "arbocc/ordering.hpp"

namespace arbocc::mis {

using mpc::MpcRuntime;
using mpc::Outbox;
using mpc::MessageView;
using mpc::Word;

enum class MisStatus : std::uint8_t { undecided = 0, in_mis = 1, dominated = 2 };

struct MisState {
  std::vector<MisStatus> status;

  MisState() = default;
  explicit MisState(std::size_t n) : status(n, MisStatus::undecided) {}

  bool live(Vertex v) const { return status[v] == MisStatus::undecided; }

  std::vector<Vertex> mis() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < status.size(); ++v) {
      if (status[v] == MisStatus::in_mis) out.push_back(v);
    }
    return out;
  }

  std::size_t undecided_count() const {
    return static_cast<std::size_t>(
        std::count(status.begin(), status.end(), MisStatus::undecided));
  }
};

// Independence and maximality of `set` in g.
inline bool is_maximal_independent(const SignedGraph& g, std::span<const Vertex> set) {
  std::vector<bool> in(g.vertex_count(), false);
  for (Vertex v : set) in[v] = true;
  for (const Edge& e : g.edges()) {
    if (in[e.u] && in[e.v]) return false;
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (in[v]) continue;
    bool covered = false;
    for (Vertex w : g.neighbors(v)) covered = covered || in[w];
    if (!covered) return false;
  }
  return true;
}

// Full-state check: independence, every dominated vertex has a
// smaller-rank MIS neighbour, nothing undecided.
inline bool is_consistent_greedy_state(const SignedGraph& g, const VertexOrdering& pi,
                                       const MisState& s) {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (s.status[v] == MisStatus::undecided) return false;
    if (s.status[v] == MisStatus::in_mis) {
      for (Vertex w : g.neighbors(v)) {
        if (s.status[w] == MisStatus::in_mis) return false;
      }
    } else {
      bool ok = false;
      for (Vertex w : g.neighbors(v)) {
        ok = ok || (s.status[w] == MisStatus::in_mis && pi.rank_of(w) < pi.rank_of(v));
      }
      if (!ok) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Schedules.

struct PrefixPhase {
  std::size_t index = 0;
  std::size_t offset = 0;  // first rank of the phase
  std::size_t size = 0;    // t_i after clipping to the remaining ranks
  bool residual = false;   // the final catch-all phase
};

struct PrefixSchedule {
  std::size_t n = 0;
  std::size_t initial_max_degree = 0;
  double constant = 20.0;
  std::vector<PrefixPhase> phases;

  // Unclipped t_i = ceil(C * n * ln n * 2^i / max_degree).
  static std::size_t prefix_length(std::size_t n, std::size_t max_degree, double constant,
                                   std::size_t i) {
    const double t = constant * static_cast<double>(n) *
                     std::log(static_cast<double>(std::max<std::size_t>(n, 1))) *
                     std::ldexp(1.0, static_cast<int>(i)) /
                     static_cast<double>(std::max<std::size_t>(max_degree, 1));
    return static_cast<std::size_t>(std::ceil(t - 1e-9));
  }

  static PrefixSchedule build(std::size_t n, std::size_t max_degree, double constant = 20.0) {
    PrefixSchedule s{n, max_degree, constant, {}};
    const std::size_t last = max_degree <= 1
                                 ? 0
                                 : static_cast<std::size_t>(
                                       std::ceil(std::log2(static_cast<double>(max_degree))));
    std::size_t offset = 0;
    for (std::size_t i = 0; i <= last && offset < n; ++i) {
      std::size_t t = prefix_length(n, max_degree, constant, i);
      t = std::clamp<std::size_t>(t, 1, n - offset);
      s.phases.push_back({i, offset, t, false});
      offset += t;
    }
    if (offset < n) s.phases.push_back({last + 1, offset, n - offset, true});
    return s;
  }
};

struct ChunkPhase {
  std::size_t index = 0;
  std::size_t chunk_size = 0;
  std::size_t iterations = 0;
};

struct ChunkSlot {
  std::size_t phase = 0;
  std::size_t iteration = 0;
  std::size_t offset = 0;  // relative to the prefix start
  std::size_t size = 0;
};

struct ChunkSchedule {
  std::size_t prefix_size = 0;
  std::size_t max_degree = 0;
  double denominator = 100.0;
  double iteration_factor = 2000.0;
  std::vector<ChunkPhase> phases;

  // c_i = c_0 * 2^i with c_0 = max(1, ceil(prefix / (denominator * max_degree))),
  // J = ceil(iteration_factor * ln max_degree) iterations per phase, phases
  // i = 0..ceil(log2 max_degree). If these do not reach the end of the
  // prefix, the last phase runs until they do.
  static ChunkSchedule build(std::size_t prefix_size, std::size_t max_degree,
                             double denominator = 100.0, double iteration_factor = 2000.0) {
    ChunkSchedule s{prefix_size, max_degree, denominator, iteration_factor, {}};
    if (prefix_size == 0) return s;
    const std::size_t deg = std::max<std::size_t>(max_degree, 1);
    const double base = static_cast<double>(prefix_size) / (denominator * static_cast<double>(deg));
    const std::size_t c0 = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(base - 1e-12)));
    const std::size_t J = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(iteration_factor * std::log(static_cast<double>(deg)) - 1e-9)));
    const std::size_t last =
        deg <= 1 ? 0 : static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(deg))));
    std::size_t covered = 0;
    for (std::size_t i = 0; i <= last && covered < prefix_size; ++i) {
      const std::size_t c = c0 << std::min<std::size_t>(i, 40);
      s.phases.push_back({i, c, J});
      covered += c * J;
    }
    if (covered < prefix_size) {
      ChunkPhase& p = s.phases.back();
      p.iterations += (prefix_size - covered + p.chunk_size - 1) / p.chunk_size;
    }
    return s;
  }

  std::size_t total_coverage() const {
    std::size_t c = 0;
    for (const auto& p : phases) c += p.chunk_size * p.iterations;
    return c;
  }

  // Chunks in processing order, stopping at the end of the prefix.
  std::vector<ChunkSlot> chunks() const {
    std::vector<ChunkSlot> out;
    std::size_t offset = 0;
    for (const auto& p : phases) {
      for (std::size_t j = 0; j < p.iterations && offset < prefix_size; ++j) {
        const std::size_t size = std::min(p.chunk_size, prefix_size - offset);
        out.push_back({p.index, j, offset, size});
        offset += size;
      }
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Options and reports.

enum class Subroutine { alg2, alg3 };

inline const char* subroutine_name(Subroutine s) {
  return s == Subroutine::alg2 ? "alg2" : "alg3";
}

struct MisOptions {
  double prefix_constant = 20.0;
  double chunk_denominator = 100.0;
  double chunk_iteration_factor = 2000.0;
  // Components larger than factor * ln n are solved sequentially.
  double component_cap_factor = 100.0;
  // Max degree used to plan the prefix schedule; measured when empty.
  std::optional<std::size_t> planning_max_degree;
};

struct PhaseLog {
  std::size_t index = 0;
  std::size_t offset = 0;
  std::size_t size = 0;
  bool residual = false;
  std::size_t prefix_max_degree = 0;
  std::size_t residual_max_degree = 0;
  double residual_bound = 0.0;     // 10 * n * ln n / (processed ranks)
  std::size_t target_degree = 0;   // planning degree / 2^(i+1)
  std::size_t rounds = 0;
};

struct MisReport {
  std::string algorithm;
  std::size_t n = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::size_t max_degree = 0;
  std::size_t planning_max_degree = 0;
  std::size_t rounds = 0;
  std::size_t peak_memory = 0;
  std::size_t peak_traffic = 0;
  std::size_t memory_words = 0;
  std::size_t mis_size = 0;
  std::vector<PhaseLog> phases;
  // Chunk shattering.
  std::size_t chunks_processed = 0;
  std::size_t max_chunk_component = 0;
  std::size_t giant_fallbacks = 0;
  // Exponentiation.
  std::size_t max_radius = 0;
  std::size_t supersteps = 0;
  std::size_t doubling_rounds = 0;
  std::vector<std::string> warnings;
};

struct MisResult {
  MisState state;
  MisReport report;
};

// Ranks [lo, hi).
struct RankRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

namespace detail {

inline std::vector<Vertex> live_in_range(const VertexOrdering& pi, const MisState& s,
                                         RankRange range) {
  std::vector<Vertex> out;
  for (std::size_t r = range.lo; r < range.hi; ++r) {
    const Vertex v = pi.at(static_cast<Rank>(r));
    if (s.live(v)) out.push_back(v);
  }
  return out;
}

// Marks membership of a vertex subset with a generation stamp so the
// marker array is reused without clearing.
class SubsetMarker {
 public:
  explicit SubsetMarker(std::size_t n) : stamp_(n, 0) {}
  void mark(std::span<const Vertex> vs) {
    ++gen_;
    for (Vertex v : vs) stamp_[v] = gen_;
  }
  bool contains(Vertex v) const { return stamp_[v] == gen_; }

 private:
  std::vector<std::uint64_t> stamp_;
  std::uint64_t gen_ = 0;
};

// Grouped (target, source) pairs from each machine's hosted sources to the
// machines of their undecided neighbours.
inline void send_to_live_neighbors(const MpcRuntime& rt, const SignedGraph& g,
                                   const MisState& s, std::span<const Vertex> sources,
                                   Outbox& out) {
  std::unordered_map<std::size_t, std::vector<Word>> per_dest;
  for (Vertex v : sources) {
    for (Vertex w : g.neighbors(v)) {
      if (!s.live(w)) continue;
      auto& buf = per_dest[rt.machine_of(w)];
      buf.push_back(w);
      buf.push_back(v);
    }
  }
  std::vector<std::size_t> dests;
  for (auto& [d, _] : per_dest) dests.push_back(d);
  std::sort(dests.begin(), dests.end());
  for (std::size_t d : dests) out.send(d, per_dest[d]);
}

// Two rounds: new MIS vertices tell their live neighbours, which become
// dominated; then every newly dominated vertex tells its live neighbours,
// so all vertices know their neighbours' statuses again.
inline void propagate_decisions(MpcRuntime& rt, const SignedGraph& g, MisState& s,
                                std::span<const Vertex> newly_in,
                                std::vector<Vertex> newly_dominated) {
  const std::size_t M = rt.machine_count();
  std::vector<std::vector<Vertex>> joined(M), dominated(M);
  for (Vertex v : newly_in) joined[rt.machine_of(v)].push_back(v);
  std::vector<mpc::NoState> st(M);
  rt.run_round(st, [&](std::size_t m, mpc::NoState&, auto, Outbox& out) {
    send_to_live_neighbors(rt, g, s, joined[m], out);
  });
  rt.local_step(st, [&](std::size_t, mpc::NoState&, std::span<const MessageView> inbox) {
    for (const auto& msg : inbox) {
      for (std::size_t i = 0; i + 1 < msg.payload.size(); i += 2) {
        const auto w = static_cast<Vertex>(msg.payload[i]);
        if (s.live(w)) {
          s.status[w] = MisStatus::dominated;
          newly_dominated.push_back(w);
        }
      }
    }
  });
  for (Vertex v : newly_dominated) dominated[rt.machine_of(v)].push_back(v);
  rt.run_round(st, [&](std::size_t m, mpc::NoState&, auto, Outbox& out) {
    send_to_live_neighbors(rt, g, s, dominated[m], out);
  });
  // Receivers only update their view of the neighbour; the global status
  // array already reflects it.
  rt.local_step(st, [](std::size_t, mpc::NoState&, std::span<const MessageView>) {});
}

// Sequential greedy on a vertex list, adjacency restricted by `inside`.
template <class Inside>
void solve_sequentially(const SignedGraph& g, const VertexOrdering& pi,
                        std::vector<Vertex> members, Inside&& inside, MisState& s,
                        std::vector<Vertex>& newly_in, std::vector<Vertex>& newly_dominated) {
  std::sort(members.begin(), members.end(),
            [&](Vertex a, Vertex b) { return pi.rank_of(a) < pi.rank_of(b); });
  for (Vertex v : members) {
    if (!s.live(v)) continue;
    s.status[v] = MisStatus::in_mis;
    newly_in.push_back(v);
    for (Vertex w : g.neighbors(v)) {
      if (inside(w) && s.live(w)) {
        s.status[w] = MisStatus::dominated;
        newly_dominated.push_back(w);
      }
    }
  }
}

// Live vertices reachable from `start` inside the subset.
template <class Inside>
std::vector<Vertex> component_of(const SignedGraph& g, Vertex start, Inside&& inside,
                                 std::vector<bool>& seen) {
  std::vector<Vertex> comp{start}, stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (inside(w) && !seen[w]) {
        seen[w] = true;
        comp.push_back(w);
        stack.push_back(w);
      }
    }
  }
  return comp;
}

// Local decision for a subset whose induced max degree is at most 1:
// every vertex without a smaller-rank neighbour in the subset joins.
template <class Inside>
void decide_matching_like(const SignedGraph& g, const VertexOrdering& pi,
                          std::span<const Vertex> members, Inside&& inside, MisState& s,
                          std::vector<Vertex>& newly_in, std::vector<Vertex>& newly_dominated) {
  std::vector<Vertex> join;
  for (Vertex v : members) {
    bool lower = false;
    for (Vertex w : g.neighbors(v)) lower = lower || (inside(w) && pi.rank_of(w) < pi.rank_of(v));
    if (!lower) join.push_back(v);
  }
  for (Vertex v : join) {
    s.status[v] = MisStatus::in_mis;
    newly_in.push_back(v);
  }
  for (Vertex v : members) {
    if (s.live(v)) {
      s.status[v] = MisStatus::dominated;
      newly_dominated.push_back(v);
    }
  }
}

inline std::size_t max_degree_within(const SignedGraph& g, std::span<const Vertex> members,
                                     const SubsetMarker& mark) {
  std::size_t best = 0;
  for (Vertex v : members) {
    std::size_t d = 0;
    for (Vertex w : g.neighbors(v)) d += mark.contains(w) ? 1 : 0;
    best = std::max(best, d);
  }
  return best;
}

// Max over machines of a per-vertex quantity, via the machine tree.
template <class PerVertex>
std::size_t tree_max(MpcRuntime& rt, std::span<const Vertex> members, PerVertex&& value) {
  std::vector<Word> per_machine(rt.machine_count(), 0);
  for (Vertex v : members) {
    auto& slot = per_machine[rt.machine_of(v)];
    slot = std::max<Word>(slot, value(v));
  }
  return static_cast<std::size_t>(mpc::all_reduce(rt, mpc::Aggregate::max, per_machine));
}

// Moore bound on the number of vertices within r hops at max degree d.
inline double moore_bound(std::size_t d, std::size_t r) {
  if (d == 0) return 1.0;
  double total = 1.0, layer = static_cast<double>(d);
  for (std::size_t k = 0; k < r; ++k) {
    total += layer;
    layer *= static_cast<double>(d - 1);
    if (d == 1) layer = 0.0;
  }
  return total;
}

}  // namespace detail

// Largest gathering radius whose worst-case knowledge, doubling traffic and
// superstep traffic fit: knowledge at radius r holds records for every
// vertex closer than r (3 + 2d words each) plus one status word per ball
// member. Capped at ceil(ln n / ln d). Returns 0 when even r = 1 fails.
inline std::size_t choose_radius(std::size_t n, std::size_t max_degree,
                                 std::size_t share_words, std::size_t traffic_cap) {
  const std::size_t d = max_degree;
  const double record = 3.0 + 2.0 * static_cast<double>(d);
  auto knowledge_words = [&](std::size_t r) {
    return detail::moore_bound(d, r - 1) * record + detail::moore_bound(d, r);
  };
  auto step_traffic = [&](std::size_t from, std::size_t step) {
    return detail::moore_bound(d, step) * (3.0 + detail::moore_bound(d, from - 1) * record);
  };
  auto fits = [&](std::size_t r) {
    if (knowledge_words(r) > static_cast<double>(share_words)) return false;
    if (5.0 * detail::moore_bound(d, r) > static_cast<double>(traffic_cap)) return false;
    for (std::size_t at = 1; at < r;) {
      const std::size_t step = std::min(at, r - at);
      if (step_traffic(at, step) > static_cast<double>(traffic_cap)) return false;
      at += step;
    }
    return true;
  };
  std::size_t cap = 1;
  if (d >= 2 && n >= 2) {
    cap = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n)) /
                                              std::log(static_cast<double>(d)) - 1e-9)));
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r <= cap && fits(r); ++r) best = r;
  return best;
}

// ---------------------------------------------------------------------------
// Chunk shattering.

// Processes the live vertices with ranks in `range` chunk by chunk. Leaves
// `state` fully consistent: every new MIS vertex's neighbours are dominated.
inline void process_prefix_alg2(MpcRuntime& rt, const SignedGraph& g,
                                const VertexOrdering& pi, MisState& state, RankRange range,
                                const ChunkSchedule& schedule, const MisOptions& opt = {},
                                MisReport* report = nullptr) {
  const std::size_t n = g.vertex_count();
  const auto cap_records = static_cast<std::size_t>(std::ceil(
      opt.component_cap_factor * std::log(static_cast<double>(std::max<std::size_t>(n, 2)))));
  detail::SubsetMarker mark(n);
  std::vector<bool> overflowed(n, false), seen(n, false);
  for (const ChunkSlot& slot : schedule.chunks()) {
    const RankRange chunk{range.lo + slot.offset, range.lo + slot.offset + slot.size};
    const std::vector<Vertex> live = detail::live_in_range(pi, state, chunk);
    if (live.empty()) continue;
    mark.mark(live);
    auto inside = [&](Vertex w) { return mark.contains(w) && state.live(w); };
    if (report) ++report->chunks_processed;

    mpc::detail::BallGatherer gather(rt, g, pi, live, inside);
    gather.gather_components(cap_records, overflowed);

    std::vector<Vertex> newly_in, newly_dominated;
    std::vector<std::pair<Vertex, MisStatus>> decided;
    std::size_t largest = 0;
    auto states = gather.states();
    rt.run_round(states, [&](std::size_t m, mpc::detail::GatherState&, auto, Outbox& out) {
      for (Vertex u : gather.members(m)) {
        if (overflowed[u]) continue;
        const auto& k = gather.knowledge(u);
        Vertex owner = u;
        k.for_each_record([&](Vertex id, Rank) { owner = std::min(owner, id); });
        if (owner != u) continue;
        largest = std::max(largest, k.record_count());
        std::vector<std::pair<Rank, Vertex>> by_rank;
        k.for_each_record([&](Vertex id, Rank r) { by_rank.emplace_back(r, id); });
        std::sort(by_rank.begin(), by_rank.end());
        std::unordered_map<Vertex, MisStatus> local;
        for (auto [r, id] : by_rank) {
          if (local.contains(id)) continue;
          local[id] = MisStatus::in_mis;
          k.for_each_neighbor(id, [&](Vertex w, Rank) {
            local.try_emplace(w, MisStatus::dominated);
          });
        }
        std::unordered_map<std::size_t, std::vector<Word>> per_dest;
        for (auto [r, id] : by_rank) {
          auto& buf = per_dest[rt.machine_of(id)];
          buf.push_back(id);
          buf.push_back(static_cast<Word>(local[id]));
        }
        std::vector<std::size_t> dests;
        for (auto& [dm, _] : per_dest) dests.push_back(dm);
        std::sort(dests.begin(), dests.end());
        for (std::size_t dm : dests) out.send(dm, per_dest[dm]);
      }
    });
    rt.local_step(states, [&](std::size_t, mpc::detail::GatherState&,
                              std::span<const MessageView> inbox) {
      for (const auto& msg : inbox) {
        for (std::size_t i = 0; i + 1 < msg.payload.size(); i += 2) {
          decided.emplace_back(static_cast<Vertex>(msg.payload[i]),
                               static_cast<MisStatus>(msg.payload[i + 1]));
        }
      }
    });
    for (auto [v, st] : decided) {
      state.status[v] = st;
      (st == MisStatus::in_mis ? newly_in : newly_dominated).push_back(v);
    }
    for (Vertex v : live) {
      if (!overflowed[v] || seen[v] || !inside(v)) continue;
      std::vector<Vertex> comp = detail::component_of(g, v, inside, seen);
      largest = std::max(largest, comp.size());
      if (report) {
        ++report->giant_fallbacks;
        report->warnings.push_back("chunk component of " + std::to_string(comp.size()) +
                                   " vertices exceeds " + std::to_string(cap_records) +
                                   "; solved sequentially");
      }
      detail::solve_sequentially(g, pi, comp, inside, state, newly_in, newly_dominated);
    }
    for (Vertex v : live) {
      overflowed[v] = false;
      seen[v] = false;
    }
    if (report) report->max_chunk_component = std::max(report->max_chunk_component, largest);
    detail::propagate_decisions(rt, g, state, newly_in, std::move(newly_dominated));
  }
}

// ---------------------------------------------------------------------------
// Exponentiation with round compression.

namespace detail {

struct BallView {
  std::unordered_map<Vertex, MisStatus> status;
};

struct Alg3State {
  std::span<const Vertex> members;
  const std::vector<mpc::detail::Knowledge>* store = nullptr;
  const std::vector<BallView>* views = nullptr;
  std::size_t words() const {
    std::size_t w = 0;
    for (Vertex v : members) w += (*store)[v].words() + (*views)[v].status.size();
    return w;
  }
};

// Status of `center` after `steps` synchronous greedy steps on its gathered
// ball, starting from `view`. One step: an undecided vertex joins when all
// smaller-rank neighbours are dominated, and becomes dominated when a
// neighbour is in the MIS. Vertices without a record are held fixed; their
// errors cannot reach the center within `steps` steps.
inline MisStatus simulate_ball(const mpc::detail::Knowledge& k, Vertex center,
                               const BallView& view, std::size_t steps) {
  std::unordered_map<Vertex, MisStatus> cur = view.status;
  cur.try_emplace(center, MisStatus::undecided);
  std::vector<std::pair<Vertex, Rank>> recs;
  k.for_each_record([&](Vertex id, Rank r) { recs.emplace_back(id, r); });
  std::unordered_map<Vertex, MisStatus> next;
  for (std::size_t t = 0; t < steps && cur[center] == MisStatus::undecided; ++t) {
    next = cur;
    for (auto [id, r] : recs) {
      if (cur[id] != MisStatus::undecided) continue;
      bool all_lower_dominated = true, has_mis_neighbor = false;
      k.for_each_neighbor(id, [&](Vertex w, Rank rw) {
        auto it = cur.find(w);
        const MisStatus sw = it == cur.end() ? MisStatus::undecided : it->second;
        if (sw == MisStatus::in_mis) has_mis_neighbor = true;
        if (rw < r && sw != MisStatus::dominated) all_lower_dominated = false;
      });
      if (has_mis_neighbor) {
        next[id] = MisStatus::dominated;
      } else if (all_lower_dominated) {
        next[id] = MisStatus::in_mis;
      }
    }
    cur.swap(next);
  }
  return cur[center];
}

}  // namespace detail

// Processes the live vertices with ranks in `range` on the one-machine-per-
// vertex model: gather R-hop balls, then simulate R greedy steps per round.
inline void process_prefix_alg3(MpcRuntime& rt, const SignedGraph& g,
                                const VertexOrdering& pi, MisState& state, RankRange range,
                                std::size_t prefix_max_degree, MisReport* report = nullptr) {
  if (rt.config().model != mpc::Model::sublinear_extra) {
    throw PreconditionError("the exponentiation subroutine needs one machine per vertex");
  }
  const std::vector<Vertex> live = detail::live_in_range(pi, state, range);
  if (live.empty()) return;
  detail::SubsetMarker mark(g.vertex_count());
  mark.mark(live);
  auto inside = [&](Vertex w) { return mark.contains(w); };

  std::size_t share = rt.memory_words();
  Vertex tightest = live.front();
  for (Vertex v : live) {
    if (rt.free_words(rt.machine_of(v)) < share) {
      share = rt.free_words(rt.machine_of(v));
      tightest = v;
    }
  }
  const std::size_t R = choose_radius(g.vertex_count(), prefix_max_degree, share,
                                      rt.traffic_cap());
  if (R == 0) {
    throw mpc::BudgetViolation(mpc::BudgetViolation::Kind::memory, rt.machine_of(tightest),
                               rt.round(), 3 + 2 * prefix_max_degree + 1 + prefix_max_degree,
                               share);
  }

  mpc::detail::BallGatherer gather(rt, g, pi, live, inside);
  const std::size_t doubling = gather.gather_radius(R);

  const std::size_t n = g.vertex_count();
  std::vector<detail::BallView> views(n);
  std::vector<std::vector<Vertex>> recipients(n);
  for (Vertex v : live) {
    for (auto [w, d] : gather.knowledge(v).distances(v, R)) {
      views[v].status.emplace(w, MisStatus::undecided);
      if (w != v) recipients[v].push_back(w);
    }
    std::sort(recipients[v].begin(), recipients[v].end());
  }
  std::vector<detail::Alg3State> states(rt.machine_count());
  auto gstates = gather.states();
  for (std::size_t m = 0; m < states.size(); ++m) {
    states[m].members = gather.members(m);
    states[m].store = gstates[m].store;
    states[m].views = &views;
  }

  std::vector<Vertex> newly_in;
  std::size_t undecided = live.size();
  std::size_t supersteps = 0;
  std::vector<std::pair<Vertex, MisStatus>> changes;
  while (undecided > 0) {
    changes.clear();
    rt.run_round(states, [&](std::size_t m, detail::Alg3State&, auto, Outbox& out) {
      for (Vertex v : gather.members(m)) {
        if (!state.live(v)) continue;
        const MisStatus s = detail::simulate_ball(gather.knowledge(v), v, views[v], R);
        if (s == MisStatus::undecided) continue;
        changes.emplace_back(v, s);
        std::unordered_map<std::size_t, std::vector<Vertex>> per_dest;
        for (Vertex w : recipients[v]) per_dest[rt.machine_of(w)].push_back(w);
        std::vector<std::size_t> dests;
        for (auto& [dm, _] : per_dest) dests.push_back(dm);
        std::sort(dests.begin(), dests.end());
        std::vector<Word> payload;
        for (std::size_t dm : dests) {
          const auto& list = per_dest[dm];
          payload.assign({static_cast<Word>(list.size())});
          payload.insert(payload.end(), list.begin(), list.end());
          payload.push_back(v);
          payload.push_back(static_cast<Word>(s));
          out.send(dm, payload);
        }
      }
    });
    rt.local_step(states, [&](std::size_t, detail::Alg3State&,
                              std::span<const MessageView> inbox) {
      for (const auto& msg : inbox) {
        const std::size_t count = msg.payload[0];
        const auto src = static_cast<Vertex>(msg.payload[1 + count]);
        const auto s = static_cast<MisStatus>(msg.payload[2 + count]);
        for (std::size_t k = 0; k < count; ++k) {
          views[static_cast<Vertex>(msg.payload[1 + k])].status[src] = s;
        }
      }
    });
    for (auto [v, s] : changes) {
      state.status[v] = s;
      views[v].status[v] = s;
      --undecided;
      if (s == MisStatus::in_mis) newly_in.push_back(v);
    }
    ++supersteps;
    if (changes.empty()) {
      throw InvariantViolation("compressed greedy simulation made no progress");
    }
  }
  if (report) {
    report->max_radius = std::max(report->max_radius, R);
    report->supersteps += supersteps;
    report->doubling_rounds += doubling;
  }
  // Inside the prefix every vertex already knows its neighbours' statuses;
  // vertices of later ranks still need to hear about the new MIS vertices.
  std::vector<Vertex> dominated_in_prefix;
  for (Vertex v : live) {
    if (state.status[v] == MisStatus::dominated) dominated_in_prefix.push_back(v);
  }
  detail::propagate_decisions(rt, g, state, newly_in, std::move(dominated_in_prefix));
}

// ---------------------------------------------------------------------------
// Prefix loop.

// Max degree among undecided vertices of rank >= from_rank, counting only
// edges between such vertices.
inline std::size_t residual_max_degree(const SignedGraph& g, const VertexOrdering& pi,
                                       const MisState& s, std::size_t from_rank) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!s.live(v) || pi.rank_of(v) < from_rank) continue;
    std::size_t d = 0;
    for (Vertex w : g.neighbors(v)) d += (s.live(w) && pi.rank_of(w) >= from_rank) ? 1 : 0;
    best = std::max(best, d);
  }
  return best;
}

inline MisResult greedy_mis_alg1(MpcRuntime& rt, const SignedGraph& g,
                                 const VertexOrdering& pi, Subroutine sub,
                                 const MisOptions& opt = {}) {
  const std::size_t n = g.vertex_count();
  if (pi.size() != n || rt.vertex_count() != n) {
    throw InvariantViolation("ordering, runtime and graph disagree on the vertex count");
  }
  if (sub == Subroutine::alg3 && rt.config().model != mpc::Model::sublinear_extra) {
    throw PreconditionError("the exponentiation subroutine needs one machine per vertex");
  }
  MisResult res{MisState(n), {}};
  MisReport& rep = res.report;
  rep.algorithm = std::string("alg1+") + subroutine_name(sub);
  rep.n = n;
  rep.delta = rt.config().delta;
  rep.memory_words = rt.memory_words();
  const std::size_t start_round = rt.round();

  // Each vertex keeps its rank, its status, and rank and status of every
  // neighbour for the whole run.
  std::vector<std::size_t> reserved(rt.machine_count(), 0);
  for (Vertex v = 0; v < n; ++v) reserved[rt.machine_of(v)] += 2 + 2 * g.degree(v);
  struct Release {
    MpcRuntime& rt;
    const std::vector<std::size_t>& words;
    ~Release() {
      for (std::size_t m = 0; m < words.size(); ++m) rt.release(m, words[m]);
    }
  };
  for (std::size_t m = 0; m < reserved.size(); ++m) {
    try {
      rt.reserve(m, reserved[m]);
    } catch (...) {
      for (std::size_t k = 0; k < m; ++k) rt.release(k, reserved[k]);
      throw;
    }
  }
  Release release{rt, reserved};

  auto finish = [&] {
    const auto r = rt.report();
    rep.rounds = rt.round() - start_round;
    rep.peak_memory = r.peak_memory;
    rep.peak_traffic = r.peak_traffic;
    rep.mis_size = res.state.mis().size();
  };
  if (n == 0) {
    finish();
    return res;
  }

  mpc::exchange_ranks(rt, g, pi);
  std::vector<Vertex> everyone(n);
  for (Vertex v = 0; v < n; ++v) everyone[v] = v;
  rep.max_degree = detail::tree_max(rt, everyone, [&](Vertex v) { return g.degree(v); });
  rep.planning_max_degree = opt.planning_max_degree.value_or(rep.max_degree);

  if (rep.max_degree <= 1) {
    // Ranks of the (at most one) neighbour are already known: decide locally.
    std::vector<Vertex> in, dom;
    detail::decide_matching_like(g, pi, everyone, [](Vertex) { return true; }, res.state,
                                 in, dom);
    rep.algorithm = "alg1+trivial";
    finish();
    return res;
  }

  const PrefixSchedule schedule =
      PrefixSchedule::build(n, rep.planning_max_degree, opt.prefix_constant);
  detail::SubsetMarker mark(n);
  for (const PrefixPhase& phase : schedule.phases) {
    const std::size_t phase_start = rt.round();
    const RankRange range{phase.offset, phase.offset + phase.size};
    PhaseLog log;
    log.index = phase.index;
    log.offset = phase.offset;
    log.size = phase.size;
    log.residual = phase.residual;
    log.target_degree = rep.planning_max_degree >> std::min<std::size_t>(phase.index + 1, 63);
    const std::vector<Vertex> live = detail::live_in_range(pi, res.state, range);
    if (!live.empty()) {
      mark.mark(live);
      const std::size_t prefix_degree = detail::tree_max(rt, live, [&](Vertex v) {
        std::size_t d = 0;
        for (Vertex w : g.neighbors(v)) d += mark.contains(w) ? 1 : 0;
        return d;
      });
      log.prefix_max_degree = prefix_degree;
      if (prefix_degree <= 1) {
        std::vector<Vertex> in, dom;
        detail::decide_matching_like(g, pi, live,
                                     [&](Vertex w) { return mark.contains(w); }, res.state,
                                     in, dom);
        detail::propagate_decisions(rt, g, res.state, in, std::move(dom));
      } else if (sub == Subroutine::alg2) {
        const ChunkSchedule chunks = ChunkSchedule::build(
            phase.size, prefix_degree, opt.chunk_denominator, opt.chunk_iteration_factor);
        process_prefix_alg2(rt, g, pi, res.state, range, chunks, opt, &rep);
      } else {
        process_prefix_alg3(rt, g, pi, res.state, range, prefix_degree, &rep);
      }
    }
    const std::size_t processed = range.hi;
    log.residual_max_degree = residual_max_degree(g, pi, res.state, processed);
    log.residual_bound = processed >= n ? 0.0
                                        : 10.0 * static_cast<double>(n) *
                                              std::log(static_cast<double>(n)) /
                                              static_cast<double>(processed);
    log.rounds = rt.round() - phase_start;
    rep.phases.push_back(log);
  }
  if (res.state.undecided_count() != 0) {
    throw InvariantViolation("prefix schedule left undecided vertices");
  }
  finish();
  return res;
}

// Convenience: build the runtime from `cfg` and run.
inline MisResult greedy_mis_mpc(const SignedGraph& g, const VertexOrdering& pi,
                                mpc::MpcConfig cfg, Subroutine sub,
                                const MisOptions& opt = {}) {
  cfg.n = g.vertex_count();
  MpcRuntime rt = mpc::init_runtime(cfg, g);
  return greedy_mis_alg1(rt, g, pi, sub, opt);
}

// Sequential greedy on the first t ranks, then the max degree of what is
// left undecided.
inline std::size_t residual_after_prefix(const SignedGraph& g, const VertexOrdering& pi,
                                         std::size_t t) {
  MisState s(g.vertex_count());
  t = std::min(t, g.vertex_count());
  for (std::size_t r = 0; r < t; ++r) {
    const Vertex v = pi.at(static_cast<Rank>(r));
    if (!s.live(v)) continue;
    s.status[v] = MisStatus::in_mis;
    for (Vertex w : g.neighbors(v)) {
      if (s.live(w)) s.status[w] = MisStatus::dominated;
    }
  }
  return residual_max_degree(g, pi, s, t);
}

// One fresh ordering per trial, seeded by derive_seed(seed, trial).
inline std::vector<std::size_t> residual_degree_stats(const SignedGraph& g, std::size_t t,
                                                      std::size_t trials, std::uint64_t seed) {
  std::vector<std::size_t> out(trials);
  for (std::size_t k = 0; k < trials; ++k) {
    const auto pi = VertexOrdering::random(g.vertex_count(), derive_seed(seed, k));
    out[k] = residual_after_prefix(g, pi, t);
  }
  return out;
}

}  // namespace arbocc::mis

#endif  // ARBOCC_GREEDY_MIS_HPP_

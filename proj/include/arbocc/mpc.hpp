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

// Deterministic simulator of the strongly sublinear MPC regime.
//
// Machines hold word-counted state and talk only through a ledgered message
// channel. A round is one synchronous superstep: every machine runs a step
// on its state and the messages delivered to it, emits new messages, and the
// ledger checks that no machine holds more than S words or sends or receives
// more than c*S words. Local computation after delivery (local_step) is free
// and does not advance the round counter.

#ifndef ARBOCC_MPC_HPP_
#define ARBOCC_MPC_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arbocc/common.hpp"
#include "arbocc/graph.hpp"
#include "arbocc/ordering.hpp"

namespace arbocc::mpc {

using Word = std::uint64_t;

enum class Model {
  sublinear,        // M >= ceil(N/S) machines, vertices placed in hashed blocks
  sublinear_extra,  // M >= n machines, one per vertex
};

inline const char* model_name(Model m) {
  return m == Model::sublinear ? "sublinear" : "sublinear_extra";
}

struct MpcConfig {
  std::size_t n = 0;
  // Memory exponent: S = ceil(n^delta * polylog_factor).
  double delta = 0.5;
  // 0 selects the default 4 * ceil(log2 n).
  double polylog_factor = 0.0;
  Model model = Model::sublinear;
  // 0 derives the count from the model (see init_runtime).
  std::size_t machines = 0;
  // Model sublinear: M = ceil(machine_slack * N / S). Input plus the
  // persistent per-vertex state is about 2N words, so at 8 a machine starts
  // near S/4 plus one vertex.
  double machine_slack = 8.0;
  // Per-round send and receive cap is traffic_factor * S.
  double traffic_factor = 4.0;
  // Standing assumption: max positive degree <= degree_factor * S.
  double degree_factor = 1.0;
  std::uint64_t hash_seed = 0x5eed;

  static double default_polylog(std::size_t n) {
    return 4.0 * std::max(1.0, std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(n, 2)))));
  }

  double effective_polylog() const {
    return polylog_factor > 0.0 ? polylog_factor : default_polylog(n);
  }

  std::size_t memory_words() const {
    const double s = std::pow(static_cast<double>(n), delta) * effective_polylog();
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(s - 1e-9)));
  }

  std::size_t traffic_cap() const {
    return static_cast<std::size_t>(std::floor(traffic_factor * memory_words()));
  }
};

// Words the input occupies: per vertex its id, its degree, and its
// adjacency list.
inline std::size_t input_words(const SignedGraph& g) {
  return 2 * g.vertex_count() + 2 * g.positive_edge_count();
}

inline std::size_t vertex_input_words(const SignedGraph& g, Vertex v) {
  return 2 + g.degree(v);
}

class BudgetViolation : public Error {
 public:
  enum class Kind { memory, send, receive };

  BudgetViolation(Kind kind, std::size_t machine, std::size_t round,
                  std::size_t words, std::size_t limit)
      : Error(describe(kind, machine, round, words, limit)),
        kind_(kind), machine_(machine), round_(round), words_(words), limit_(limit) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t machine() const noexcept { return machine_; }
  std::size_t round() const noexcept { return round_; }
  std::size_t words() const noexcept { return words_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  static std::string describe(Kind kind, std::size_t machine, std::size_t round,
                              std::size_t words, std::size_t limit) {
    const char* what = kind == Kind::memory ? "memory"
                       : kind == Kind::send ? "send traffic"
                                            : "receive traffic";
    return std::string(what) + " budget exceeded on machine " +
           std::to_string(machine) + " in round " + std::to_string(round) +
           ": " + std::to_string(words) + " words > limit " + std::to_string(limit);
  }

  Kind kind_;
  std::size_t machine_, round_, words_, limit_;
};

struct MessageView {
  std::size_t from;
  std::span<const Word> payload;
};

// Messages emitted by one machine during one round.
class Outbox {
 public:
  void send(std::size_t to, std::span<const Word> payload) {
    envelopes_.push_back({to, data_.size(), payload.size()});
    data_.insert(data_.end(), payload.begin(), payload.end());
  }
  void send(std::size_t to, std::initializer_list<Word> payload) {
    send(to, std::span<const Word>(payload.begin(), payload.size()));
  }

  // One header word per message plus the payload.
  std::size_t words() const noexcept { return data_.size() + envelopes_.size(); }
  bool empty() const noexcept { return envelopes_.empty(); }

 private:
  friend class MpcRuntime;
  struct Envelope {
    std::size_t to, begin, length;
  };
  void clear() {
    envelopes_.clear();
    data_.clear();
  }
  std::vector<Envelope> envelopes_;
  std::vector<Word> data_;
};

struct RoundRecord {
  std::size_t round = 0;
  std::size_t max_mem = 0;
  std::size_t max_traffic = 0;
  std::size_t active_machines = 0;
};

struct RuntimeReport {
  std::size_t rounds = 0;
  std::size_t peak_memory = 0;
  std::size_t peak_traffic = 0;
  std::size_t machines = 0;
  std::size_t memory_words = 0;
  std::uint64_t hash_seed = 0;
};

// Machine state types passed to run_round/local_step expose words().
struct NoState {
  std::size_t words() const noexcept { return 0; }
};

class MpcRuntime {
 public:
  MpcRuntime(MpcConfig cfg, std::vector<std::size_t> machine_of,
             std::size_t machines, std::vector<std::size_t> base_words)
      : cfg_(cfg), S_(cfg.memory_words()), cap_(cfg.traffic_cap()),
        machine_of_(std::move(machine_of)), base_(std::move(base_words)),
        reserved_(machines, 0), hosted_(machines), inbox_(machines),
        outboxes_(machines), delivered_(machines) {
    for (Vertex v = 0; v < machine_of_.size(); ++v) hosted_[machine_of_[v]].push_back(v);
    for (std::size_t m = 0; m < machines; ++m) {
      peak_memory_ = std::max(peak_memory_, base_[m]);
      if (base_[m] > S_) {
        throw BudgetViolation(BudgetViolation::Kind::memory, m, 0, base_[m], S_);
      }
    }
  }

  const MpcConfig& config() const noexcept { return cfg_; }
  std::size_t memory_words() const noexcept { return S_; }
  std::size_t traffic_cap() const noexcept { return cap_; }
  std::size_t machine_count() const noexcept { return hosted_.size(); }
  std::size_t vertex_count() const noexcept { return machine_of_.size(); }
  std::size_t machine_of(Vertex v) const { return machine_of_[v]; }
  std::span<const Vertex> hosted(std::size_t m) const { return hosted_[m]; }
  std::size_t round() const noexcept { return round_; }

  // Words machine m may still use for per-round algorithm state.
  std::size_t free_words(std::size_t m) const {
    const std::size_t used = base_[m] + reserved_[m];
    return used >= S_ ? 0 : S_ - used;
  }

  // Persistent per-machine algorithm state (e.g. neighbour ranks) that is
  // charged against the budget by every subsequent round.
  void reserve(std::size_t m, std::size_t words) {
    reserved_[m] += words;
    check_memory(m, 0);
  }
  void release(std::size_t m, std::size_t words) {
    reserved_[m] -= std::min(reserved_[m], words);
  }

  // One synchronous round. `step(m, state, inbox, outbox)` sees the messages
  // delivered at the end of the previous round, ordered by (sender, emission
  // index).
  template <class State, class Step>
  void run_round(std::vector<State>& states, Step&& step) {
    require_states(states.size());
    const std::size_t this_round = round_ + 1;
    std::size_t max_mem = 0, max_traffic = 0, active = 0;
    std::vector<std::size_t> received(machine_count(), 0);
    for (std::size_t m = 0; m < machine_count(); ++m) {
      Outbox& out = outboxes_[m];
      out.clear();
      step(m, states[m], std::span<const MessageView>(inbox_[m]), out);
      const std::size_t mem = check_memory(m, states[m].words(), this_round);
      max_mem = std::max(max_mem, mem);
      const std::size_t sent = out.words();
      if (sent > cap_) {
        throw BudgetViolation(BudgetViolation::Kind::send, m, this_round, sent, cap_);
      }
      max_traffic = std::max(max_traffic, sent);
      if (sent > 0 || !inbox_[m].empty()) ++active;
      for (const auto& env : out.envelopes_) {
        if (env.to >= machine_count()) {
          throw InvariantViolation("message addressed to machine " +
                                   std::to_string(env.to) + " which does not exist");
        }
        received[env.to] += env.length + 1;
      }
    }
    for (std::size_t m = 0; m < machine_count(); ++m) {
      if (received[m] > cap_) {
        throw BudgetViolation(BudgetViolation::Kind::receive, m, this_round,
                              received[m], cap_);
      }
      max_traffic = std::max(max_traffic, received[m]);
    }
    // Deliver. The outboxes stay alive as backing storage for the views
    // until the next round overwrites them, so swap them out first.
    std::swap(outboxes_, delivered_);
    for (auto& box : inbox_) box.clear();
    for (std::size_t m = 0; m < machine_count(); ++m) {
      const Outbox& out = delivered_[m];
      for (const auto& env : out.envelopes_) {
        inbox_[env.to].push_back(
            {m, std::span<const Word>(out.data_.data() + env.begin, env.length)});
      }
    }
    round_ = this_round;
    peak_traffic_ = std::max(peak_traffic_, max_traffic);
    trace_.push_back({round_, max_mem, max_traffic, active});
  }

  // Free local computation on the messages delivered by the last round.
  // Consumes the inboxes; does not advance the round counter.
  template <class State, class Fn>
  void local_step(std::vector<State>& states, Fn&& fn) {
    require_states(states.size());
    for (std::size_t m = 0; m < machine_count(); ++m) {
      fn(m, states[m], std::span<const MessageView>(inbox_[m]));
      check_memory(m, states[m].words(), round_);
    }
    for (auto& box : inbox_) box.clear();
  }

  RuntimeReport report() const {
    return {round_, peak_memory_, peak_traffic_, machine_count(), S_, cfg_.hash_seed};
  }
  const std::vector<RoundRecord>& trace() const noexcept { return trace_; }

 private:
  void require_states(std::size_t count) const {
    if (count != machine_count()) {
      throw InvariantViolation("expected one state per machine (" +
                               std::to_string(machine_count()) + "), got " +
                               std::to_string(count));
    }
  }

  std::size_t check_memory(std::size_t m, std::size_t state_words) {
    return check_memory(m, state_words, round_);
  }
  std::size_t check_memory(std::size_t m, std::size_t state_words, std::size_t at_round) {
    const std::size_t mem = base_[m] + reserved_[m] + state_words;
    if (mem > S_) {
      throw BudgetViolation(BudgetViolation::Kind::memory, m, at_round, mem, S_);
    }
    peak_memory_ = std::max(peak_memory_, mem);
    return mem;
  }

  MpcConfig cfg_;
  std::size_t S_;
  std::size_t cap_;
  std::vector<std::size_t> machine_of_;
  std::vector<std::size_t> base_;
  std::vector<std::size_t> reserved_;
  std::vector<std::vector<Vertex>> hosted_;
  std::vector<std::vector<MessageView>> inbox_;
  std::vector<Outbox> outboxes_;
  std::vector<Outbox> delivered_;
  std::size_t round_ = 0;
  std::size_t peak_memory_ = 0;
  std::size_t peak_traffic_ = 0;
  std::vector<RoundRecord> trace_;
};

// Seeded multiply-shift hash of a vertex id. Ids are scrambled by a fixed
// bijection first: consecutive ids form an arithmetic progression that plain
// multiply-shift maps into a few buckets for some seeds.
inline std::uint64_t vertex_hash(Vertex v, std::uint64_t seed) {
  const std::uint64_t a = mix64(seed) | 1u;
  const std::uint64_t b = mix64(seed ^ 0xabcdef);
  const std::uint64_t key = mix64(static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull);
  return a * key + b;
}

// Hashed blocks: vertices sorted by their hash are cut into `machines`
// contiguous runs of about equal input words, so a machine holds at most
// N / machines words plus one vertex.
inline std::vector<std::size_t> hashed_blocks(const SignedGraph& g, std::uint64_t seed,
                                              std::size_t machines) {
  const std::size_t n = g.vertex_count();
  std::vector<std::pair<std::uint64_t, Vertex>> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = {vertex_hash(v, seed), v};
  std::sort(order.begin(), order.end());
  const std::size_t total = std::max<std::size_t>(input_words(g), 1);
  std::vector<std::size_t> machine_of(n);
  std::size_t prefix = 0;
  for (auto [h, v] : order) {
    const auto block = static_cast<std::size_t>(
        (static_cast<unsigned __int128>(prefix) * machines) / total);
    machine_of[v] = std::min(block, machines - 1);
    prefix += vertex_input_words(g, v);
  }
  return machine_of;
}

inline MpcRuntime init_runtime(MpcConfig cfg, const SignedGraph& g) {
  if (cfg.n == 0) cfg.n = g.vertex_count();
  if (g.vertex_count() > cfg.n) {
    throw PreconditionError("graph has more vertices than the configured n");
  }
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw PreconditionError("memory exponent delta must lie in (0, 1)");
  }
  const std::size_t S = cfg.memory_words();
  const std::size_t max_deg = degree_profile(g).max_degree;
  if (static_cast<double>(max_deg) > cfg.degree_factor * static_cast<double>(S)) {
    throw PreconditionError(
        "maximum positive degree " + std::to_string(max_deg) +
        " exceeds " + std::to_string(cfg.degree_factor) + " * S = " +
        std::to_string(cfg.degree_factor * S) +
        " (the simulator assumes max degree in O(S))");
  }
  const std::size_t n = g.vertex_count();
  const std::size_t N = input_words(g);
  std::size_t M = 0;
  std::vector<std::size_t> machine_of(n);
  if (cfg.model == Model::sublinear_extra) {
    M = std::max(cfg.machines, std::max<std::size_t>(n, 1));
    for (Vertex v = 0; v < n; ++v) machine_of[v] = v;
  } else {
    const std::size_t minimum = std::max<std::size_t>(1, (N + S - 1) / S);
    const auto slacked = static_cast<std::size_t>(
        std::ceil(cfg.machine_slack * static_cast<double>(N) / static_cast<double>(S)));
    M = std::max({cfg.machines, minimum, slacked, std::size_t{1}});
    machine_of = hashed_blocks(g, cfg.hash_seed, M);
  }
  cfg.machines = M;
  std::vector<std::size_t> base(M, 0);
  for (Vertex v = 0; v < n; ++v) base[machine_of[v]] += vertex_input_words(g, v);
  return MpcRuntime(cfg, std::move(machine_of), M, std::move(base));
}

inline RuntimeReport report(const MpcRuntime& rt) { return rt.report(); }

// ---------------------------------------------------------------------------
// Aggregation.

enum class Aggregate { sum, min, max };

inline Word combine(Aggregate f, Word a, Word b) {
  switch (f) {
    case Aggregate::sum: return a + b;
    case Aggregate::min: return std::min(a, b);
    case Aggregate::max: return std::max(a, b);
  }
  return a;
}

namespace detail {

struct VertexValues {
  std::vector<std::pair<Vertex, Word>> entries;
  std::size_t words() const noexcept { return 2 * entries.size(); }
};

}  // namespace detail

// For every vertex v, f over the values of its neighbours in g (absent
// values do not contribute; nullopt when nothing contributed). Senders
// pre-combine per destination vertex, so each destination receives at most
// one partial per machine, i.e. the depth-one case of a broadcast tree under
// the max-degree-in-O(S) assumption. Consumes one round.
inline std::vector<std::optional<Word>> broadcast_aggregate(
    MpcRuntime& rt, const SignedGraph& g, Aggregate f,
    std::span<const std::optional<Word>> values) {
  if (values.size() != g.vertex_count()) {
    throw InvariantViolation("broadcast_aggregate needs one value slot per vertex");
  }
  const std::size_t M = rt.machine_count();
  std::vector<detail::VertexValues> states(M);
  rt.run_round(states, [&](std::size_t m, detail::VertexValues&, auto,
                           Outbox& out) {
    std::unordered_map<std::size_t, std::unordered_map<Vertex, Word>> partial;
    for (Vertex v : rt.hosted(m)) {
      if (!values[v]) continue;
      for (Vertex u : g.neighbors(v)) {
        auto& slot = partial[rt.machine_of(u)];
        auto [it, fresh] = slot.try_emplace(u, *values[v]);
        if (!fresh) it->second = combine(f, it->second, *values[v]);
      }
    }
    std::vector<std::size_t> targets;
    targets.reserve(partial.size());
    for (auto& [to, _] : partial) targets.push_back(to);
    std::sort(targets.begin(), targets.end());
    std::vector<Word> payload;
    for (std::size_t to : targets) {
      std::vector<std::pair<Vertex, Word>> items(partial[to].begin(), partial[to].end());
      std::sort(items.begin(), items.end());
      payload.clear();
      for (auto [u, val] : items) {
        payload.push_back(u);
        payload.push_back(val);
      }
      out.send(to, payload);
    }
  });
  std::vector<std::optional<Word>> result(g.vertex_count());
  rt.local_step(states, [&](std::size_t, detail::VertexValues& st,
                            std::span<const MessageView> inbox) {
    for (const auto& msg : inbox) {
      for (std::size_t i = 0; i + 1 < msg.payload.size(); i += 2) {
        const auto u = static_cast<Vertex>(msg.payload[i]);
        const Word val = msg.payload[i + 1];
        result[u] = result[u] ? combine(f, *result[u], val) : val;
      }
    }
    st.entries.clear();
  });
  return result;
}

// Combines one value per machine over an S-ary tree of machines and
// broadcasts the result back down: 2 * depth rounds, depth = ceil(log_S M).
inline Word all_reduce(MpcRuntime& rt, Aggregate f, std::span<const Word> per_machine) {
  const std::size_t M = rt.machine_count();
  if (per_machine.size() != M) {
    throw InvariantViolation("all_reduce needs one value per machine");
  }
  const std::size_t arity = std::max<std::size_t>(2, rt.memory_words());
  auto level = [&](std::size_t m) {
    std::size_t d = 0;
    while (m != 0) {
      m = (m - 1) / arity;
      ++d;
    }
    return d;
  };
  const std::size_t depth = M <= 1 ? 0 : level(M - 1);
  struct Acc {
    Word value;
    std::size_t words() const noexcept { return 1; }
  };
  std::vector<Acc> acc(M);
  for (std::size_t m = 0; m < M; ++m) acc[m].value = per_machine[m];
  auto absorb = [&](std::size_t, Acc& a, std::span<const MessageView> inbox, bool replace) {
    for (const auto& msg : inbox) {
      a.value = replace ? msg.payload[0] : combine(f, a.value, msg.payload[0]);
    }
  };
  for (std::size_t k = depth; k >= 1; --k) {
    rt.run_round(acc, [&](std::size_t m, Acc& a, std::span<const MessageView> inbox,
                          Outbox& out) {
      absorb(m, a, inbox, false);
      if (level(m) == k) out.send((m - 1) / arity, {a.value});
    });
  }
  rt.local_step(acc, [&](std::size_t m, Acc& a, std::span<const MessageView> inbox) {
    absorb(m, a, inbox, false);
  });
  for (std::size_t k = 1; k <= depth; ++k) {
    rt.run_round(acc, [&](std::size_t m, Acc& a, std::span<const MessageView> inbox,
                          Outbox& out) {
      absorb(m, a, inbox, true);
      if (level(m) == k - 1) {
        for (std::size_t c = m * arity + 1; c <= m * arity + arity && c < M; ++c) {
          out.send(c, {a.value});
        }
      }
    });
  }
  rt.local_step(acc, [&](std::size_t m, Acc& a, std::span<const MessageView> inbox) {
    absorb(m, a, inbox, true);
  });
  return acc[0].value;
}

// One round in which every vertex tells its neighbours' machines its rank.
// Afterwards each vertex knows the ranks of its neighbours.
inline void exchange_ranks(MpcRuntime& rt, const SignedGraph& g, const VertexOrdering& pi) {
  std::vector<NoState> states(rt.machine_count());
  rt.run_round(states, [&](std::size_t m, NoState&, auto, Outbox& out) {
    std::unordered_map<std::size_t, std::vector<Word>> per_dest;
    for (Vertex v : rt.hosted(m)) {
      std::size_t last = std::numeric_limits<std::size_t>::max();
      std::vector<std::size_t> dests;
      for (Vertex u : g.neighbors(v)) dests.push_back(rt.machine_of(u));
      std::sort(dests.begin(), dests.end());
      for (std::size_t d : dests) {
        if (d == last) continue;
        last = d;
        per_dest[d].push_back(v);
        per_dest[d].push_back(pi.rank_of(v));
      }
    }
    std::vector<std::size_t> keys;
    for (auto& [d, _] : per_dest) keys.push_back(d);
    std::sort(keys.begin(), keys.end());
    for (std::size_t d : keys) out.send(d, per_dest[d]);
  });
  rt.local_step(states, [](std::size_t, NoState&, std::span<const MessageView>) {});
}

// ---------------------------------------------------------------------------
// Neighbourhood gathering by graph exponentiation.

namespace detail {

// What one vertex knows about the graph: a set of vertex records
// [id, rank, degree, (neighbour, neighbour rank) * degree], stored in their
// wire encoding so the stored size is exactly the word count.
class Knowledge {
 public:
  std::size_t words() const noexcept { return data_.size(); }
  std::size_t record_count() const noexcept { return offsets_.size(); }
  bool has_record(Vertex v) const { return offsets_.contains(v); }
  std::span<const Word> encoded() const noexcept { return data_; }

  void clear() {
    data_.clear();
    offsets_.clear();
  }

  void add_record(Vertex id, Rank rank, std::span<const std::pair<Vertex, Rank>> nbrs) {
    if (offsets_.contains(id)) return;
    offsets_.emplace(id, data_.size());
    data_.push_back(id);
    data_.push_back(rank);
    data_.push_back(nbrs.size());
    for (auto [w, r] : nbrs) {
      data_.push_back(w);
      data_.push_back(r);
    }
  }

  // Merges every record in `encoded` that is not known yet.
  void merge(std::span<const Word> encoded) {
    std::size_t i = 0;
    while (i < encoded.size()) {
      const auto id = static_cast<Vertex>(encoded[i]);
      const std::size_t len = 3 + 2 * encoded[i + 2];
      if (!offsets_.contains(id)) {
        offsets_.emplace(id, data_.size());
        data_.insert(data_.end(), encoded.begin() + i, encoded.begin() + i + len);
      }
      i += len;
    }
  }

  Rank rank_of_record(Vertex v) const { return static_cast<Rank>(data_[offsets_.at(v) + 1]); }

  template <class Fn>  // fn(neighbour, neighbour_rank)
  void for_each_neighbor(Vertex v, Fn&& fn) const {
    const std::size_t at = offsets_.at(v);
    const std::size_t deg = data_[at + 2];
    for (std::size_t k = 0; k < deg; ++k) {
      fn(static_cast<Vertex>(data_[at + 3 + 2 * k]),
         static_cast<Rank>(data_[at + 4 + 2 * k]));
    }
  }

  template <class Fn>  // fn(id, rank)
  void for_each_record(Fn&& fn) const {
    std::size_t i = 0;
    while (i < data_.size()) {
      fn(static_cast<Vertex>(data_[i]), static_cast<Rank>(data_[i + 1]));
      i += 3 + 2 * data_[i + 2];
    }
  }

  // True when every referenced neighbour has a record, i.e. the whole
  // connected component is known.
  bool closed() const {
    std::size_t i = 0;
    while (i < data_.size()) {
      const std::size_t deg = data_[i + 2];
      for (std::size_t k = 0; k < deg; ++k) {
        if (!offsets_.contains(static_cast<Vertex>(data_[i + 3 + 2 * k]))) return false;
      }
      i += 3 + 2 * deg;
    }
    return true;
  }

  // Hop distances from `center` over the known records, up to `limit`.
  // Exact for every vertex within `limit` as long as records are known for
  // all vertices closer than `limit`.
  std::vector<std::pair<Vertex, std::size_t>> distances(Vertex center,
                                                        std::size_t limit) const {
    std::vector<std::pair<Vertex, std::size_t>> out;
    std::unordered_map<Vertex, std::size_t> dist;
    std::queue<Vertex> q;
    dist.emplace(center, 0);
    q.push(center);
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      const std::size_t d = dist[v];
      out.emplace_back(v, d);
      if (d == limit || !offsets_.contains(v)) continue;
      for_each_neighbor(v, [&](Vertex w, Rank) {
        if (dist.try_emplace(w, d + 1).second) q.push(w);
      });
    }
    return out;
  }

 private:
  std::vector<Word> data_;
  std::unordered_map<Vertex, std::size_t> offsets_;
};

// Machine state for gathering: knowledge of every hosted participant. The
// store is indexed by vertex; a machine only touches its own participants.
struct GatherState {
  std::span<const Vertex> members;
  const std::vector<Knowledge>* store = nullptr;
  std::size_t extra_words = 0;
  std::size_t words() const {
    std::size_t w = extra_words;
    for (Vertex v : members) w += (*store)[v].words();
    return w;
  }
};

// Gathers neighbourhoods of a set of participating vertices inside the
// subgraph they induce (adjacency via `in_subgraph`). After init() each
// participant holds its own record (radius 1: itself, its neighbours and
// their ranks); every doubling round pushes each participant's current
// knowledge to the vertices within the step radius.
class BallGatherer {
 public:
  template <class InSubgraph>
  BallGatherer(MpcRuntime& rt, const SignedGraph& g, const VertexOrdering& pi,
               std::span<const Vertex> participants, InSubgraph&& in_subgraph)
      : rt_(rt), store_(g.vertex_count()), by_machine_(rt.machine_count()) {
    std::vector<std::pair<Vertex, Rank>> nbrs;
    for (Vertex v : participants) {
      by_machine_[rt.machine_of(v)].push_back(v);
      nbrs.clear();
      for (Vertex w : g.neighbors(v)) {
        if (in_subgraph(w)) nbrs.emplace_back(w, pi.rank_of(w));
      }
      store_[v].add_record(v, pi.rank_of(v), nbrs);
    }
    participants_.assign(participants.begin(), participants.end());
    for (auto& list : by_machine_) std::sort(list.begin(), list.end());
  }

  std::vector<GatherState> states(std::size_t extra = 0) const {
    std::vector<GatherState> s(rt_.machine_count());
    for (std::size_t m = 0; m < s.size(); ++m) {
      s[m].members = by_machine_[m];
      s[m].store = &store_;
      s[m].extra_words = by_machine_[m].empty() ? 0 : extra;
    }
    return s;
  }

  // One doubling round: every participant u sends its knowledge to every
  // participant within `step` hops. If u knows records for everything
  // closer than r, receivers end up knowing everything closer than r + step.
  // Participants for which `frozen` returns true neither send nor merge.
  template <class Frozen>
  void doubling_round(std::size_t step, Frozen&& frozen,
                      std::size_t merge_cap_records = std::numeric_limits<std::size_t>::max(),
                      std::vector<bool>* overflowed = nullptr) {
    auto st = states();
    rt_.run_round(st, [&](std::size_t m, GatherState&, auto, Outbox& out) {
      for (Vertex u : by_machine_[m]) {
        if (frozen(u)) continue;
        std::unordered_map<std::size_t, std::vector<Vertex>> recipients;
        for (auto [w, d] : store_[u].distances(u, step)) {
          if (w == u || d == 0) continue;
          recipients[rt_.machine_of(w)].push_back(w);
        }
        std::vector<std::size_t> dests;
        for (auto& [dm, _] : recipients) dests.push_back(dm);
        std::sort(dests.begin(), dests.end());
        std::vector<Word> payload;
        const auto enc = store_[u].encoded();
        for (std::size_t dm : dests) {
          auto& list = recipients[dm];
          std::sort(list.begin(), list.end());
          payload.clear();
          payload.push_back(list.size());
          payload.insert(payload.end(), list.begin(), list.end());
          payload.insert(payload.end(), enc.begin(), enc.end());
          out.send(dm, payload);
        }
      }
    });
    rt_.local_step(st, [&](std::size_t, GatherState&, std::span<const MessageView> inbox) {
      for (const auto& msg : inbox) {
        const std::size_t count = msg.payload[0];
        const auto body = msg.payload.subspan(1 + count);
        for (std::size_t k = 0; k < count; ++k) {
          const auto w = static_cast<Vertex>(msg.payload[1 + k]);
          if (frozen(w)) continue;
          Knowledge& kw = store_[w];
          kw.merge(body);
          if (kw.record_count() > merge_cap_records && overflowed) {
            (*overflowed)[w] = true;
            kw.clear();
          }
        }
      }
    });
  }

  // Brings every participant to knowledge radius `radius` (records of all
  // vertices closer than `radius`) in ceil(log2 radius) rounds.
  std::size_t gather_radius(std::size_t radius) {
    std::size_t r = 1, rounds = 0;
    while (r < radius) {
      const std::size_t step = std::min(r, radius - r);
      doubling_round(step, [](Vertex) { return false; });
      r += step;
      ++rounds;
    }
    radius_ = std::max<std::size_t>(radius, 1);
    return rounds;
  }

  // Doubles until every participant knows its whole component, or its
  // knowledge would exceed `cap_records` records (flagged in `overflowed`).
  std::size_t gather_components(std::size_t cap_records, std::vector<bool>& overflowed) {
    std::size_t r = 1, rounds = 0;
    auto pending = [&] {
      for (Vertex v : participants_) {
        if (!overflowed[v] && !store_[v].closed()) return true;
      }
      return false;
    };
    std::vector<std::size_t> before(participants_.size());
    while (pending()) {
      for (std::size_t i = 0; i < participants_.size(); ++i) {
        before[i] = store_[participants_[i]].record_count();
      }
      doubling_round(r, [&](Vertex v) { return overflowed[v]; }, cap_records, &overflowed);
      r *= 2;
      ++rounds;
      // Knowledge stops growing only when it depends on an overflowed
      // vertex, i.e. the component is too large as well.
      for (std::size_t i = 0; i < participants_.size(); ++i) {
        const Vertex v = participants_[i];
        if (!overflowed[v] && !store_[v].closed() && store_[v].record_count() == before[i]) {
          overflowed[v] = true;
          store_[v].clear();
        }
      }
    }
    return rounds;
  }

  const Knowledge& knowledge(Vertex v) const { return store_[v]; }
  std::span<const Vertex> participants() const noexcept { return participants_; }
  std::span<const Vertex> members(std::size_t m) const { return by_machine_[m]; }
  std::size_t radius() const noexcept { return radius_; }

 private:
  MpcRuntime& rt_;
  std::vector<Knowledge> store_;
  std::vector<std::vector<Vertex>> by_machine_;
  std::vector<Vertex> participants_;
  std::size_t radius_ = 1;
};

}  // namespace detail

// The r-hop neighbourhood of `center` as gathered by exponentiation:
// every vertex within `radius` hops with its rank, and every edge with an
// endpoint closer than `radius` (edges between two vertices at distance
// exactly `radius` are not visible at that radius).
struct NeighborhoodBall {
  Vertex center = 0;
  std::size_t radius = 0;
  std::vector<std::pair<Vertex, Rank>> vertices;  // sorted by id
  std::vector<Edge> edges;                        // sorted

  bool operator==(const NeighborhoodBall&) const = default;
};

struct ExponentiationResult {
  std::vector<NeighborhoodBall> balls;
  std::size_t doubling_rounds = 0;
};

// Every vertex learns its `target_radius`-hop ball: one round to exchange
// ranks, then ceil(log2 target_radius) doubling rounds.
inline ExponentiationResult graph_exponentiate(MpcRuntime& rt, const SignedGraph& g,
                                               const VertexOrdering& pi,
                                               std::size_t target_radius) {
  exchange_ranks(rt, g, pi);
  std::vector<Vertex> all(g.vertex_count());
  for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
  detail::BallGatherer gather(rt, g, pi, all, [](Vertex) { return true; });
  ExponentiationResult res;
  if (target_radius >= 2) res.doubling_rounds = gather.gather_radius(target_radius);
  res.balls.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    NeighborhoodBall& b = res.balls[v];
    b.center = v;
    b.radius = target_radius;
    const auto& k = gather.knowledge(v);
    for (auto [w, d] : k.distances(v, target_radius)) {
      b.vertices.emplace_back(w, pi.rank_of(w));
      if (d < target_radius) {
        k.for_each_neighbor(w, [&](Vertex x, Rank) { b.edges.emplace_back(w, x); });
      }
    }
    std::sort(b.vertices.begin(), b.vertices.end());
    std::sort(b.edges.begin(), b.edges.end());
    b.edges.erase(std::unique(b.edges.begin(), b.edges.end()), b.edges.end());
  }
  return res;
}

}  // namespace arbocc::mpc

#endif  // ARBOCC_MPC_HPP_

/*
 * Copyright 2026 The nepart Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
 * implied. See the License for the specific language governing
 * permissions and limitations under the License.
 */

#include "nepart/engine.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>

namespace nepart {

using runtime::Phase;

std::optional<VertexId> ForcedScript::pick(std::uint32_t iteration,
                                           PartitionId p) const {
  if (iteration >= picks.size()) return std::nullopt;
  for (const auto& [part, vertex] : picks[iteration]) {
    if (part == p) return vertex;
  }
  return std::nullopt;
}

bool ForcedScript::one_hop_allowed(std::uint32_t iteration, const Edge& e,
                                   PartitionId p) const {
  if (one_hop_claims.empty()) return true;
  auto it = one_hop_claims.find(e);
  return it != one_hop_claims.end() && it->second.first == p &&
         it->second.second == iteration;
}

namespace {

constexpr Phase kPhases[] = {Phase::Select,  Phase::OneHop, Phase::TagSync,
                             Phase::TwoHop,  Phase::Report, Phase::Update,
                             Phase::Gather,  Phase::Check};

void parallel_chunks(std::size_t items, std::uint32_t threads,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
  if (threads <= 1 || items < 2 * threads) {
    fn(0, items);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (items + threads - 1) / threads;
  for (std::uint32_t t = 0; t < threads; ++t) {
    std::size_t begin = std::min(items, std::size_t(t) * chunk);
    std::size_t end = std::min(items, begin + chunk);
    if (begin == end) break;
    pool.emplace_back(fn, begin, end);
  }
  for (auto& th : pool) th.join();
}

class Engine {
 public:
  Engine(const Graph& g, const EngineConfig& cfg)
      : graph_(g),
        cfg_(cfg),
        grid_(cfg.num_partitions, cfg.seed),
        router_(cfg.num_partitions, cfg.trace) {
    if (cfg_.num_partitions < 1) {
      throw ConfigError("engine: need at least one partition");
    }
    if (cfg_.alpha < 1.0) throw ConfigError("engine: alpha must be >= 1");
    if (cfg_.lambda <= 0.0 || cfg_.lambda > 1.0) {
      throw ConfigError("engine: lambda must lie in (0, 1]");
    }
    if (g.edge_count() == 0) throw ConfigError("engine: graph has no edges");

    const std::uint32_t p_count = cfg_.num_partitions;
    auto shard_edges = place_edges_2d(g, grid_);
    shards_.reserve(p_count);
    for (std::uint32_t s = 0; s < p_count; ++s) {
      shards_.emplace_back(
          s, SubGraph::build(std::move(shard_edges[s]), g.vertex_count()),
          p_count, grid_);
    }
    const double cap =
        cfg_.alpha * double(g.edge_count()) / double(p_count);
    procs_.reserve(p_count);
    for (std::uint32_t p = 0; p < p_count; ++p) {
      procs_.emplace_back(p, cap, cfg_.lambda, cfg_.seed);
    }
    active_.assign(p_count, 1);
    picked_.assign(p_count, 0);
    gathered_.assign(p_count, 0);
    last_batch_.assign(p_count, 0);
    global_estimates_.assign(p_count, 0.0);
    edge_cap_ = cap;
    ep_out_.resize(p_count);
    bp_new_.resize(p_count);
    intra_workers_ = cfg_.workers > p_count && !cfg_.deterministic
                         ? (cfg_.workers + p_count - 1) / p_count
                         : 1;
  }

  EngineResult run() {
    if (cfg_.deterministic) {
      run_deterministic();
    } else {
      run_parallel();
    }
    return finish();
  }

 private:
  // --- per-machine phase steps ---------------------------------------------

  void step(std::uint32_t m, Phase phase) {
    switch (phase) {
      case Phase::Select: step_select(m); break;
      case Phase::OneHop: step_one_hop(m); break;
      case Phase::TagSync: step_tag_sync(m); break;
      case Phase::TwoHop: step_two_hop(m); break;
      case Phase::Report: step_report(m); break;
      case Phase::Update: step_update(m); break;
      case Phase::Gather: step_gather(m); break;
      case Phase::Check: step_check(m); break;
    }
  }

  void step_select(std::uint32_t p) {
    global_estimates_[p] = double(procs_[p].edge_count());
    picked_[p] = 0;
    if (!active_[p]) return;
    ExpansionProcess& proc = procs_[p];
    auto sel = proc.select_from_boundary();
    std::vector<VertexId> picks = std::move(sel.picks);
    double projected = sel.projected;
    if (picks.empty()) {
      // Empty boundary, or a minimum that does not fit the remaining
      // capacity (it stays put; others will shrink it from their side).
      if (auto v = fallback_pick(p)) {
        picks.push_back(*v);
        projected += double(graph_.degree(*v));
      }
    }
    if (picks.empty()) return;  // nothing affordable: idle this iteration
    picked_[p] = 1;
    global_estimates_[p] = double(proc.edge_count()) + projected;
    // Group the picks per allocator; each shard of a pick's replica set
    // receives it exactly once.
    std::vector<std::vector<VertexId>> per_shard(shards_.size());
    for (VertexId v : picks) {
      for (std::uint32_t s : grid_.replica_set(v)) per_shard[s].push_back(v);
    }
    for (std::uint32_t s = 0; s < per_shard.size(); ++s) {
      if (per_shard[s].empty()) continue;
      router_.send(runtime::expansion_process(p),
                   runtime::allocation_process(s), iteration_,
                   runtime::VertexMulticast{p, std::move(per_shard[s])});
    }
  }

  std::optional<VertexId> fallback_pick(std::uint32_t p) {
    if (cfg_.script != nullptr) {
      if (auto v = cfg_.script->pick(iteration_, p)) return v;
    }
    // Expanding a start vertex claims all of its remaining edges at once,
    // so restrict the pick to starts whose residual degree still fits under
    // the cap. Static degree answers most candidates without touching the
    // other shards.
    const double budget = procs_[p].cap() - double(procs_[p].edge_count());
    auto global_rest = [&](VertexId v) {
      std::uint64_t rest = 0;
      for (std::uint32_t s : grid_.replica_set(v)) {
        rest += shards_[s].rest_degree(v);
      }
      return rest;
    };
    auto fits = [&](VertexId v, std::uint32_t local_rest) {
      if (double(graph_.degree(v)) <= budget) return true;
      if (double(local_rest) > budget) return false;
      return double(global_rest(v)) <= budget;
    };
    // Colocated allocator first, remote shards only if it is exhausted.
    for (std::uint32_t off = 0; off < shards_.size(); ++off) {
      AllocationShard& shard = shards_[(p + off) % shards_.size()];
      if (shard.unallocated_count() == 0) continue;
      if (auto v = shard.sample_rest_vertex(procs_[p].rng(), fits)) {
        return v;
      }
    }
    return std::nullopt;
  }

  void step_one_hop(std::uint32_t s) {
    AllocationShard& shard = shards_[s];
    shard.begin_iteration(global_estimates_, edge_cap_);
    std::vector<runtime::VertexPartitionPair> batch;
    for (const auto& m :
         router_.drain(runtime::allocation_process(s), Phase::OneHop)) {
      check_iteration(m);
      const auto& mc = std::get<runtime::VertexMulticast>(m.payload);
      for (VertexId v : mc.vertices) batch.push_back({v, mc.partition});
    }
    AllocationShard::OneHopResult result;
    if (intra_workers_ > 1) {
      std::vector<AllocationShard::OneHopResult> parts(intra_workers_);
      std::atomic<std::uint32_t> next{0};
      parallel_chunks(batch.size(), intra_workers_,
                      [&](std::size_t b, std::size_t e) {
                        std::uint32_t slot = next.fetch_add(1);
                        parts[slot] = shard.allocate_one_hop(
                            std::span(batch).subspan(b, e - b), iteration_,
                            cfg_.script);
                      });
      for (auto& part : parts) {
        result.new_boundary.insert(result.new_boundary.end(),
                                   part.new_boundary.begin(),
                                   part.new_boundary.end());
        result.claimed.insert(result.claimed.end(), part.claimed.begin(),
                              part.claimed.end());
      }
    } else {
      result = shard.allocate_one_hop(batch, iteration_, cfg_.script);
    }

    bp_new_[s] = result.new_boundary;
    ep_out_[s] = std::move(result.claimed);

    // Propagate fresh tags to every other shard replicating the vertex.
    std::vector<std::vector<runtime::VertexPartitionPair>> per_shard(
        shards_.size());
    for (const auto& pair : result.new_boundary) {
      for (std::uint32_t t : grid_.replica_set(pair.vertex)) {
        if (t != s) per_shard[t].push_back(pair);
      }
    }
    for (std::uint32_t t = 0; t < per_shard.size(); ++t) {
      if (per_shard[t].empty()) continue;
      router_.send(runtime::allocation_process(s),
                   runtime::allocation_process(t), iteration_,
                   runtime::BoundarySync{std::move(per_shard[t])});
    }
  }

  void step_tag_sync(std::uint32_t s) {
    for (const auto& m :
         router_.drain(runtime::allocation_process(s), Phase::TagSync)) {
      check_iteration(m);
      const auto& sync = std::get<runtime::BoundarySync>(m.payload);
      auto fresh = shards_[s].apply_tag_sync(sync.pairs);
      bp_new_[s].insert(bp_new_[s].end(), fresh.begin(), fresh.end());
    }
    std::sort(bp_new_[s].begin(), bp_new_[s].end(),
              [](const auto& a, const auto& b) {
                return a.vertex != b.vertex ? a.vertex < b.vertex
                                            : a.partition < b.partition;
              });
  }

  void step_two_hop(std::uint32_t s) {
    shards_[s].begin_two_hop();
    const auto& boundary = bp_new_[s];
    std::vector<runtime::EdgeAssignmentRecord> claimed;
    if (intra_workers_ > 1) {
      std::vector<std::vector<runtime::EdgeAssignmentRecord>> parts(
          intra_workers_);
      std::atomic<std::uint32_t> next{0};
      parallel_chunks(boundary.size(), intra_workers_,
                      [&](std::size_t b, std::size_t e) {
                        std::uint32_t slot = next.fetch_add(1);
                        parts[slot] = shards_[s].allocate_two_hop(
                            std::span(boundary).subspan(b, e - b));
                      });
      for (auto& part : parts) {
        claimed.insert(claimed.end(), part.begin(), part.end());
      }
    } else {
      claimed = shards_[s].allocate_two_hop(boundary);
    }
    ep_out_[s].insert(ep_out_[s].end(), claimed.begin(), claimed.end());
  }

  void step_report(std::uint32_t s) {
    auto contributions = shards_[s].compute_local_drest(bp_new_[s]);
    std::vector<std::vector<runtime::BoundaryContribution>> scores(
        procs_.size());
    for (const auto& c : contributions) scores[c.partition].push_back(c);
    std::vector<std::vector<runtime::EdgeAssignmentRecord>> edges(
        procs_.size());
    for (const auto& rec : ep_out_[s]) edges[rec.partition].push_back(rec);
    for (std::uint32_t p = 0; p < procs_.size(); ++p) {
      if (!scores[p].empty()) {
        router_.send(runtime::allocation_process(s),
                     runtime::expansion_process(p), iteration_,
                     runtime::NewBoundary{std::move(scores[p])});
      }
      if (!edges[p].empty()) {
        router_.send(runtime::allocation_process(s),
                     runtime::expansion_process(p), iteration_,
                     runtime::NewEdges{std::move(edges[p])});
      }
    }
    bp_new_[s].clear();
    ep_out_[s].clear();
  }

  void step_update(std::uint32_t p) {
    ExpansionProcess& proc = procs_[p];
    std::vector<runtime::EdgeAssignmentRecord> new_edges;
    std::map<VertexId, std::uint64_t> summed;
    for (const auto& m :
         router_.drain(runtime::expansion_process(p), Phase::Update)) {
      check_iteration(m);
      if (const auto* ne = std::get_if<runtime::NewEdges>(&m.payload)) {
        new_edges.insert(new_edges.end(), ne->edges.begin(), ne->edges.end());
      } else if (const auto* nbp =
                     std::get_if<runtime::NewBoundary>(&m.payload)) {
        const auto& nb = *nbp;
        for (const auto& entry : nb.entries) {
          if (entry.partition != p) {
            throw ProtocolError("boundary entry for partition " +
                                std::to_string(entry.partition) +
                                " delivered to E" + std::to_string(p));
          }
          summed[entry.vertex] += entry.local_drest;
        }
      } else {
        throw ProtocolError(std::string("unexpected ") +
                            runtime::variant_name(m.payload) +
                            " delivered to E" + std::to_string(p) +
                            " during update");
      }
    }
    last_batch_[p] = new_edges.size();
    proc.apply_new_edges(new_edges);
    if (cfg_.deterministic && cfg_.hooks != nullptr) {
      for (const auto& [v, score] : summed) {
        cfg_.hooks->on_boundary_score(iteration_, p, v, score);
      }
    }
    proc.apply_new_boundary(summed);
  }

  void step_gather(std::uint32_t p) {
    runtime::all_gather_emit(router_, p, iteration_, procs_[p].edge_count());
  }

  void step_check(std::uint32_t p) {
    gathered_[p] = runtime::all_gather_fold(router_, p, iteration_);
  }

  // --- driver ---------------------------------------------------------------

  void check_iteration(const runtime::Message& m) const {
    if (m.iteration != iteration_) {
      throw ProtocolError("message from " + runtime::to_string(m.sender) +
                          " crossed an iteration boundary (" +
                          std::to_string(m.iteration) + " vs " +
                          std::to_string(iteration_) + ")");
    }
  }

  EngineView view() const {
    return {&graph_, &grid_, std::span(shards_), cfg_.num_partitions};
  }

  void hooks_before(Phase phase) {
    if (cfg_.deterministic && cfg_.hooks != nullptr) {
      cfg_.hooks->before_phase(view(), iteration_, phase);
    }
  }

  void hooks_after(Phase phase) {
    if (cfg_.deterministic && cfg_.hooks != nullptr) {
      cfg_.hooks->after_phase(view(), iteration_, phase);
    }
  }

  /// Runs after the Check barrier; returns true when the loop is over.
  bool end_of_iteration() {
    for (std::uint32_t p = 0; p < procs_.size(); ++p) {
      if (gathered_[p] != gathered_[0]) {
        throw ProtocolError("gather disagreement between E0 and E" +
                            std::to_string(p));
      }
    }
    if (cfg_.progress != nullptr) {
      for (std::uint32_t p = 0; p < procs_.size(); ++p) {
        *cfg_.progress << "iter " << iteration_ << " partition " << p
                       << " boundary " << procs_[p].boundary().size()
                       << " edges " << procs_[p].edge_count() << " k "
                       << procs_[p].last_pick_count() << '\n';
      }
    }
    bool done = gathered_[0] == graph_.edge_count();
    for (std::uint32_t p = 0; p < procs_.size(); ++p) {
      if (active_[p] && procs_[p].reached_cap()) {
        // Cap respected up to the final iteration's batch.
        if (double(procs_[p].edge_count() - last_batch_[p]) > procs_[p].cap()) {
          throw Error("partition " + std::to_string(p) +
                      " exceeded its cap before the final batch");
        }
        active_[p] = 0;
      }
    }
    if (!done && std::none_of(active_.begin(), active_.end(),
                              [](char a) { return a != 0; })) {
      done = true;  // everyone capped; leftovers go to the final sweep
    }
    if (!done && std::none_of(picked_.begin(), picked_.end(),
                              [](char c) { return c != 0; })) {
      // Nobody could afford a pick: the state can only repeat itself.
      done = true;
    }
    ++iteration_;
    return done;
  }

  void run_deterministic() {
    for (;;) {
      for (Phase phase : kPhases) {
        hooks_before(phase);
        for (std::uint32_t m = 0; m < procs_.size(); ++m) step(m, phase);
        router_.publish();
        hooks_after(phase);
      }
      if (end_of_iteration()) return;
    }
  }

  void run_parallel() {
    const std::uint32_t n = cfg_.num_partitions;
    runtime::Barrier barrier(n);
    std::atomic<bool> done{false};
    std::atomic<bool> failed{false};
    std::exception_ptr failure;
    std::mutex failure_mu;

    auto worker = [&](std::uint32_t m) {
      while (!done.load(std::memory_order_acquire)) {
        for (Phase phase : kPhases) {
          try {
            if (!failed.load(std::memory_order_acquire)) step(m, phase);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (failure == nullptr) failure = std::current_exception();
            failed.store(true, std::memory_order_release);
          }
          barrier.arrive_and_wait();
          if (m == 0) {
            try {
              router_.publish();
              if (phase == Phase::Check &&
                  (failed.load(std::memory_order_acquire) ||
                   end_of_iteration())) {
                done.store(true, std::memory_order_release);
              }
            } catch (...) {
              std::lock_guard lock(failure_mu);
              if (failure == nullptr) failure = std::current_exception();
              failed.store(true, std::memory_order_release);
              done.store(true, std::memory_order_release);
            }
          }
          barrier.arrive_and_wait();
        }
      }
    };

    std::vector<std::thread> threads;
    threads.reserve(n);
    for (std::uint32_t m = 0; m < n; ++m) threads.emplace_back(worker, m);
    for (auto& t : threads) t.join();
    if (failure != nullptr) std::rethrow_exception(failure);
  }

  EngineResult finish() {
    // Everyone stopped with edges left over: the terminal sweep keeps the
    // assignment total.
    std::vector<runtime::EdgeAssignmentRecord> swept;
    std::uint64_t rest = 0;
    for (const auto& shard : shards_) rest += shard.unallocated_count();
    if (rest > 0) {
      std::vector<std::uint64_t> sizes(procs_.size());
      for (std::uint32_t p = 0; p < procs_.size(); ++p) {
        sizes[p] = procs_[p].edge_count();
      }
      for (auto& shard : shards_) {
        auto got = shard.sweep_leftovers(sizes);
        swept.insert(swept.end(), got.begin(), got.end());
      }
    }

    if (!router_.all_delivered()) {
      throw ProtocolError("undelivered messages at termination: sent " +
                          std::to_string(router_.sent_count()) +
                          ", delivered " +
                          std::to_string(router_.delivered_count()));
    }

    std::vector<runtime::EdgeAssignmentRecord> records;
    records.reserve(graph_.edge_count());
    for (const auto& proc : procs_) {
      for (const Edge& e : proc.edges()) {
        records.push_back({e, proc.partition()});
      }
    }
    records.insert(records.end(), swept.begin(), swept.end());

    EngineResult result;
    result.assignment = PartitionAssignment::from_records(
        graph_, cfg_.num_partitions, records);
    result.iterations = iteration_;
    result.swept_edges = swept.size();

    const double rf = replication_factor(result.assignment, graph_);
    const double ub = theoretical_upper_bound(
        graph_.vertex_count(), graph_.edge_count(), cfg_.num_partitions);
    if (rf > ub) {
      throw Error("replication factor " + std::to_string(rf) +
                  " exceeds its theoretical bound " + std::to_string(ub));
    }
    return result;
  }

  const Graph& graph_;
  EngineConfig cfg_;
  GridPlacement grid_;
  runtime::Router router_;
  std::vector<AllocationShard> shards_;
  std::vector<ExpansionProcess> procs_;

  std::uint32_t iteration_ = 0;
  std::vector<char> active_;
  std::vector<char> picked_;
  std::vector<std::uint64_t> gathered_;
  std::vector<std::uint64_t> last_batch_;
  std::vector<double> global_estimates_;
  double edge_cap_ = 0.0;
  // Per-shard scratch, valid between OneHop and Report of one iteration.
  std::vector<std::vector<runtime::EdgeAssignmentRecord>> ep_out_;
  std::vector<std::vector<runtime::VertexPartitionPair>> bp_new_;
  std::uint32_t intra_workers_ = 1;
};

}  // namespace

EngineResult partition_graph(const Graph& g, const EngineConfig& cfg) {
  Engine engine(g, cfg);
  return engine.run();
}

}  // namespace nepart

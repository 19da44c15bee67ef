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

#include "nepart/allocation.hpp"

#include <algorithm>
#include <string>

namespace nepart {

AllocationShard::AllocationShard(std::uint32_t shard_id, SubGraph subgraph,
                                 std::uint32_t num_partitions,
                                 const GridPlacement& grid)
    : shard_id_(shard_id),
      sub_(std::move(subgraph)),
      num_partitions_(num_partitions),
      grid_(&grid),
      tag_words_((num_partitions + 63) / 64),
      edge_state_(sub_.edge_count()),
      tags_(std::size_t(sub_.vertex_count()) * tag_words_),
      rest_degree_(sub_.vertex_count()),
      partition_edges_(num_partitions),
      rest_edges_(sub_.edge_count()) {
  for (auto& s : edge_state_) {
    s.store(kNoPartition, std::memory_order_relaxed);
  }
  for (VertexId v = 0; v < sub_.vertex_count(); ++v) {
    rest_degree_[v].store(static_cast<std::uint32_t>(sub_.local_degree(v)),
                          std::memory_order_relaxed);
  }
}

AllocationShard::AllocationShard(AllocationShard&& other) noexcept
    : shard_id_(other.shard_id_),
      sub_(std::move(other.sub_)),
      num_partitions_(other.num_partitions_),
      grid_(other.grid_),
      tag_words_(other.tag_words_),
      edge_state_(std::move(other.edge_state_)),
      tags_(std::move(other.tags_)),
      rest_degree_(std::move(other.rest_degree_)),
      partition_edges_(std::move(other.partition_edges_)),
      rest_edges_(other.rest_edges_.load(std::memory_order_relaxed)) {}

bool AllocationShard::has_tag(VertexId v, PartitionId p) const {
  const std::uint64_t word =
      tags_[std::size_t(v) * tag_words_ + p / 64].load(
          std::memory_order_relaxed);
  return (word >> (p % 64)) & 1;
}

std::vector<PartitionId> AllocationShard::tags_of(VertexId v) const {
  std::vector<PartitionId> out;
  for (std::uint32_t w = 0; w < tag_words_; ++w) {
    std::uint64_t word =
        tags_[std::size_t(v) * tag_words_ + w].load(std::memory_order_relaxed);
    while (word != 0) {
      unsigned bit = static_cast<unsigned>(__builtin_ctzll(word));
      out.push_back(w * 64 + bit);
      word &= word - 1;
    }
  }
  return out;
}

bool AllocationShard::add_tag(VertexId v, PartitionId p) {
  const std::uint64_t bit = std::uint64_t(1) << (p % 64);
  const std::uint64_t prev =
      tags_[std::size_t(v) * tag_words_ + p / 64].fetch_or(
          bit, std::memory_order_relaxed);
  return (prev & bit) == 0;
}

AllocationShard::OneHopResult AllocationShard::allocate_one_hop(
    std::span<const runtime::VertexPartitionPair> batch,
    std::uint32_t iteration, const ClaimPolicy* policy) {
  OneHopResult out;
  for (const auto& [v, p] : batch) {
    if (v >= sub_.vertex_count()) {
      throw ProtocolError("one-hop: vertex " + std::to_string(v) +
                          " outside shard " + std::to_string(shard_id_));
    }
    for (std::uint64_t i = sub_.begin_of(v); i < sub_.end_of(v); ++i) {
      const auto [u, slot] = sub_.entry(i);
      PartitionId expected = kNoPartition;
      if (edge_state_[slot].load(std::memory_order_relaxed) != kNoPartition) {
        continue;  // already owned; losing the race is normal
      }
      if (policy != nullptr &&
          !policy->one_hop_allowed(iteration, sub_.slot_edge(slot), p)) {
        continue;
      }
      if (!edge_state_[slot].compare_exchange_strong(
              expected, p, std::memory_order_relaxed)) {
        continue;
      }
      rest_degree_[v].fetch_sub(1, std::memory_order_relaxed);
      rest_degree_[u].fetch_sub(1, std::memory_order_relaxed);
      rest_edges_.fetch_sub(1, std::memory_order_relaxed);
      partition_edges_[p].fetch_add(1, std::memory_order_relaxed);
      out.claimed.push_back({sub_.slot_edge(slot), p});
      // The far endpoint becomes (or already was) a boundary vertex of p.
      // Re-reports of an already tagged vertex are suppressed.
      if (add_tag(u, p)) {
        out.new_boundary.push_back({u, p});
      }
    }
  }
  return out;
}

std::vector<runtime::VertexPartitionPair> AllocationShard::apply_tag_sync(
    std::span<const runtime::VertexPartitionPair> pairs) {
  std::vector<runtime::VertexPartitionPair> fresh;
  for (const auto& [v, p] : pairs) {
    if (!grid_->in_replica_set(v, shard_id_)) {
      throw ProtocolError("tag sync for vertex " + std::to_string(v) +
                          " reached shard " + std::to_string(shard_id_) +
                          " outside its replica set");
    }
    if (add_tag(v, p)) fresh.push_back({v, p});
  }
  return fresh;
}

void AllocationShard::begin_iteration(
    std::span<const double> global_estimates, double edge_cap) {
  edge_cap_ = edge_cap;
  cap_active_ = true;
  global_estimates_.assign(global_estimates.begin(), global_estimates.end());
}

void AllocationShard::begin_two_hop() {
  if (!cap_active_) return;
  local_at_start_.resize(num_partitions_);
  for (PartitionId p = 0; p < num_partitions_; ++p) {
    local_at_start_[p] = partition_edges_[p].load(std::memory_order_relaxed);
  }
}

bool AllocationShard::two_hop_eligible(PartitionId cand) const {
  if (!cap_active_) return true;
  const std::uint64_t local_new =
      partition_edges_[cand].load(std::memory_order_relaxed) -
      local_at_start_[cand];
  // Scaled-local estimate of the partition's size after one more claim,
  // assuming the other shards load it at the same rate. The estimate
  // already carries the whole in-flight one-hop batch, so the per-shard
  // allowances sum to at most the partition's remaining capacity.
  const double estimate = double(global_estimates_[cand]) +
                          double((local_new + 1) * num_partitions_);
  return estimate <= edge_cap_;
}

std::vector<runtime::EdgeAssignmentRecord> AllocationShard::allocate_two_hop(
    std::span<const runtime::VertexPartitionPair> boundary) {
  std::vector<runtime::EdgeAssignmentRecord> claimed;
  VertexId last = kNoPartition;
  for (const auto& bp : boundary) {
    const VertexId u = bp.vertex;
    if (u == last) continue;  // pairs arrive grouped by vertex
    last = u;
    if (rest_degree_[u].load(std::memory_order_relaxed) == 0) continue;
    for (std::uint64_t i = sub_.begin_of(u); i < sub_.end_of(u); ++i) {
      const auto [w, slot] = sub_.entry(i);
      if (edge_state_[slot].load(std::memory_order_relaxed) != kNoPartition) {
        continue;
      }
      // P_new = tags(u) & tags(w); pick the shard-locally smallest member.
      PartitionId best = kNoPartition;
      std::uint64_t best_count = 0;
      for (std::uint32_t word = 0; word < tag_words_; ++word) {
        std::uint64_t inter =
            tags_[std::size_t(u) * tag_words_ + word].load(
                std::memory_order_relaxed) &
            tags_[std::size_t(w) * tag_words_ + word].load(
                std::memory_order_relaxed);
        while (inter != 0) {
          unsigned bit = static_cast<unsigned>(__builtin_ctzll(inter));
          inter &= inter - 1;
          PartitionId cand = word * 64 + bit;
          if (!two_hop_eligible(cand)) continue;
          std::uint64_t count =
              partition_edges_[cand].load(std::memory_order_relaxed);
          if (best == kNoPartition || count < best_count) {
            best = cand;
            best_count = count;
          }
        }
      }
      if (best == kNoPartition) continue;
      PartitionId expected = kNoPartition;
      if (!edge_state_[slot].compare_exchange_strong(
              expected, best, std::memory_order_relaxed)) {
        continue;
      }
      rest_degree_[u].fetch_sub(1, std::memory_order_relaxed);
      rest_degree_[w].fetch_sub(1, std::memory_order_relaxed);
      rest_edges_.fetch_sub(1, std::memory_order_relaxed);
      partition_edges_[best].fetch_add(1, std::memory_order_relaxed);
      claimed.push_back({sub_.slot_edge(slot), best});
    }
  }
  return claimed;
}

std::vector<runtime::BoundaryContribution>
AllocationShard::compute_local_drest(
    std::span<const runtime::VertexPartitionPair> boundary) const {
  std::vector<runtime::BoundaryContribution> out;
  out.reserve(boundary.size());
  for (const auto& [v, p] : boundary) {
    out.push_back({v, p, rest_degree_[v].load(std::memory_order_relaxed)});
  }
  return out;
}

std::optional<VertexId> AllocationShard::sample_rest_vertex(
    std::mt19937_64& rng,
    const std::function<bool(VertexId, std::uint32_t)>& filter) const {
  std::uint64_t candidates = 0;
  for (VertexId v = 0; v < sub_.vertex_count(); ++v) {
    std::uint32_t rest = rest_degree_[v].load(std::memory_order_relaxed);
    if (rest == 0) continue;
    if (filter && !filter(v, rest)) continue;
    ++candidates;
  }
  if (candidates == 0) return std::nullopt;
  std::uint64_t target = rng() % candidates;
  for (VertexId v = 0; v < sub_.vertex_count(); ++v) {
    std::uint32_t rest = rest_degree_[v].load(std::memory_order_relaxed);
    if (rest == 0) continue;
    if (filter && !filter(v, rest)) continue;
    if (target == 0) return v;
    --target;
  }
  return std::nullopt;  // unreachable
}

std::vector<runtime::EdgeAssignmentRecord> AllocationShard::sweep_leftovers(
    std::vector<std::uint64_t>& partition_sizes) {
  std::vector<runtime::EdgeAssignmentRecord> out;
  for (std::uint32_t slot = 0; slot < sub_.edge_count(); ++slot) {
    if (edge_state_[slot].load(std::memory_order_relaxed) != kNoPartition) {
      continue;
    }
    const Edge& e = sub_.slot_edge(slot);
    PartitionId best = kNoPartition;
    for (VertexId endpoint : {e.src, e.dst}) {
      for (PartitionId p : tags_of(endpoint)) {
        if (best == kNoPartition || partition_sizes[p] < partition_sizes[best] ||
            (partition_sizes[p] == partition_sizes[best] && p < best)) {
          best = p;
        }
      }
    }
    if (best == kNoPartition) {
      best = 0;
      for (PartitionId p = 1; p < num_partitions_; ++p) {
        if (partition_sizes[p] < partition_sizes[best]) best = p;
      }
    }
    edge_state_[slot].store(best, std::memory_order_relaxed);
    rest_degree_[e.src].fetch_sub(1, std::memory_order_relaxed);
    rest_degree_[e.dst].fetch_sub(1, std::memory_order_relaxed);
    rest_edges_.fetch_sub(1, std::memory_order_relaxed);
    partition_edges_[best].fetch_add(1, std::memory_order_relaxed);
    ++partition_sizes[best];
    out.push_back({e, best});
  }
  return out;
}

}  // namespace nepart

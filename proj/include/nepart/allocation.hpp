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

#ifndef NEPART_ALLOCATION_HPP
#define NEPART_ALLOCATION_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "nepart/csr.hpp"
#include "nepart/grid.hpp"
#include "nepart/runtime.hpp"
#include "nepart/types.hpp"

namespace nepart {

/// Hook that restricts one-hop claims. Only installed by test fixtures
/// that need to pin down race outcomes; normal runs never see it.
class ClaimPolicy {
 public:
  virtual ~ClaimPolicy() = default;
  virtual bool one_hop_allowed(std::uint32_t iteration, const Edge& e,
                               PartitionId p) const = 0;
};

/// One allocation process's share of the graph: a CSR shard whose edges it
/// exclusively owns, plus replicated vertex metadata. Edge ownership is a
/// linearizable first-writer-wins claim: losers observe the winner and an
/// allocated edge never changes partition.
class AllocationShard {
 public:
  AllocationShard(std::uint32_t shard_id, SubGraph subgraph,
                  std::uint32_t num_partitions, const GridPlacement& grid);

  /// Setup-time only; never move a shard that workers may touch.
  AllocationShard(AllocationShard&& other) noexcept;

  std::uint32_t shard_id() const { return shard_id_; }
  const SubGraph& subgraph() const { return sub_; }
  std::uint32_t num_partitions() const { return num_partitions_; }

  PartitionId edge_owner(std::uint32_t slot) const {
    return edge_state_[slot].load(std::memory_order_relaxed);
  }
  std::uint32_t rest_degree(VertexId v) const {
    return rest_degree_[v].load(std::memory_order_relaxed);
  }
  std::uint64_t unallocated_count() const {
    return rest_edges_.load(std::memory_order_relaxed);
  }
  std::uint64_t partition_local_edges(PartitionId p) const {
    return partition_edges_[p].load(std::memory_order_relaxed);
  }
  bool has_tag(VertexId v, PartitionId p) const;
  std::vector<PartitionId> tags_of(VertexId v) const;

  struct OneHopResult {
    std::vector<runtime::VertexPartitionPair> new_boundary;  // BP_new_local
    std::vector<runtime::EdgeAssignmentRecord> claimed;      // EP_1hop
  };

  /// Iteration prologue: per-partition global size estimates that already
  /// include the in-flight one-hop batches, plus the edge cap. Two-hop
  /// claims for a partition stop once its estimate (global + new local
  /// two-hop claims scaled by |P|) passes the cap; without this a full
  /// partition keeps swallowing its region's interior. Never calling it
  /// leaves two-hop claims unrestricted.
  void begin_iteration(std::span<const double> global_estimates,
                       double edge_cap);

  /// Snapshot taken between the one-hop and two-hop phases so the guard
  /// counts only this shard's two-hop claims on top of the estimates.
  void begin_two_hop();

  /// Phase 1: for each received (v, p), atomically claims every still
  /// unallocated locally stored edge of v for p and tags+reports the far
  /// endpoint. Safe for concurrent callers over disjoint spans of pairs.
  OneHopResult allocate_one_hop(
      std::span<const runtime::VertexPartitionPair> batch,
      std::uint32_t iteration, const ClaimPolicy* policy = nullptr);

  /// Phase 2: merges tag pairs received from peer shards. Returns the pairs
  /// that were new on this shard (they join BP_new for phases 3-4).
  /// Throws ProtocolError if this shard is not in the vertex's replica set.
  std::vector<runtime::VertexPartitionPair> apply_tag_sync(
      std::span<const runtime::VertexPartitionPair> pairs);

  /// Phase 3: Condition-(5) closure. For each boundary vertex u and each
  /// unallocated local edge (u, w), claims it for the tag-intersection
  /// partition with the smallest shard-local edge count (ties: smaller id).
  /// Never adds a vertex replica.
  std::vector<runtime::EdgeAssignmentRecord> allocate_two_hop(
      std::span<const runtime::VertexPartitionPair> boundary);

  /// Phase 4: shard-local unallocated degree for each boundary vertex.
  std::vector<runtime::BoundaryContribution> compute_local_drest(
      std::span<const runtime::VertexPartitionPair> boundary) const;

  /// Uniform pick among local vertices that still have unallocated edges.
  /// A filter restricts the candidate set (the callback also receives the
  /// shard-local residual degree); with a filter and no matching candidate
  /// the pick fails.
  std::optional<VertexId> sample_rest_vertex(
      std::mt19937_64& rng,
      const std::function<bool(VertexId, std::uint32_t)>& filter = {}) const;

  /// Terminal assignment of whatever is still unallocated; single-threaded.
  /// Each edge goes to the smallest (by running global size) partition
  /// among those covering an endpoint, else the globally smallest.
  std::vector<runtime::EdgeAssignmentRecord> sweep_leftovers(
      std::vector<std::uint64_t>& partition_sizes);

 private:
  bool add_tag(VertexId v, PartitionId p);  // true if newly set
  bool two_hop_eligible(PartitionId cand) const;

  std::uint32_t shard_id_;
  SubGraph sub_;
  std::uint32_t num_partitions_;
  const GridPlacement* grid_;
  std::uint32_t tag_words_;

  std::vector<std::atomic<PartitionId>> edge_state_;
  std::vector<std::atomic<std::uint64_t>> tags_;
  std::vector<std::atomic<std::uint32_t>> rest_degree_;
  std::vector<std::atomic<std::uint64_t>> partition_edges_;
  std::atomic<std::uint64_t> rest_edges_;

  // Balance guard state, refreshed by begin_iteration/begin_two_hop.
  double edge_cap_ = 0.0;
  bool cap_active_ = false;
  std::vector<double> global_estimates_;
  std::vector<std::uint64_t> local_at_start_;
};

}  // namespace nepart

#endif  // NEPART_ALLOCATION_HPP

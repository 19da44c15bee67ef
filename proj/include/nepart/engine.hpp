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

#ifndef NEPART_ENGINE_HPP
#define NEPART_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nepart/allocation.hpp"
#include "nepart/expansion.hpp"
#include "nepart/graph.hpp"
#include "nepart/grid.hpp"
#include "nepart/metrics.hpp"
#include "nepart/runtime.hpp"

namespace nepart {

/// Test-fixture script: pins the random picks (and, where the scenario
/// depends on race outcomes, the permitted one-hop claims) of a run.
struct ForcedScript final : ClaimPolicy {
  /// picks[iteration] = (partition, vertex): used when that partition's
  /// boundary is empty at that iteration.
  std::vector<std::vector<std::pair<PartitionId, VertexId>>> picks;

  /// When non-empty, a one-hop claim of `edge` succeeds only for the given
  /// (partition, iteration). This selects one legal linearization of the
  /// per-edge claim races.
  std::unordered_map<Edge, std::pair<PartitionId, std::uint32_t>, EdgeHash>
      one_hop_claims;

  std::optional<VertexId> pick(std::uint32_t iteration, PartitionId p) const;

  bool one_hop_allowed(std::uint32_t iteration, const Edge& e,
                       PartitionId p) const override;
};

struct EngineView {
  const Graph* graph = nullptr;
  const GridPlacement* grid = nullptr;
  std::span<const AllocationShard> shards;
  std::uint32_t num_partitions = 0;
};

/// Instrumentation callbacks, invoked in deterministic mode only.
class EngineHooks {
 public:
  virtual ~EngineHooks() = default;
  virtual void before_phase(const EngineView&, std::uint32_t /*iteration*/,
                            runtime::Phase) {}
  virtual void after_phase(const EngineView&, std::uint32_t /*iteration*/,
                           runtime::Phase) {}
  /// Global (summed) score a vertex enters partition p's boundary with.
  virtual void on_boundary_score(std::uint32_t /*iteration*/,
                                 PartitionId /*p*/, VertexId /*v*/,
                                 std::uint64_t /*global_score*/) {}
};

struct EngineConfig {
  std::uint32_t num_partitions = 1;
  double alpha = 1.1;
  double lambda = 0.1;
  std::uint64_t seed = 0;
  bool deterministic = false;
  /// Total worker threads in parallel mode; 0 means one per process pair.
  /// Values above |P| add intra-shard workers to the claim phases.
  std::uint32_t workers = 0;
  std::ostream* trace = nullptr;
  std::ostream* progress = nullptr;
  const ForcedScript* script = nullptr;
  EngineHooks* hooks = nullptr;
};

struct EngineResult {
  PartitionAssignment assignment;
  std::uint64_t iterations = 0;
  std::uint64_t swept_edges = 0;
};

/// Runs the full distributed expansion: |P| expansion processes and |P|
/// allocation shards in lockstep phases. The result is a total, disjoint
/// assignment; the replication-factor bound rf <= (|E|+|V|+|P|)/|V| is
/// asserted on every run.
EngineResult partition_graph(const Graph& g, const EngineConfig& cfg);

}  // namespace nepart

#endif  // NEPART_ENGINE_HPP

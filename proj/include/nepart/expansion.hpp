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

#ifndef NEPART_EXPANSION_HPP
#define NEPART_EXPANSION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

#include "nepart/runtime.hpp"
#include "nepart/types.hpp"

namespace nepart {

struct BoundaryEntry {
  VertexId vertex;
  std::uint32_t d_rest;
};

/// Priority structure over boundary candidates, keyed (d_rest asc, id asc).
/// Never holds a zero-score or duplicate vertex.
class Boundary {
 public:
  bool empty() const { return queue_.empty(); }
  std::size_t size() const { return queue_.size(); }
  bool contains(VertexId v) const { return score_.count(v) != 0; }
  std::uint32_t score_of(VertexId v) const { return score_.at(v); }

  /// Zero scores are skipped; re-inserting a present vertex is a no-op
  /// (the protocol reports each vertex to a partition at most once).
  void insert(VertexId v, std::uint32_t d_rest);

  /// Self-observed allocation of an incident edge: lower the stored score,
  /// dropping the entry when it reaches zero.
  void decrement(VertexId v);

  std::optional<BoundaryEntry> pop_min();
  std::optional<BoundaryEntry> peek_min() const;

 private:
  std::set<std::pair<std::uint32_t, VertexId>> queue_;
  std::unordered_map<VertexId, std::uint32_t> score_;
};

struct ExpansionConfig {
  double alpha = 1.1;   // imbalance factor, >= 1
  double lambda = 0.1;  // expansion factor, in (0, 1]
  std::uint64_t seed = 0;
};

/// Multi-expansion pick count: k = max(1, ceil(lambda * |B|)).
std::size_t expansion_pick_count(double lambda, std::size_t boundary_size);

/// Per-partition greedy expansion state. Owned by exactly one expansion
/// process; talks to the world only through runtime messages.
class ExpansionProcess {
 public:
  ExpansionProcess(PartitionId partition, double cap, double lambda,
                   std::uint64_t seed);

  PartitionId partition() const { return partition_; }
  const Boundary& boundary() const { return boundary_; }
  Boundary& boundary() { return boundary_; }
  std::uint64_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  double cap() const { return cap_; }
  bool reached_cap() const { return double(edges_.size()) > cap_; }
  std::mt19937_64& rng() { return rng_; }
  std::size_t last_pick_count() const { return last_pick_count_; }

  struct Selection {
    std::vector<VertexId> picks;
    /// Sum of the popped scores: an upper estimate of the one-hop edges
    /// this batch can claim.
    double projected = 0.0;
    /// Boundary was non-empty but even its minimum does not fit the
    /// remaining capacity right now; the entries stay put and the caller
    /// should try a random pick that fits instead.
    bool min_unaffordable = false;
  };

  /// Pops up to k = max(1, ceil(lambda |B|)) smallest (d_rest, id) entries,
  /// stopping once their projected scores exhaust the remaining capacity.
  /// Empty picks mean the boundary was empty (or unaffordable, see
  /// min_unaffordable) and the caller falls back to a random vertex.
  Selection select_from_boundary();

  /// Folds one iteration's allocator responses: records new edges first
  /// (adjusting scores of affected boundary entries), then inserts the new
  /// boundary vertices with their global (summed) scores.
  void apply_new_edges(const std::vector<runtime::EdgeAssignmentRecord>& recs);
  void apply_new_boundary(
      const std::map<VertexId, std::uint64_t>& summed_scores);

 private:
  PartitionId partition_;
  double cap_;
  double lambda_;
  Boundary boundary_;
  std::vector<Edge> edges_;
  std::mt19937_64 rng_;
  std::size_t last_pick_count_ = 0;
};

}  // namespace nepart

#endif  // NEPART_EXPANSION_HPP

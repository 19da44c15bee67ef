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

#ifndef NEPART_CSR_HPP
#define NEPART_CSR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "nepart/types.hpp"

namespace nepart {

/// CSR adjacency over a dense vertex id space. Every undirected edge is
/// stored in both directions; both directed entries point at one shared
/// edge slot, so allocation state lives exactly once per undirected edge.
class SubGraph {
 public:
  SubGraph() = default;

  /// Canonical, duplicate-free edges; throws ConfigError on out-of-range
  /// endpoints.
  static SubGraph build(std::vector<Edge> edges, VertexId vertex_count);

  VertexId vertex_count() const { return vertex_count_; }
  EdgeCount edge_count() const { return slots_.size(); }

  std::span<const std::uint64_t> offsets() const { return offsets_; }
  std::span<const VertexId> neighbors() const { return neighbors_; }

  EdgeCount local_degree(VertexId v) const {
    return offsets_[v + 1] - offsets_[v];
  }

  struct Entry {
    VertexId neighbor;
    std::uint32_t slot;  // undirected edge slot
  };

  Entry entry(std::uint64_t i) const { return {neighbors_[i], entry_slot_[i]}; }

  std::uint64_t begin_of(VertexId v) const { return offsets_[v]; }
  std::uint64_t end_of(VertexId v) const { return offsets_[v + 1]; }

  const Edge& slot_edge(std::uint32_t slot) const { return slots_[slot]; }
  std::span<const Edge> slot_edges() const { return slots_; }

 private:
  VertexId vertex_count_ = 0;
  std::vector<std::uint64_t> offsets_;   // size vertex_count + 1
  std::vector<VertexId> neighbors_;      // both directions
  std::vector<std::uint32_t> entry_slot_;
  std::vector<Edge> slots_;              // one per undirected edge
};

}  // namespace nepart

#endif  // NEPART_CSR_HPP

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

#include "nepart/csr.hpp"

#include <algorithm>
#include <string>

namespace nepart {

SubGraph SubGraph::build(std::vector<Edge> edges, VertexId vertex_count) {
  for (const Edge& e : edges) {
    if (e.src >= vertex_count || e.dst >= vertex_count) {
      throw ConfigError("csr: endpoint " +
                        std::to_string(std::max(e.src, e.dst)) +
                        " >= vertex count " + std::to_string(vertex_count));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  SubGraph g;
  g.vertex_count_ = vertex_count;
  g.slots_ = std::move(edges);

  const std::uint64_t entries = 2 * g.slots_.size();
  g.offsets_.assign(std::uint64_t(vertex_count) + 1, 0);
  for (const Edge& e : g.slots_) {
    ++g.offsets_[e.src + 1];
    ++g.offsets_[e.dst + 1];
  }
  for (VertexId v = 0; v < vertex_count; ++v) {
    g.offsets_[v + 1] += g.offsets_[v];
  }

  g.neighbors_.resize(entries);
  g.entry_slot_.resize(entries);
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::uint32_t slot = 0; slot < g.slots_.size(); ++slot) {
    const Edge& e = g.slots_[slot];
    std::uint64_t i = cursor[e.src]++;
    g.neighbors_[i] = e.dst;
    g.entry_slot_[i] = slot;
    std::uint64_t j = cursor[e.dst]++;
    g.neighbors_[j] = e.src;
    g.entry_slot_[j] = slot;
  }
  // Slots are sorted by (src, dst), so each adjacency list comes out
  // sorted by neighbor id except for the src/dst interleave; fix it up.
  for (VertexId v = 0; v < vertex_count; ++v) {
    std::uint64_t b = g.offsets_[v];
    std::uint64_t e = g.offsets_[v + 1];
    std::vector<std::pair<VertexId, std::uint32_t>> tmp;
    tmp.reserve(e - b);
    for (std::uint64_t i = b; i < e; ++i) {
      tmp.emplace_back(g.neighbors_[i], g.entry_slot_[i]);
    }
    std::sort(tmp.begin(), tmp.end());
    for (std::uint64_t i = b; i < e; ++i) {
      g.neighbors_[i] = tmp[i - b].first;
      g.entry_slot_[i] = tmp[i - b].second;
    }
  }
  return g;
}

}  // namespace nepart

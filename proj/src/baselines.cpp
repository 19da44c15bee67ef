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

#include "nepart/baselines.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "nepart/csr.hpp"
#include "nepart/grid.hpp"

namespace nepart {

namespace {

void require_parts(std::uint32_t parts) {
  if (parts < 1) throw ConfigError("baseline: need at least one partition");
}

}  // namespace

PartitionAssignment partition_random(const Graph& g, std::uint32_t parts,
                                     std::uint64_t seed) {
  require_parts(parts);
  std::vector<PartitionId> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    std::uint64_t h = mix64((std::uint64_t(e.src) << 32) | e.dst, seed);
    out.push_back(static_cast<PartitionId>(h % parts));
  }
  return PartitionAssignment(parts, std::move(out));
}

PartitionAssignment partition_grid(const Graph& g, std::uint32_t parts,
                                   std::uint64_t seed) {
  require_parts(parts);
  GridPlacement grid(parts, seed);
  std::vector<PartitionId> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    out.push_back(grid.process_of(e));
  }
  return PartitionAssignment(parts, std::move(out));
}

PartitionAssignment partition_dbh(const Graph& g, std::uint32_t parts,
                                  std::uint64_t seed) {
  require_parts(parts);
  std::vector<PartitionId> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    VertexId anchor;
    if (g.degree(e.src) != g.degree(e.dst)) {
      anchor = g.degree(e.src) < g.degree(e.dst) ? e.src : e.dst;
    } else {
      anchor = std::min(e.src, e.dst);
    }
    out.push_back(static_cast<PartitionId>(mix64(anchor, seed) % parts));
  }
  return PartitionAssignment(parts, std::move(out));
}

PartitionAssignment partition_sequential_ne(const Graph& g,
                                            std::uint32_t parts, double alpha,
                                            std::uint64_t seed) {
  require_parts(parts);
  if (alpha < 1.0) throw ConfigError("sequential ne: alpha must be >= 1");
  if (g.edge_count() == 0) throw ConfigError("sequential ne: empty graph");

  SubGraph sub = SubGraph::build({g.edges().begin(), g.edges().end()},
                                 g.vertex_count());
  std::vector<PartitionId> owner(sub.edge_count(), kNoPartition);
  std::vector<std::uint32_t> rest(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    rest[v] = static_cast<std::uint32_t>(sub.local_degree(v));
  }
  std::uint64_t remaining = sub.edge_count();
  const double cap = alpha * double(g.edge_count()) / double(parts);
  std::mt19937_64 rng(mix64(seed, 0x5e90e55ULL));

  // Membership of the current partition's vertex cover.
  std::vector<std::uint32_t> cover_mark(g.vertex_count(), 0);
  std::uint32_t cover_stamp = 0;

  auto random_rest_vertex = [&]() -> VertexId {
    std::uint64_t candidates = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (rest[v] > 0) ++candidates;
    }
    std::uint64_t target = rng() % candidates;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (rest[v] > 0 && target-- == 0) return v;
    }
    return 0;  // unreachable while remaining > 0
  };

  for (PartitionId p = 0; p < parts && remaining > 0; ++p) {
    ++cover_stamp;
    std::uint64_t size = 0;
    std::set<std::pair<std::uint32_t, VertexId>> boundary;

    auto enter_cover = [&](VertexId v) {
      if (cover_mark[v] == cover_stamp) return;
      cover_mark[v] = cover_stamp;
      if (rest[v] > 0) boundary.emplace(rest[v], v);
    };

    auto claim = [&](VertexId a, VertexId b, std::uint32_t slot) {
      owner[slot] = p;
      ++size;
      --remaining;
      for (VertexId x : {a, b}) {
        if (cover_mark[x] == cover_stamp && rest[x] > 0) {
          boundary.erase({rest[x], x});
        }
        --rest[x];
        if (cover_mark[x] == cover_stamp && rest[x] > 0) {
          boundary.emplace(rest[x], x);
        }
      }
    };

    // Expand one vertex at a time until the cap or global exhaustion.
    while (double(size) < cap && remaining > 0) {
      VertexId v;
      if (!boundary.empty()) {
        v = boundary.begin()->second;
        boundary.erase(boundary.begin());
      } else {
        v = random_rest_vertex();
      }
      enter_cover(v);
      if (rest[v] > 0) boundary.erase({rest[v], v});

      std::vector<VertexId> fresh;
      for (std::uint64_t i = sub.begin_of(v); i < sub.end_of(v); ++i) {
        const auto [u, slot] = sub.entry(i);
        if (owner[slot] != kNoPartition) continue;
        claim(v, u, slot);
        if (cover_mark[u] != cover_stamp) fresh.push_back(u);
      }
      for (VertexId u : fresh) enter_cover(u);

      // Two-hop closure: edges between the fresh vertices and the cover
      // add no new replicas.
      for (VertexId u : fresh) {
        if (rest[u] == 0) continue;
        for (std::uint64_t i = sub.begin_of(u); i < sub.end_of(u); ++i) {
          const auto [w, slot] = sub.entry(i);
          if (owner[slot] != kNoPartition) continue;
          if (cover_mark[w] != cover_stamp) continue;
          claim(u, w, slot);
        }
      }
    }
  }

  // alpha >= 1 guarantees the last partition absorbs the remainder within
  // its own cap, so this is only a guard against rounding.
  if (remaining > 0) {
    for (std::uint32_t slot = 0; slot < owner.size(); ++slot) {
      if (owner[slot] == kNoPartition) owner[slot] = parts - 1;
    }
  }

  // SubGraph sorts slots in canonical edge order, matching the graph.
  return PartitionAssignment(parts, std::move(owner));
}

}  // namespace nepart

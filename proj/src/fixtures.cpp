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

#include "nepart/fixtures.hpp"

#include <string>
#include <vector>

namespace nepart {

TightnessFixture build_tightness_fixture(std::uint32_t n) {
  if (n < 3) throw ConfigError("tightness fixture: n must be >= 3");
  const std::uint32_t m = n * (n - 1) / 2;  // ring size == |P|
  const VertexId ring_base = n;             // K_n occupies ids 0..n-1
  const VertexId total_vertices = n + m;

  std::vector<Edge> edges;
  edges.reserve(2 * std::size_t(m));
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    edges.emplace_back(ring_base + i, ring_base + (i + 1) % m);
  }

  TightnessFixture fx;
  fx.graph = Graph::from_edges(total_vertices, std::move(edges));
  fx.num_partitions = m;

  // Iteration 0: partition q starts at ring vertex q and wins only the ring
  // edge to its successor. Iteration 1: partition q starts at the lower
  // endpoint of the q-th K_n pair (lexicographic) and wins exactly that pair.
  fx.script.picks.resize(2);
  for (std::uint32_t q = 0; q < m; ++q) {
    fx.script.picks[0].emplace_back(q, ring_base + q);
    Edge ring_edge(ring_base + q, ring_base + (q + 1) % m);
    fx.script.one_hop_claims.emplace(ring_edge, std::make_pair(q, 0u));
  }
  std::uint32_t q = 0;
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j, ++q) {
      fx.script.picks[1].emplace_back(q, i);
      fx.script.one_hop_claims.emplace(Edge(i, j), std::make_pair(q, 1u));
    }
  }

  const double replicas = 2.0 * double(n) * double(n - 1);
  fx.expected_rf = replicas / double(total_vertices);
  fx.expected_ub = (replicas + double(n)) / double(total_vertices);
  return fx;
}

}  // namespace nepart

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

#ifndef NEPART_FIXTURES_HPP
#define NEPART_FIXTURES_HPP

#include <cstdint>

#include "nepart/engine.hpp"
#include "nepart/graph.hpp"

namespace nepart {

/// Worst-case instance for the replication bound: K_n plus a disjoint ring
/// of n(n-1)/2 vertices, partitioned n(n-1)/2 ways. The script makes every
/// partition's first pick a distinct ring vertex and its second pick land
/// in K_n, each winning exactly one edge, so every partition ends with two
/// disconnected edges.
struct TightnessFixture {
  Graph graph;
  ForcedScript script;
  std::uint32_t num_partitions = 0;
  double expected_rf = 0.0;  // 2n(n-1) / |V|
  double expected_ub = 0.0;  // (2n(n-1) + n) / |V|
};

/// Requires n >= 3.
TightnessFixture build_tightness_fixture(std::uint32_t n);

}  // namespace nepart

#endif  // NEPART_FIXTURES_HPP

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

#ifndef NEPART_BASELINES_HPP
#define NEPART_BASELINES_HPP

#include <cstdint>

#include "nepart/graph.hpp"
#include "nepart/metrics.hpp"

namespace nepart {

enum class BaselineKind { Random1D, Grid2D, DBH, SequentialNE };

/// 1D hash: every edge lands on an independent uniform partition.
PartitionAssignment partition_random(const Graph& g, std::uint32_t parts,
                                     std::uint64_t seed);

/// 2D grid hash: cell (row of src, col of dst); vertex replicas are bounded
/// by one grid row plus one column.
PartitionAssignment partition_grid(const Graph& g, std::uint32_t parts,
                                   std::uint64_t seed);

/// Degree-based hashing: an edge follows its lower-degree endpoint
/// (degree ties hash the smaller vertex id).
PartitionAssignment partition_dbh(const Graph& g, std::uint32_t parts,
                                  std::uint64_t seed);

/// Sequential neighbor expansion: partitions grown one at a time from a
/// random vertex, min-D_rest selection with exact scores and two-hop
/// closure, each stopped at alpha*|E|/|P| edges.
PartitionAssignment partition_sequential_ne(const Graph& g,
                                            std::uint32_t parts, double alpha,
                                            std::uint64_t seed);

}  // namespace nepart

#endif  // NEPART_BASELINES_HPP

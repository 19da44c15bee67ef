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

#include "nepart/grid.hpp"

#include <string>

namespace nepart {

GridPlacement::GridPlacement(std::uint32_t num_procs, std::uint64_t seed) {
  if (num_procs < 1) throw ConfigError("grid: need at least one process");
  rows_ = factor_rows(num_procs);
  cols_ = num_procs / rows_;
  row_salt_ = mix64(seed, 0x8badf00d5eed0001ULL);
  col_salt_ = mix64(seed, 0x8badf00d5eed0002ULL);
}

std::uint32_t GridPlacement::factor_rows(std::uint32_t p) {
  std::uint32_t best = 1;
  for (std::uint32_t r = 1; r * r <= p; ++r) {
    if (p % r == 0) best = r;
  }
  return best;
}

std::vector<std::uint32_t> GridPlacement::replica_set(VertexId v) const {
  const std::uint32_t row = row_of(v);
  const std::uint32_t col = col_of(v);
  std::vector<std::uint32_t> out;
  out.reserve(rows_ + cols_ - 1);
  for (std::uint32_t i = 0; i < rows_; ++i) {
    std::uint32_t proc = i * cols_ + col;
    if (i == row) {
      // Insert the whole row at its sorted position.
      for (std::uint32_t j = 0; j < cols_; ++j) out.push_back(row * cols_ + j);
    } else {
      out.push_back(proc);
    }
  }
  return out;
}

std::vector<std::vector<Edge>> place_edges_2d(const Graph& g,
                                              const GridPlacement& grid) {
  std::vector<std::vector<Edge>> shards(grid.num_procs());
  for (const Edge& e : g.edges()) {
    shards[grid.process_of(e)].push_back(e);
  }
  return shards;
}

}  // namespace nepart

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

#ifndef NEPART_GRID_HPP
#define NEPART_GRID_HPP

#include <cstdint>
#include <vector>

#include "nepart/graph.hpp"
#include "nepart/types.hpp"

namespace nepart {

/// 64-bit avalanche mixer (splitmix64 finalizer). Stateless and cheap;
/// distinct salts give independent hash functions.
inline std::uint64_t mix64(std::uint64_t x, std::uint64_t salt) {
  x += salt + 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// 2D-hash placement of edges onto a rows x cols process grid. A vertex's
/// replica set (its grid row plus its grid column) is a pure function of
/// the vertex id; nothing is stored per vertex.
class GridPlacement {
 public:
  GridPlacement() = default;
  GridPlacement(std::uint32_t num_procs, std::uint64_t seed);

  std::uint32_t num_procs() const { return rows_ * cols_; }
  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }

  std::uint32_t row_of(VertexId v) const {
    return static_cast<std::uint32_t>(mix64(v, row_salt_) % rows_);
  }
  std::uint32_t col_of(VertexId v) const {
    return static_cast<std::uint32_t>(mix64(v, col_salt_) % cols_);
  }

  /// Owning process of an edge: cell (row of src, col of dst).
  std::uint32_t process_of(const Edge& e) const {
    return row_of(e.src) * cols_ + col_of(e.dst);
  }

  bool in_replica_set(VertexId v, std::uint32_t proc) const {
    return proc / cols_ == row_of(v) || proc % cols_ == col_of(v);
  }

  /// All processes that may hold edges of v: its row plus its column,
  /// ascending, without the duplicate intersection cell.
  std::vector<std::uint32_t> replica_set(VertexId v) const;

  /// Largest divisor of p that is <= sqrt(p); prime p degenerates to 1 x p.
  static std::uint32_t factor_rows(std::uint32_t p);

 private:
  std::uint32_t rows_ = 1;
  std::uint32_t cols_ = 1;
  std::uint64_t row_salt_ = 0;
  std::uint64_t col_salt_ = 0;
};

/// Splits the graph's edges into one list per process. The lists are
/// pairwise disjoint and cover the edge set.
std::vector<std::vector<Edge>> place_edges_2d(const Graph& g,
                                              const GridPlacement& grid);

}  // namespace nepart

#endif  // NEPART_GRID_HPP

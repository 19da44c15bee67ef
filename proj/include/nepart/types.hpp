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

#ifndef NEPART_TYPES_HPP
#define NEPART_TYPES_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace nepart {

using VertexId = std::uint32_t;
using PartitionId = std::uint32_t;
using EdgeCount = std::uint64_t;

/// Sentinel for "not allocated to any partition yet".
inline constexpr PartitionId kNoPartition = 0xFFFFFFFFu;

/// Undirected edge, stored canonically with src <= dst.
struct Edge {
  VertexId src = 0;
  VertexId dst = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b) : src(a < b ? a : b), dst(a < b ? b : a) {}

  bool self_loop() const { return src == dst; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const {
    std::uint64_t k = (std::uint64_t(e.src) << 32) | e.dst;
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    return static_cast<std::size_t>(k);
  }
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad input data (edge lists, files).
struct ParseError : Error {
  using Error::Error;
};

/// Bad parameters or unsatisfiable configuration.
struct ConfigError : Error {
  using Error::Error;
};

/// Broken message-passing contract; indicates an internal bug.
struct ProtocolError : Error {
  using Error::Error;
};

}  // namespace nepart

#endif  // NEPART_TYPES_HPP

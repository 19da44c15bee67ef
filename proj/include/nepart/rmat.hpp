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

#ifndef NEPART_RMAT_HPP
#define NEPART_RMAT_HPP

#include <cstdint>

#include "nepart/graph.hpp"

namespace nepart {

/// Recursive-matrix generator parameters. Defaults follow the Graph500
/// quadrant probabilities.
struct RmatParams {
  std::uint32_t scale = 10;       // |V| = 2^scale
  std::uint32_t edge_factor = 16; // 2^scale * edge_factor directed samples
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  double d = 0.05;
  std::uint64_t seed = 0;
};

/// Draws 2^scale * edge_factor directed samples by recursive quadrant
/// descent, then canonicalizes, drops self-loops and dedups. Pure function
/// of the parameters. |V| of the result is exactly 2^scale.
Graph generate_rmat(const RmatParams& params);

}  // namespace nepart

#endif  // NEPART_RMAT_HPP

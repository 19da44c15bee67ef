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

#include "nepart/rmat.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace nepart {

namespace {

// Portable uniform double in [0,1); avoids std::uniform_real_distribution,
// whose output is not pinned by the standard.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Graph generate_rmat(const RmatParams& p) {
  if (p.scale < 1) throw ConfigError("rmat: scale must be >= 1");
  if (p.scale > 31) {
    throw ConfigError("rmat: scale " + std::to_string(p.scale) +
                      " overflows the 32-bit vertex id space");
  }
  if (p.edge_factor < 1) throw ConfigError("rmat: edge factor must be >= 1");
  double sum = p.a + p.b + p.c + p.d;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("rmat: quadrant probabilities must sum to 1");
  }
  if (p.a < 0 || p.b < 0 || p.c < 0 || p.d < 0) {
    throw ConfigError("rmat: quadrant probabilities must be non-negative");
  }

  const VertexId n = VertexId(1) << p.scale;
  const EdgeCount samples = EdgeCount(n) * p.edge_factor;
  const double ab = p.a + p.b;
  const double abc = p.a + p.b + p.c;

  std::mt19937_64 rng(p.seed);
  std::vector<Edge> edges;
  edges.reserve(samples);
  for (EdgeCount i = 0; i < samples; ++i) {
    VertexId u = 0;
    VertexId v = 0;
    for (std::uint32_t bit = 0; bit < p.scale; ++bit) {
      double r = next_unit(rng);
      std::uint32_t q = r < p.a ? 0 : r < ab ? 1 : r < abc ? 2 : 3;
      u = (u << 1) | (q >> 1);
      v = (v << 1) | (q & 1);
    }
    if (u == v) continue;
    edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace nepart

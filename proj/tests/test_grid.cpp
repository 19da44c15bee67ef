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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "nepart/grid.hpp"
#include "nepart/rmat.hpp"
#include "test_util.hpp"

using namespace nepart;

TEST_CASE("grid factorization picks the largest divisor under the root") {
  CHECK(GridPlacement::factor_rows(1) == 1);
  CHECK(GridPlacement::factor_rows(4) == 2);
  CHECK(GridPlacement::factor_rows(12) == 3);
  CHECK(GridPlacement::factor_rows(16) == 4);
  CHECK(GridPlacement::factor_rows(32) == 4);
  CHECK(GridPlacement::factor_rows(7) == 1);  // prime degenerates to 1D
  GridPlacement g(32, 0);
  CHECK(g.rows() * g.cols() == 32);
  CHECK(g.rows() == 4);
}

TEST_CASE("zero processes are rejected") {
  CHECK_THROWS_AS(GridPlacement(0, 1), ConfigError);
}

TEST_CASE("single process holds everything") {
  Graph g = testutil::ring_graph(8);
  GridPlacement grid(1, 3);
  auto shards = place_edges_2d(g, grid);
  REQUIRE(shards.size() == 1);
  CHECK(shards[0].size() == g.edge_count());
}

TEST_CASE("shards are a disjoint cover") {
  Graph g = Graph::from_edges(3, {Edge(0, 1), Edge(1, 2)});
  GridPlacement grid(4, 9);
  auto shards = place_edges_2d(g, grid);
  std::multiset<Edge> seen;
  for (const auto& shard : shards) {
    for (const Edge& e : shard) seen.insert(e);
  }
  REQUIRE(seen.size() == g.edge_count());
  for (const Edge& e : g.edges()) CHECK(seen.count(e) == 1);
}

TEST_CASE("disjoint cover holds on generated graphs") {
  RmatParams p{.scale = 8, .edge_factor = 8, .seed = 5};
  Graph g = generate_rmat(p);
  for (std::uint32_t procs : {3u, 8u, 13u}) {
    GridPlacement grid(procs, 1);
    auto shards = place_edges_2d(g, grid);
    EdgeCount total = 0;
    std::set<Edge> seen;
    for (const auto& shard : shards) {
      total += shard.size();
      seen.insert(shard.begin(), shard.end());
    }
    CHECK(total == g.edge_count());
    CHECK(seen.size() == g.edge_count());
  }
}

TEST_CASE("replica sets are consistent with edge placement") {
  RmatParams p{.scale = 7, .edge_factor = 6, .seed = 3};
  Graph g = generate_rmat(p);
  GridPlacement grid(6, 42);
  auto shards = place_edges_2d(g, grid);

  // Vertex appears in a shard's edge set only within its replica set, and
  // the replica set is exactly one grid row plus one column.
  for (std::uint32_t s = 0; s < shards.size(); ++s) {
    for (const Edge& e : shards[s]) {
      CHECK(grid.in_replica_set(e.src, s));
      CHECK(grid.in_replica_set(e.dst, s));
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); v += 11) {
    auto set = grid.replica_set(v);
    CHECK(set.size() == grid.rows() + grid.cols() - 1);
    CHECK(std::is_sorted(set.begin(), set.end()));
    for (std::uint32_t s = 0; s < grid.num_procs(); ++s) {
      bool in = std::binary_search(set.begin(), set.end(), s);
      CHECK(in == grid.in_replica_set(v, s));
    }
  }
}

TEST_CASE("hash placement balances shards on a skewed graph") {
  RmatParams p{.scale = 10, .edge_factor = 16, .seed = 12};
  Graph g = generate_rmat(p);
  GridPlacement grid(16, 7);
  auto shards = place_edges_2d(g, grid);
  std::size_t max_shard = 0;
  for (const auto& shard : shards) max_shard = std::max(max_shard, shard.size());
  double mean = double(g.edge_count()) / double(shards.size());
  CHECK(double(max_shard) <= 2.0 * mean);
}

TEST_CASE("placement is a pure function of the seed") {
  Graph g = testutil::erdos_renyi(50, 120, 9);
  GridPlacement a(6, 1234), b(6, 1234), c(6, 99);
  bool any_differs = false;
  for (const Edge& e : g.edges()) {
    CHECK(a.process_of(e) == b.process_of(e));
    any_differs |= a.process_of(e) != c.process_of(e);
  }
  CHECK(any_differs);
}

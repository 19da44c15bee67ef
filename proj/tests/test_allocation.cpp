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
#include <random>
#include <set>
#include <thread>
#include <vector>

#include "nepart/allocation.hpp"
#include "test_util.hpp"

using namespace nepart;
using runtime::VertexPartitionPair;

namespace {

AllocationShard make_shard(std::vector<Edge> edges, VertexId n,
                           std::uint32_t parts, const GridPlacement& grid) {
  return AllocationShard(0, SubGraph::build(std::move(edges), n), parts, grid);
}

}  // namespace

static const GridPlacement kSingleGrid(1, 0);

TEST_CASE("one claimer takes all unallocated neighbors") {
  auto shard =
      make_shard({Edge(0, 1), Edge(0, 2), Edge(0, 3)}, 4, 2, kSingleGrid);
  std::vector<VertexPartitionPair> batch{{0, 1}};
  auto result = shard.allocate_one_hop(batch, 0);
  CHECK(result.claimed.size() == 3);
  CHECK(result.new_boundary.size() == 3);
  for (const auto& rec : result.claimed) CHECK(rec.partition == 1);
  for (const auto& bp : result.new_boundary) {
    CHECK(bp.partition == 1);
    CHECK(shard.has_tag(bp.vertex, 1));
  }
  CHECK(shard.rest_degree(0) == 0);
  CHECK(shard.unallocated_count() == 0);
  CHECK(shard.partition_local_edges(1) == 3);
}

TEST_CASE("vertex with no unallocated neighbors yields nothing") {
  auto shard = make_shard({Edge(0, 1)}, 2, 2, kSingleGrid);
  std::vector<VertexPartitionPair> first{{0, 0}};
  shard.allocate_one_hop(first, 0);
  std::vector<VertexPartitionPair> second{{1, 1}};
  auto result = shard.allocate_one_hop(second, 0);
  CHECK(result.claimed.empty());
  CHECK(result.new_boundary.empty());
}

TEST_CASE("duplicate pairs in a batch are idempotent") {
  auto shard = make_shard({Edge(0, 1), Edge(0, 2)}, 3, 2, kSingleGrid);
  std::vector<VertexPartitionPair> batch{{0, 1}, {0, 1}};
  auto result = shard.allocate_one_hop(batch, 0);
  CHECK(result.claimed.size() == 2);
  CHECK(result.new_boundary.size() == 2);
}

TEST_CASE("racing claims end with exactly one owner per edge") {
  // Star around vertex 0: every thread tries to claim all of its edges for
  // a different partition.
  const VertexId leaves = 64;
  const std::uint32_t threads = 8;
  const int rounds = 200;  // ~100k racing claim attempts in total
  for (int round = 0; round < rounds; ++round) {
    std::vector<Edge> edges;
    for (VertexId i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    auto shard = make_shard(std::move(edges), leaves + 1, threads, kSingleGrid);
    std::vector<std::vector<runtime::EdgeAssignmentRecord>> claims(threads);
    std::vector<std::thread> pool;
    for (std::uint32_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        std::vector<VertexPartitionPair> batch{{0, t}};
        claims[t] = shard.allocate_one_hop(batch, 0).claimed;
      });
    }
    for (auto& th : pool) th.join();

    std::set<Edge> seen;
    std::size_t total = 0;
    for (std::uint32_t t = 0; t < threads; ++t) {
      total += claims[t].size();
      for (const auto& rec : claims[t]) {
        CHECK(rec.partition == t);
        seen.insert(rec.edge);
      }
    }
    REQUIRE(total == leaves);        // nothing lost, nothing doubled
    REQUIRE(seen.size() == leaves);  // every edge claimed exactly once
    for (VertexId i = 1; i <= leaves; ++i) {
      CHECK(shard.edge_owner(i - 1) != kNoPartition);
    }
  }
}

TEST_CASE("tag sync merges replica tags and reports fresh pairs") {
  auto shard = make_shard({Edge(0, 1)}, 3, 4, kSingleGrid);
  std::vector<VertexPartitionPair> pairs{{2, 1}, {2, 1}, {2, 3}};
  auto fresh = shard.apply_tag_sync(pairs);
  REQUIRE(fresh.size() == 2);
  CHECK(shard.has_tag(2, 1));
  CHECK(shard.has_tag(2, 3));
  CHECK_FALSE(shard.has_tag(2, 0));
  // Second application adds nothing.
  CHECK(shard.apply_tag_sync(pairs).empty());
}

TEST_CASE("tag sync outside the replica set is a protocol error") {
  // With a 2x2 grid, find a vertex not replicated on shard 0.
  GridPlacement grid(4, 5);
  VertexId outsider = 0;
  while (grid.in_replica_set(outsider, 0)) ++outsider;
  AllocationShard shard(0, SubGraph::build({}, outsider + 1), 4, grid);
  std::vector<VertexPartitionPair> pairs{{outsider, 1}};
  CHECK_THROWS_AS(shard.apply_tag_sync(pairs), ProtocolError);
}

TEST_CASE("two-hop claims an edge whose endpoints share a tag") {
  auto shard = make_shard({Edge(5, 6)}, 7, 3, kSingleGrid);
  shard.apply_tag_sync(std::vector<VertexPartitionPair>{{5, 2}, {6, 2}});
  std::vector<VertexPartitionPair> boundary{{5, 2}, {6, 2}};
  auto claimed = shard.allocate_two_hop(boundary);
  REQUIRE(claimed.size() == 1);
  CHECK(claimed[0].edge == Edge(5, 6));
  CHECK(claimed[0].partition == 2);
}

TEST_CASE("empty tag intersection leaves the edge untouched") {
  auto shard = make_shard({Edge(0, 1)}, 2, 3, kSingleGrid);
  shard.apply_tag_sync(std::vector<VertexPartitionPair>{{0, 1}, {1, 2}});
  std::vector<VertexPartitionPair> boundary{{0, 1}, {1, 2}};
  auto claimed = shard.allocate_two_hop(boundary);
  CHECK(claimed.empty());
  CHECK(shard.edge_owner(0) == kNoPartition);
}

TEST_CASE("two-hop argmin picks the shard-locally smaller partition") {
  // Partition 1 owns 10 local edges, partition 2 owns 7; both tag (0,1).
  std::vector<Edge> edges{Edge(0, 1)};
  for (VertexId i = 0; i < 10; ++i) edges.emplace_back(10 + i, 40 + i);
  for (VertexId i = 0; i < 7; ++i) edges.emplace_back(20 + i, 60 + i);
  auto shard = make_shard(std::move(edges), 70, 3, kSingleGrid);
  std::vector<VertexPartitionPair> load;
  for (VertexId i = 0; i < 10; ++i) load.push_back({10 + i, 1});
  for (VertexId i = 0; i < 7; ++i) load.push_back({20 + i, 2});
  shard.allocate_one_hop(load, 0);
  REQUIRE(shard.partition_local_edges(1) == 10);
  REQUIRE(shard.partition_local_edges(2) == 7);

  shard.apply_tag_sync(std::vector<VertexPartitionPair>{
      {0, 1}, {0, 2}, {1, 1}, {1, 2}});
  std::vector<VertexPartitionPair> boundary{{0, 1}};
  auto claimed = shard.allocate_two_hop(boundary);
  REQUIRE(claimed.size() == 1);
  CHECK(claimed[0].partition == 2);
}

TEST_CASE("two-hop ties break toward the smaller partition id") {
  auto shard = make_shard({Edge(0, 1)}, 2, 4, kSingleGrid);
  shard.apply_tag_sync(std::vector<VertexPartitionPair>{
      {0, 1}, {0, 3}, {1, 1}, {1, 3}});
  std::vector<VertexPartitionPair> boundary{{0, 1}};
  auto claimed = shard.allocate_two_hop(boundary);
  REQUIRE(claimed.size() == 1);
  CHECK(claimed[0].partition == 1);
}

TEST_CASE("local drest counts unallocated incident edges") {
  auto shard =
      make_shard({Edge(0, 1), Edge(0, 2), Edge(0, 3), Edge(0, 4)}, 5, 2,
                 kSingleGrid);
  std::vector<VertexPartitionPair> batch{{1, 0}};
  shard.allocate_one_hop(batch, 0);  // claims (0,1) only
  auto scores =
      shard.compute_local_drest(std::vector<VertexPartitionPair>{{0, 0}});
  REQUIRE(scores.size() == 1);
  CHECK(scores[0].local_drest == 3);

  std::vector<VertexPartitionPair> rest{{0, 1}};
  shard.allocate_one_hop(rest, 0);
  scores = shard.compute_local_drest(std::vector<VertexPartitionPair>{{0, 0}});
  CHECK(scores[0].local_drest == 0);
}

TEST_CASE("local drest matches a full CSR scan on a random shard") {
  Graph g = testutil::erdos_renyi(60, 150, 17);
  auto shard = make_shard({g.edges().begin(), g.edges().end()},
                          g.vertex_count(), 4, kSingleGrid);
  std::mt19937_64 rng(3);
  std::vector<VertexPartitionPair> batch;
  for (int i = 0; i < 10; ++i) {
    batch.push_back({static_cast<VertexId>(rng() % 60),
                     static_cast<PartitionId>(rng() % 4)});
  }
  std::sort(batch.begin(), batch.end(), [](auto a, auto b) {
    return a.vertex != b.vertex ? a.vertex < b.vertex
                                : a.partition < b.partition;
  });
  shard.allocate_one_hop(batch, 0);

  const SubGraph& sub = shard.subgraph();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::uint32_t expected = 0;
    for (std::uint64_t i = sub.begin_of(v); i < sub.end_of(v); ++i) {
      if (shard.edge_owner(sub.entry(i).slot) == kNoPartition) ++expected;
    }
    auto scores =
        shard.compute_local_drest(std::vector<VertexPartitionPair>{{v, 0}});
    CHECK(scores[0].local_drest == expected);
  }
}

TEST_CASE("sweep with no leftovers is empty") {
  auto shard = make_shard({Edge(0, 1)}, 2, 2, kSingleGrid);
  std::vector<VertexPartitionPair> batch{{0, 0}};
  shard.allocate_one_hop(batch, 0);
  std::vector<std::uint64_t> sizes{1, 0};
  CHECK(shard.sweep_leftovers(sizes).empty());
}

TEST_CASE("sweep assigns a leftover to the covering partition") {
  auto shard = make_shard({Edge(0, 1), Edge(1, 2)}, 3, 5, kSingleGrid);
  std::vector<VertexPartitionPair> batch{{0, 3}};
  shard.allocate_one_hop(batch, 0);  // (0,1) -> 3, vertex 1 tagged 3
  std::vector<std::uint64_t> sizes{0, 0, 0, 1, 0};
  auto swept = shard.sweep_leftovers(sizes);
  REQUIRE(swept.size() == 1);
  CHECK(swept[0].edge == Edge(1, 2));
  CHECK(swept[0].partition == 3);
  CHECK(sizes[3] == 2);
  CHECK(shard.unallocated_count() == 0);
}

TEST_CASE("sweep with no covering partition picks the globally smallest") {
  auto shard = make_shard({Edge(4, 5)}, 6, 3, kSingleGrid);
  std::vector<std::uint64_t> sizes{4, 2, 9};
  auto swept = shard.sweep_leftovers(sizes);
  REQUIRE(swept.size() == 1);
  CHECK(swept[0].partition == 1);
}

TEST_CASE("adversarial cap-exhaustion state sweeps to a valid assignment") {
  Graph g = testutil::erdos_renyi(40, 120, 23);
  auto shard = make_shard({g.edges().begin(), g.edges().end()},
                          g.vertex_count(), 4, kSingleGrid);
  // Partial one-hop load, then force-terminate and sweep the rest.
  std::vector<VertexPartitionPair> batch{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  auto result = shard.allocate_one_hop(batch, 0);
  std::vector<std::uint64_t> sizes(4, 0);
  for (const auto& rec : result.claimed) ++sizes[rec.partition];
  auto swept = shard.sweep_leftovers(sizes);
  CHECK(shard.unallocated_count() == 0);

  std::vector<runtime::EdgeAssignmentRecord> records = result.claimed;
  records.insert(records.end(), swept.begin(), swept.end());
  CHECK(validate_assignment_records(g, 4, records).empty());
}

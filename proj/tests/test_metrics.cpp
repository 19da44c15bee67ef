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

#include <array>

#include "nepart/fixtures.hpp"
#include "nepart/metrics.hpp"
#include "test_util.hpp"

using namespace nepart;

TEST_CASE("replication factor of a single-partition path is one") {
  Graph g = Graph::from_edges(3, {Edge(0, 1), Edge(1, 2)});
  PartitionAssignment a(1, {0, 0});
  CHECK(replication_factor(a, g) == doctest::Approx(1.0));
}

TEST_CASE("replication factor counts the shared endpoint twice") {
  Graph g = Graph::from_edges(3, {Edge(0, 1), Edge(1, 2)});
  PartitionAssignment a(2, {0, 1});
  CHECK(replication_factor(a, g) == doctest::Approx(4.0 / 3.0));
  CHECK(testutil::brute_force_rf(g, a) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("balance of equal values is one") {
  std::array<std::uint64_t, 3> v{4, 4, 4};
  CHECK(balance(v) == doctest::Approx(1.0));
}

TEST_CASE("balance of {2,0} is two") {
  std::array<std::uint64_t, 2> v{2, 0};
  CHECK(balance(v) == doctest::Approx(2.0));
}

TEST_CASE("all-zero balance is an error") {
  std::array<std::uint64_t, 2> v{0, 0};
  CHECK_THROWS_AS(balance(v), ConfigError);
}

TEST_CASE("theoretical upper bound arithmetic") {
  CHECK(theoretical_upper_bound(10, 12, 6) == doctest::Approx(2.8));
  CHECK(theoretical_upper_bound(2, 1, 1) == doctest::Approx(2.0));
  // Ring-like graphs with few partitions sit near 2.
  CHECK(theoretical_upper_bound(1000, 1000, 4) ==
        doctest::Approx(2.0).epsilon(0.01));
  CHECK_THROWS_AS(theoretical_upper_bound(0, 5, 2), ConfigError);
}

TEST_CASE("power-law expected bounds match their pinned values") {
  CHECK(std::abs(powerlaw_expected_ub(2.2) - 2.88) < 0.005);
  CHECK(std::abs(powerlaw_expected_ub(2.4) - 2.12) < 0.005);
  CHECK(std::abs(powerlaw_expected_ub(2.6) - 1.88) < 0.005);
  CHECK(std::abs(powerlaw_expected_ub(2.8) - 1.75) < 0.005);
}

TEST_CASE("power-law bound is strictly decreasing on (2,3)") {
  double prev = powerlaw_expected_ub(2.05);
  for (double a = 2.15; a < 3.0; a += 0.1) {
    double cur = powerlaw_expected_ub(a);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("power-law bound rejects divergent and out-of-domain exponents") {
  CHECK_THROWS_AS(powerlaw_expected_ub(2.0), ConfigError);
  CHECK_THROWS_AS(powerlaw_expected_ub(1.5), ConfigError);
  CHECK_THROWS_AS(powerlaw_expected_ub(3.0), ConfigError);
}

TEST_CASE("tightness fixture arithmetic") {
  auto fx = build_tightness_fixture(4);
  CHECK(fx.graph.vertex_count() == 10);
  CHECK(fx.graph.edge_count() == 12);
  CHECK(fx.num_partitions == 6);
  CHECK(fx.expected_rf == doctest::Approx(2.4));
  CHECK(fx.expected_ub == doctest::Approx(2.8));
  CHECK(fx.expected_rf / fx.expected_ub == doctest::Approx(24.0 / 28.0));

  auto fx32 = build_tightness_fixture(32);
  CHECK(fx32.expected_rf / fx32.expected_ub ==
        doctest::Approx(1984.0 / 2016.0));
}

TEST_CASE("tightness ratio increases toward one") {
  double prev = 0.0;
  for (std::uint32_t n : {3u, 4u, 6u, 8u, 16u, 32u, 64u}) {
    auto fx = build_tightness_fixture(n);
    double ratio = fx.expected_rf / fx.expected_ub;
    CHECK(ratio > prev);
    prev = ratio;
  }
  CHECK(prev > 0.99);
}

TEST_CASE("tightness fixture rejects n below three") {
  CHECK_THROWS_AS(build_tightness_fixture(2), ConfigError);
}

TEST_CASE("validation accepts a complete disjoint record set") {
  Graph g = Graph::from_edges(3, {Edge(0, 1), Edge(1, 2)});
  std::vector<runtime::EdgeAssignmentRecord> records{{Edge(0, 1), 0},
                                                     {Edge(1, 2), 1}};
  CHECK(validate_assignment_records(g, 2, records).empty());
}

TEST_CASE("validation names a missing edge") {
  Graph g = Graph::from_edges(3, {Edge(0, 1), Edge(1, 2)});
  std::vector<runtime::EdgeAssignmentRecord> records{{Edge(0, 1), 0}};
  auto violations = validate_assignment_records(g, 2, records);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("(1,2)") != std::string::npos);
  CHECK(violations[0].find("unassigned") != std::string::npos);
}

TEST_CASE("validation flags a duplicated claim") {
  Graph g = Graph::from_edges(2, {Edge(0, 1)});
  std::vector<runtime::EdgeAssignmentRecord> records{{Edge(0, 1), 0},
                                                     {Edge(0, 1), 1}};
  auto violations = validate_assignment_records(g, 2, records);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("twice") != std::string::npos);
}

TEST_CASE("validation flags foreign edges and bad partition ids") {
  Graph g = Graph::from_edges(3, {Edge(0, 1)});
  std::vector<runtime::EdgeAssignmentRecord> records{{Edge(0, 1), 5},
                                                     {Edge(0, 2), 0}};
  auto violations = validate_assignment_records(g, 2, records);
  CHECK(violations.size() == 3);  // bad id, foreign edge, (0,1) unassigned
}

TEST_CASE("csv row matches the schema") {
  QualityReport r;
  r.graph = "g.el";
  r.partitioner = "dne";
  r.partitions = 8;
  r.alpha = 1.1;
  r.lambda = 0.1;
  r.seed = 3;
  r.rf = 1.5;
  r.ub = 3.0;
  r.eb = 1.05;
  r.vb = 1.2;
  r.iterations = 17;
  r.elapsed_ms = 12.5;
  CHECK(to_csv_row(r) == "g.el,dne,8,1.1,0.1,3,1.5,3,1.05,1.2,17,12.5");
  CHECK(std::string(kQualityReportCsvHeader) ==
        "graph,partitioner,P,alpha,lambda,seed,rf,ub,eb,vb,iterations,"
        "elapsed_ms");
}

TEST_CASE("isolated vertices stay in the denominator") {
  // Vertex 2 has no edges; it still counts toward |V|.
  Graph g = Graph::from_edges(3, {Edge(0, 1)});
  PartitionAssignment a(1, {0});
  CHECK(replication_factor(a, g) == doctest::Approx(2.0 / 3.0));
  // Never below the covered fraction 1 - isolated/|V|.
  CHECK(replication_factor(a, g) >= 1.0 - 1.0 / 3.0 - 1e-12);
}

TEST_CASE("rf is at least the covered-vertex fraction") {
  Graph g = testutil::erdos_renyi(30, 60, 2);
  PartitionAssignment a(3, [&] {
    std::vector<PartitionId> v(g.edge_count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i % 3;
    return v;
  }());
  std::set<VertexId> covered;
  for (const Edge& e : g.edges()) {
    covered.insert(e.src);
    covered.insert(e.dst);
  }
  CHECK(replication_factor(a, g) >=
        double(covered.size()) / double(g.vertex_count()) - 1e-12);
}

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

#include "nepart/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nepart {

PartitionAssignment::PartitionAssignment(
    std::uint32_t num_partitions, std::vector<PartitionId> partition_of_edge)
    : num_partitions_(num_partitions),
      partition_of_edge_(std::move(partition_of_edge)) {
  for (PartitionId p : partition_of_edge_) {
    if (p >= num_partitions_) {
      throw ConfigError("assignment: partition id " + std::to_string(p) +
                        " out of range");
    }
  }
}

PartitionAssignment PartitionAssignment::from_records(
    const Graph& g, std::uint32_t num_partitions,
    std::span<const runtime::EdgeAssignmentRecord> records) {
  auto violations = validate_assignment_records(g, num_partitions, records);
  if (!violations.empty()) {
    throw ConfigError("invalid assignment: " + violations.front() +
                      (violations.size() > 1
                           ? " (+" + std::to_string(violations.size() - 1) +
                                 " more)"
                           : ""));
  }
  std::vector<PartitionId> out(g.edge_count(), kNoPartition);
  const auto edges = g.edges();
  for (const auto& rec : records) {
    auto it = std::lower_bound(edges.begin(), edges.end(), rec.edge);
    out[std::size_t(it - edges.begin())] = rec.partition;
  }
  return PartitionAssignment(num_partitions, std::move(out));
}

std::vector<std::string> validate_assignment_records(
    const Graph& g, std::uint32_t num_partitions,
    std::span<const runtime::EdgeAssignmentRecord> records) {
  std::vector<std::string> violations;
  const auto edges = g.edges();
  std::vector<PartitionId> seen(g.edge_count(), kNoPartition);

  auto edge_str = [](const Edge& e) {
    return "(" + std::to_string(e.src) + "," + std::to_string(e.dst) + ")";
  };

  for (const auto& rec : records) {
    if (rec.partition >= num_partitions) {
      violations.push_back("edge " + edge_str(rec.edge) + " assigned to " +
                           std::to_string(rec.partition) + " >= |P|");
      continue;
    }
    auto it = std::lower_bound(edges.begin(), edges.end(), rec.edge);
    if (it == edges.end() || *it != rec.edge) {
      violations.push_back("edge " + edge_str(rec.edge) +
                           " is not in the graph");
      continue;
    }
    std::size_t idx = std::size_t(it - edges.begin());
    if (seen[idx] != kNoPartition) {
      violations.push_back("edge " + edge_str(rec.edge) +
                           " claimed twice (partitions " +
                           std::to_string(seen[idx]) + " and " +
                           std::to_string(rec.partition) + ")");
      continue;
    }
    seen[idx] = rec.partition;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] == kNoPartition) {
      violations.push_back("edge " + edge_str(edges[i]) + " is unassigned");
    }
  }
  return violations;
}

std::vector<std::uint64_t> PartitionAssignment::partition_edge_counts() const {
  std::vector<std::uint64_t> counts(num_partitions_, 0);
  for (PartitionId p : partition_of_edge_) ++counts[p];
  return counts;
}

std::vector<std::uint64_t> PartitionAssignment::partition_vertex_counts(
    const Graph& g) const {
  const std::size_t words = (std::size_t(g.vertex_count()) + 63) / 64;
  std::vector<std::uint64_t> cover(std::size_t(num_partitions_) * words, 0);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::size_t base = std::size_t(partition_of_edge_[i]) * words;
    cover[base + edges[i].src / 64] |= std::uint64_t(1) << (edges[i].src % 64);
    cover[base + edges[i].dst / 64] |= std::uint64_t(1) << (edges[i].dst % 64);
  }
  std::vector<std::uint64_t> counts(num_partitions_, 0);
  for (std::uint32_t p = 0; p < num_partitions_; ++p) {
    std::uint64_t n = 0;
    for (std::size_t w = 0; w < words; ++w) {
      n += static_cast<std::uint64_t>(
          __builtin_popcountll(cover[std::size_t(p) * words + w]));
    }
    counts[p] = n;
  }
  return counts;
}

double replication_factor(const PartitionAssignment& a, const Graph& g) {
  if (g.vertex_count() == 0) throw ConfigError("replication factor: |V| = 0");
  if (a.partition_of_edge().size() != g.edge_count()) {
    throw ConfigError("replication factor: assignment does not cover graph");
  }
  std::uint64_t replicas = 0;
  for (std::uint64_t c : a.partition_vertex_counts(g)) replicas += c;
  return double(replicas) / double(g.vertex_count());
}

double balance(std::span<const std::uint64_t> values) {
  if (values.empty()) throw ConfigError("balance: no partitions");
  std::uint64_t max = 0;
  std::uint64_t sum = 0;
  for (std::uint64_t v : values) {
    max = std::max(max, v);
    sum += v;
  }
  if (sum == 0) throw ConfigError("balance: all values are zero");
  return double(max) * double(values.size()) / double(sum);
}

double edge_balance(const PartitionAssignment& a, const Graph& g) {
  (void)g;
  auto counts = a.partition_edge_counts();
  return balance(counts);
}

double vertex_balance(const PartitionAssignment& a, const Graph& g) {
  auto counts = a.partition_vertex_counts(g);
  return balance(counts);
}

double theoretical_upper_bound(std::uint64_t vertices, std::uint64_t edges,
                               std::uint64_t partitions) {
  if (vertices == 0) throw ConfigError("upper bound: |V| = 0");
  if (edges == 0 || partitions == 0) {
    throw ConfigError("upper bound: |E| and |P| must be positive");
  }
  return double(edges + vertices + partitions) / double(vertices);
}

double riemann_zeta(double s) {
  if (s <= 1.0) throw ConfigError("zeta: diverges for s <= 1");
  // Partial sum plus integral bracket for the tail:
  //   (n+1)^(1-s)/(s-1)  <  tail  <  n^(1-s)/(s-1).
  double sum = 0.0;
  const double rel_tol = 1e-9;
  for (std::uint64_t n = 1; n < 50'000'000; ++n) {
    sum += std::pow(double(n), -s);
    if ((n & 0xF) != 0) continue;
    const double lo = std::pow(double(n + 1), 1.0 - s) / (s - 1.0);
    const double hi = std::pow(double(n), 1.0 - s) / (s - 1.0);
    if (hi - lo <= rel_tol * (sum + lo)) {
      return sum + 0.5 * (lo + hi);
    }
  }
  throw ConfigError("zeta: did not converge (s too close to 1)");
}

double powerlaw_expected_ub(double alpha) {
  if (alpha <= 2.0) {
    throw ConfigError("powerlaw bound: zeta(alpha-1) diverges for alpha <= 2");
  }
  if (alpha >= 3.0) {
    throw ConfigError("powerlaw bound: alpha must lie in (2,3)");
  }
  return 0.5 * riemann_zeta(alpha - 1.0) / riemann_zeta(alpha) + 1.0;
}

const char* const kQualityReportCsvHeader =
    "graph,partitioner,P,alpha,lambda,seed,rf,ub,eb,vb,iterations,elapsed_ms";

std::string to_csv_row(const QualityReport& r) {
  std::ostringstream out;
  out << r.graph << ',' << r.partitioner << ',' << r.partitions << ','
      << r.alpha << ',' << r.lambda << ',' << r.seed << ',' << r.rf << ','
      << r.ub << ',' << r.eb << ',' << r.vb << ',' << r.iterations << ','
      << r.elapsed_ms;
  return out.str();
}

QualityReport measure_quality(const PartitionAssignment& a, const Graph& g) {
  QualityReport r;
  r.partitions = a.num_partitions();
  r.rf = replication_factor(a, g);
  r.ub = theoretical_upper_bound(g.vertex_count(), g.edge_count(),
                                 a.num_partitions());
  r.eb = edge_balance(a, g);
  r.vb = vertex_balance(a, g);
  return r;
}

}  // namespace nepart

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

#ifndef NEPART_METRICS_HPP
#define NEPART_METRICS_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nepart/graph.hpp"
#include "nepart/runtime.hpp"
#include "nepart/types.hpp"

namespace nepart {

/// Total edge -> partition map, aligned with the graph's canonical edge
/// order. Totality and uniqueness hold by construction; from_records
/// additionally validates raw (edge, partition) lists.
class PartitionAssignment {
 public:
  PartitionAssignment() = default;
  PartitionAssignment(std::uint32_t num_partitions,
                      std::vector<PartitionId> partition_of_edge);

  /// Builds from unordered records, checking totality/disjointness/ranges.
  /// Throws ConfigError listing the first violation; use
  /// validate_assignment_records to collect all of them.
  static PartitionAssignment from_records(
      const Graph& g, std::uint32_t num_partitions,
      std::span<const runtime::EdgeAssignmentRecord> records);

  std::uint32_t num_partitions() const { return num_partitions_; }
  std::span<const PartitionId> partition_of_edge() const {
    return partition_of_edge_;
  }
  PartitionId partition_of(std::size_t edge_index) const {
    return partition_of_edge_[edge_index];
  }

  std::vector<std::uint64_t> partition_edge_counts() const;
  /// |V(E_p)| for every p, from per-partition endpoint bitsets.
  std::vector<std::uint64_t> partition_vertex_counts(const Graph& g) const;

 private:
  std::uint32_t num_partitions_ = 0;
  std::vector<PartitionId> partition_of_edge_;
};

/// Checks totality, disjointness and id ranges of raw records against the
/// graph. Violations are data, not errors.
std::vector<std::string> validate_assignment_records(
    const Graph& g, std::uint32_t num_partitions,
    std::span<const runtime::EdgeAssignmentRecord> records);

/// (1/|V|) * sum_p |V(E_p)|. Isolated vertices count toward |V|.
double replication_factor(const PartitionAssignment& a, const Graph& g);

/// max / mean of per-partition values; throws ConfigError when all zero.
double balance(std::span<const std::uint64_t> values);

double edge_balance(const PartitionAssignment& a, const Graph& g);
double vertex_balance(const PartitionAssignment& a, const Graph& g);

/// Replication-factor upper bound (|E| + |V| + |P|) / |V|.
double theoretical_upper_bound(std::uint64_t vertices, std::uint64_t edges,
                               std::uint64_t partitions);

/// Riemann zeta by direct summation with an integral tail bound, to
/// relative error < 1e-9.
double riemann_zeta(double s);

/// Expected bound for power-law graphs with exponent alpha in (2,3):
/// zeta(alpha-1)/zeta(alpha)/2 + 1. Throws ConfigError outside the domain.
double powerlaw_expected_ub(double alpha);

struct QualityReport {
  std::string graph;
  std::string partitioner;
  std::uint32_t partitions = 0;
  double alpha = 0.0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  double rf = 0.0;
  double ub = 0.0;
  double eb = 0.0;
  double vb = 0.0;
  std::uint64_t iterations = 0;
  double elapsed_ms = 0.0;
};

extern const char* const kQualityReportCsvHeader;
std::string to_csv_row(const QualityReport& r);

QualityReport measure_quality(const PartitionAssignment& a, const Graph& g);

}  // namespace nepart

#endif  // NEPART_METRICS_HPP

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

#ifndef NEPART_RUNTIME_HPP
#define NEPART_RUNTIME_HPP

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nepart/types.hpp"

namespace nepart::runtime {

enum class ProcessKind : std::uint8_t { Expansion, Allocation };

struct ProcessId {
  ProcessKind kind = ProcessKind::Expansion;
  std::uint32_t index = 0;

  friend bool operator==(const ProcessId&, const ProcessId&) = default;
};

inline ProcessId expansion_process(std::uint32_t i) {
  return {ProcessKind::Expansion, i};
}
inline ProcessId allocation_process(std::uint32_t i) {
  return {ProcessKind::Allocation, i};
}

std::string to_string(ProcessId id);

/// Bulk-synchronous phases of one engine iteration, in delivery order.
enum class Phase : std::uint8_t {
  Select,   // expansion: pop/pick vertices, multicast to allocators
  OneHop,   // allocation: claim one-hop edges, emit tag sync
  TagSync,  // allocation: merge replica tags
  TwoHop,   // allocation: closure claims on tagged pairs
  Report,   // allocation: local scores back to expansion
  Update,   // expansion: fold in new edges and boundary entries
  Gather,   // expansion: emit gather counts
  Check,    // expansion: fold gather, decide termination
};

const char* phase_name(Phase p);

// --- Message variants ------------------------------------------------------

struct VertexMulticast {
  PartitionId partition = 0;
  std::vector<VertexId> vertices;
};

struct VertexPartitionPair {
  VertexId vertex;
  PartitionId partition;
};

struct BoundarySync {
  std::vector<VertexPartitionPair> pairs;
};

struct BoundaryContribution {
  VertexId vertex;
  PartitionId partition;
  std::uint32_t local_drest;
};

struct NewBoundary {
  std::vector<BoundaryContribution> entries;
};

struct EdgeAssignmentRecord {
  Edge edge;
  PartitionId partition;
};

struct NewEdges {
  std::vector<EdgeAssignmentRecord> edges;
};

struct GatherCount {
  std::uint64_t count = 0;
};

using Payload =
    std::variant<VertexMulticast, BoundarySync, NewBoundary, NewEdges,
                 GatherCount>;

struct Message {
  ProcessId sender;
  std::uint32_t iteration = 0;
  std::uint64_t sequence = 0;  // per-sender, assigned by the router
  Payload payload;
};

const char* variant_name(const Payload& p);
std::size_t payload_size(const Payload& p);

// --- Router ----------------------------------------------------------------

/// In-process mailboxes for |P| expansion + |P| allocation processes,
/// with bulk-synchronous visibility: a sent message is staged until the
/// next publish() (the barrier at the end of the sending phase) and only
/// then becomes drainable. Drains hand messages out sorted by
/// (sender kind, sender index, sequence), which is also the deterministic
/// replay order. Every delivery can be traced as
/// `iter phase sender receiver variant size`.
class Router {
 public:
  explicit Router(std::uint32_t num_partitions, std::ostream* trace = nullptr);

  std::uint32_t num_partitions() const { return num_partitions_; }

  void send(ProcessId from, ProcessId to, std::uint32_t iteration,
            Payload payload);

  /// Enqueues one copy per target. Targets must be distinct and known,
  /// otherwise the protocol is broken.
  void multicast(ProcessId from, std::span<const ProcessId> targets,
                 std::uint32_t iteration, const Payload& payload);

  /// Barrier hook: makes everything staged so far drainable. Must not run
  /// concurrently with send/drain.
  void publish();

  /// Removes and returns the published messages for `receiver`, sorted by
  /// (sender, sequence). `phase` is recorded in the trace.
  std::vector<Message> drain(ProcessId receiver, Phase phase);

  std::uint64_t sent_count() const { return sent_.load(); }
  std::uint64_t delivered_count() const { return delivered_.load(); }
  bool all_delivered() const;

 private:
  struct Inbox {
    std::mutex mu;
    std::vector<Message> staged;
    std::vector<Message> ready;
  };

  Inbox& inbox_of(ProcessId id);
  void check_known(ProcessId id) const;

  std::uint32_t num_partitions_;
  std::vector<Inbox> inboxes_;  // expansion 0..P-1, allocation P..2P-1
  std::vector<std::atomic<std::uint64_t>> next_sequence_;
  std::ostream* trace_;
  std::mutex trace_mu_;
  std::atomic<std::uint64_t> sent_{0};
  std::atomic<std::uint64_t> delivered_{0};
};

// --- Collectives -----------------------------------------------------------

/// All-gather-sum over the expansion processes, built on Router messages:
/// every expansion process multicasts GatherCount(local) to all expansion
/// processes, then folds the incoming counts. Throws ProtocolError when a
/// message carries the wrong iteration or a sender is missing/duplicated.
void all_gather_emit(Router& router, std::uint32_t self,
                     std::uint32_t iteration, std::uint64_t local);
std::uint64_t all_gather_fold(Router& router, std::uint32_t self,
                              std::uint32_t iteration);

// --- Barrier ---------------------------------------------------------------

/// Phase barrier for parallel mode. Deterministic mode never blocks; its
/// scheduler checks arrivals through an ArrivalLedger instead.
class Barrier {
 public:
  explicit Barrier(std::uint32_t parties);

  /// Blocks until all parties of the current generation arrived.
  void arrive_and_wait();

  std::uint32_t parties() const { return parties_; }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::uint32_t parties_;
  std::uint32_t waiting_ = 0;
  std::uint64_t generation_ = 0;
};

/// Cooperative-mode barrier bookkeeping: every participant must arrive
/// exactly once per generation. Advancing with someone missing raises a
/// diagnostic naming the stalled process instead of deadlocking.
class ArrivalLedger {
 public:
  explicit ArrivalLedger(std::vector<ProcessId> participants);

  void arrive(ProcessId who, std::uint32_t iteration);
  void advance(std::uint32_t iteration);

 private:
  std::vector<ProcessId> participants_;
  std::vector<bool> arrived_;
};

}  // namespace nepart::runtime

#endif  // NEPART_RUNTIME_HPP

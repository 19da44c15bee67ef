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

#include "nepart/runtime.hpp"

#include <algorithm>

namespace nepart::runtime {

std::string to_string(ProcessId id) {
  return (id.kind == ProcessKind::Expansion ? "E" : "A") +
         std::to_string(id.index);
}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Select: return "select";
    case Phase::OneHop: return "onehop";
    case Phase::TagSync: return "tagsync";
    case Phase::TwoHop: return "twohop";
    case Phase::Report: return "report";
    case Phase::Update: return "update";
    case Phase::Gather: return "gather";
    case Phase::Check: return "check";
  }
  return "?";
}

const char* variant_name(const Payload& p) {
  switch (p.index()) {
    case 0: return "VertexMulticast";
    case 1: return "BoundarySync";
    case 2: return "NewBoundary";
    case 3: return "NewEdges";
    case 4: return "GatherCount";
  }
  return "?";
}

std::size_t payload_size(const Payload& p) {
  switch (p.index()) {
    case 0: return std::get<VertexMulticast>(p).vertices.size();
    case 1: return std::get<BoundarySync>(p).pairs.size();
    case 2: return std::get<NewBoundary>(p).entries.size();
    case 3: return std::get<NewEdges>(p).edges.size();
    case 4: return 1;
  }
  return 0;
}

Router::Router(std::uint32_t num_partitions, std::ostream* trace)
    : num_partitions_(num_partitions),
      inboxes_(2 * std::size_t(num_partitions)),
      next_sequence_(2 * std::size_t(num_partitions)),
      trace_(trace) {
  if (num_partitions < 1) throw ConfigError("router: need >= 1 partition");
}

Router::Inbox& Router::inbox_of(ProcessId id) {
  check_known(id);
  std::size_t base = id.kind == ProcessKind::Expansion ? 0 : num_partitions_;
  return inboxes_[base + id.index];
}

void Router::check_known(ProcessId id) const {
  if (id.index >= num_partitions_) {
    throw ProtocolError("unknown process " + to_string(id) + " (|P|=" +
                        std::to_string(num_partitions_) + ")");
  }
}

void Router::send(ProcessId from, ProcessId to, std::uint32_t iteration,
                  Payload payload) {
  check_known(from);
  Inbox& box = inbox_of(to);
  std::size_t sender_slot =
      (from.kind == ProcessKind::Expansion ? 0 : num_partitions_) + from.index;
  Message m;
  m.sender = from;
  m.iteration = iteration;
  m.sequence = next_sequence_[sender_slot].fetch_add(1);
  m.payload = std::move(payload);
  {
    std::lock_guard lock(box.mu);
    box.staged.push_back(std::move(m));
  }
  sent_.fetch_add(1);
}

void Router::multicast(ProcessId from, std::span<const ProcessId> targets,
                       std::uint32_t iteration, const Payload& payload) {
  if (targets.empty()) {
    throw ProtocolError("multicast from " + to_string(from) +
                        " with no targets");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) {
        throw ProtocolError("multicast with duplicate target " +
                            to_string(targets[i]));
      }
    }
  }
  for (ProcessId t : targets) send(from, t, iteration, payload);
}

void Router::publish() {
  for (Inbox& box : inboxes_) {
    std::lock_guard lock(box.mu);
    box.ready.insert(box.ready.end(),
                     std::make_move_iterator(box.staged.begin()),
                     std::make_move_iterator(box.staged.end()));
    box.staged.clear();
  }
}

std::vector<Message> Router::drain(ProcessId receiver, Phase phase) {
  Inbox& box = inbox_of(receiver);
  std::vector<Message> out;
  {
    std::lock_guard lock(box.mu);
    out.swap(box.ready);
  }
  auto rank = [](const ProcessId& id) {
    return (std::uint64_t(id.kind == ProcessKind::Allocation) << 32) |
           id.index;
  };
  std::sort(out.begin(), out.end(), [&](const Message& a, const Message& b) {
    if (rank(a.sender) != rank(b.sender)) return rank(a.sender) < rank(b.sender);
    return a.sequence < b.sequence;
  });
  if (trace_ != nullptr && !out.empty()) {
    std::lock_guard lock(trace_mu_);
    for (const Message& m : out) {
      *trace_ << m.iteration << ' ' << phase_name(phase) << ' '
              << to_string(m.sender) << ' ' << to_string(receiver) << ' '
              << variant_name(m.payload) << ' ' << payload_size(m.payload)
              << '\n';
    }
  }
  delivered_.fetch_add(out.size());
  return out;
}

bool Router::all_delivered() const {
  return sent_.load() == delivered_.load();
}

void all_gather_emit(Router& router, std::uint32_t self,
                     std::uint32_t iteration, std::uint64_t local) {
  std::vector<ProcessId> targets;
  targets.reserve(router.num_partitions());
  for (std::uint32_t i = 0; i < router.num_partitions(); ++i) {
    targets.push_back(expansion_process(i));
  }
  router.multicast(expansion_process(self), targets, iteration,
                   GatherCount{local});
}

std::uint64_t all_gather_fold(Router& router, std::uint32_t self,
                              std::uint32_t iteration) {
  auto messages = router.drain(expansion_process(self), Phase::Check);
  if (messages.size() != router.num_partitions()) {
    throw ProtocolError("gather at E" + std::to_string(self) + ": expected " +
                        std::to_string(router.num_partitions()) +
                        " counts, got " + std::to_string(messages.size()));
  }
  std::uint64_t sum = 0;
  std::vector<bool> seen(router.num_partitions(), false);
  for (const Message& m : messages) {
    if (m.iteration != iteration) {
      throw ProtocolError("gather at E" + std::to_string(self) +
                          ": iteration mismatch (got " +
                          std::to_string(m.iteration) + ", expected " +
                          std::to_string(iteration) + ")");
    }
    const auto* count = std::get_if<GatherCount>(&m.payload);
    if (count == nullptr || m.sender.kind != ProcessKind::Expansion ||
        seen[m.sender.index]) {
      throw ProtocolError("gather at E" + std::to_string(self) +
                          ": malformed contribution from " +
                          to_string(m.sender));
    }
    seen[m.sender.index] = true;
    sum += count->count;
  }
  return sum;
}

Barrier::Barrier(std::uint32_t parties) : parties_(parties) {
  if (parties < 1) throw ConfigError("barrier: need >= 1 party");
}

void Barrier::arrive_and_wait() {
  std::unique_lock lock(mu_);
  std::uint64_t gen = generation_;
  if (++waiting_ == parties_) {
    waiting_ = 0;
    ++generation_;
    cv_.notify_all();
    return;
  }
  cv_.wait(lock, [&] { return generation_ != gen; });
}

ArrivalLedger::ArrivalLedger(std::vector<ProcessId> participants)
    : participants_(std::move(participants)),
      arrived_(participants_.size(), false) {
  if (participants_.empty()) {
    throw ConfigError("arrival ledger: no participants");
  }
}

void ArrivalLedger::arrive(ProcessId who, std::uint32_t iteration) {
  for (std::size_t i = 0; i < participants_.size(); ++i) {
    if (participants_[i] == who) {
      if (arrived_[i]) {
        throw ProtocolError("process " + to_string(who) +
                            " arrived twice at the barrier of iteration " +
                            std::to_string(iteration));
      }
      arrived_[i] = true;
      return;
    }
  }
  throw ProtocolError("unknown process " + to_string(who) +
                      " arrived at the barrier");
}

void ArrivalLedger::advance(std::uint32_t iteration) {
  for (std::size_t i = 0; i < participants_.size(); ++i) {
    if (!arrived_[i]) {
      throw ProtocolError("deadlock: process " + to_string(participants_[i]) +
                          " never arrived at the barrier of iteration " +
                          std::to_string(iteration));
    }
  }
  std::fill(arrived_.begin(), arrived_.end(), false);
}

}  // namespace nepart::runtime

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

#include "nepart/expansion.hpp"

#include <cmath>

#include "nepart/grid.hpp"

namespace nepart {

void Boundary::insert(VertexId v, std::uint32_t d_rest) {
  if (d_rest == 0) return;
  if (!score_.emplace(v, d_rest).second) return;
  queue_.emplace(d_rest, v);
}

void Boundary::decrement(VertexId v) {
  auto it = score_.find(v);
  if (it == score_.end()) return;
  queue_.erase({it->second, v});
  if (--it->second == 0) {
    score_.erase(it);
  } else {
    queue_.emplace(it->second, v);
  }
}

std::optional<BoundaryEntry> Boundary::pop_min() {
  if (queue_.empty()) return std::nullopt;
  auto [d, v] = *queue_.begin();
  queue_.erase(queue_.begin());
  score_.erase(v);
  return BoundaryEntry{v, d};
}

std::optional<BoundaryEntry> Boundary::peek_min() const {
  if (queue_.empty()) return std::nullopt;
  auto [d, v] = *queue_.begin();
  return BoundaryEntry{v, d};
}

std::size_t expansion_pick_count(double lambda, std::size_t boundary_size) {
  const double k = std::ceil(lambda * double(boundary_size));
  return std::max<std::size_t>(1, static_cast<std::size_t>(k));
}

ExpansionProcess::ExpansionProcess(PartitionId partition, double cap,
                                   double lambda, std::uint64_t seed)
    : partition_(partition),
      cap_(cap),
      lambda_(lambda),
      rng_(mix64(seed, 0xe9a17ull * (partition + 1))) {}

ExpansionProcess::Selection ExpansionProcess::select_from_boundary() {
  Selection sel;
  if (boundary_.empty()) return sel;
  const std::size_t k = expansion_pick_count(lambda_, boundary_.size());
  // The multi-expansion batch lands as a whole before the cap is checked
  // again, so stop requesting once the boundary scores (which can only
  // overestimate what is still claimable) project past the remaining
  // capacity.
  const double budget = cap_ - double(edges_.size());
  sel.picks.reserve(k);
  while (sel.picks.size() < k) {
    auto next = boundary_.peek_min();
    if (!next) break;
    if (sel.projected + double(next->d_rest) > budget) break;
    boundary_.pop_min();
    sel.picks.push_back(next->vertex);
    sel.projected += double(next->d_rest);
  }
  sel.min_unaffordable = sel.picks.empty();
  last_pick_count_ = sel.picks.size();
  return sel;
}

void ExpansionProcess::apply_new_edges(
    const std::vector<runtime::EdgeAssignmentRecord>& recs) {
  for (const auto& rec : recs) {
    edges_.push_back(rec.edge);
    // Scores of entries inserted in earlier iterations counted these edges
    // as unallocated; keep them honest for edges this partition won.
    boundary_.decrement(rec.edge.src);
    boundary_.decrement(rec.edge.dst);
  }
}

void ExpansionProcess::apply_new_boundary(
    const std::map<VertexId, std::uint64_t>& summed_scores) {
  for (const auto& [v, score] : summed_scores) {
    if (score == 0) continue;
    boundary_.insert(v, static_cast<std::uint32_t>(score));
  }
}

}  // namespace nepart

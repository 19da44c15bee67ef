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

#ifndef NEPART_GRAPH_HPP
#define NEPART_GRAPH_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "nepart/types.hpp"

namespace nepart {

/// Immutable undirected simple graph: a dense vertex id space plus a
/// sorted, duplicate-free canonical edge list. Safe to share across threads.
class Graph {
 public:
  Graph() = default;

  /// Canonicalizes, drops self-loops, dedups. Endpoints must be < vertex_count.
  static Graph from_edges(VertexId vertex_count, std::vector<Edge> edges);

  VertexId vertex_count() const { return vertex_count_; }
  EdgeCount edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  EdgeCount degree(VertexId v) const { return degrees_[v]; }
  std::span<const EdgeCount> degrees() const { return degrees_; }

 private:
  VertexId vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<EdgeCount> degrees_;
};

/// Parses whitespace-separated "u v" pairs; '#' lines are comments.
/// Vertex ids are remapped to 0..|V|-1 in order of first appearance,
/// self-loops dropped, duplicate undirected edges collapsed.
/// Throws ParseError (with line number) on malformed input or empty graphs.
Graph load_edge_list(std::istream& in);

/// Writes the canonical edge list back as "src dst" lines.
void save_edge_list(const Graph& g, std::ostream& out);

}  // namespace nepart

#endif  // NEPART_GRAPH_HPP

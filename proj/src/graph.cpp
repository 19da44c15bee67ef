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

#include "nepart/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

namespace nepart {

Graph Graph::from_edges(VertexId vertex_count, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.src >= vertex_count || e.dst >= vertex_count) {
      throw ConfigError("edge endpoint " +
                        std::to_string(std::max(e.src, e.dst)) +
                        " out of range for |V|=" + std::to_string(vertex_count));
    }
    e = Edge(e.src, e.dst);
  }
  std::erase_if(edges, [](const Edge& e) { return e.self_loop(); });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.vertex_count_ = vertex_count;
  g.edges_ = std::move(edges);
  g.degrees_.assign(vertex_count, 0);
  for (const Edge& e : g.edges_) {
    ++g.degrees_[e.src];
    ++g.degrees_[e.dst];
  }
  return g;
}

namespace {

bool parse_vertex(std::string_view token, VertexId& out) {
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return false;
  if (value > 0xFFFFFFFFull) return false;
  out = static_cast<VertexId>(value);
  return true;
}

}  // namespace

Graph load_edge_list(std::istream& in) {
  std::unordered_map<VertexId, VertexId> remap;
  std::vector<Edge> raw_edges;
  VertexId max_raw = 0;
  std::string line;
  std::size_t line_no = 0;

  auto dense_id = [&](VertexId raw) {
    auto [it, inserted] =
        remap.emplace(raw, static_cast<VertexId>(remap.size()));
    (void)inserted;
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;

    std::string_view rest(line.data() + pos, line.size() - pos);
    VertexId raw[2];
    for (int i = 0; i < 2; ++i) {
      std::size_t end = rest.find_first_of(" \t\r");
      std::string_view token = rest.substr(0, end);
      if (token.empty() || !parse_vertex(token, raw[i])) {
        throw ParseError("malformed edge at line " + std::to_string(line_no));
      }
      rest = end == std::string_view::npos ? std::string_view{}
                                           : rest.substr(end);
      pos = rest.find_first_not_of(" \t\r");
      rest = pos == std::string_view::npos ? std::string_view{}
                                           : rest.substr(pos);
    }
    if (!rest.empty()) {
      throw ParseError("trailing tokens at line " + std::to_string(line_no));
    }
    // Self-loops are dropped before densification; their vertex never
    // claims a dense id unless it appears on a real edge.
    if (raw[0] == raw[1]) continue;
    dense_id(raw[0]);
    dense_id(raw[1]);
    max_raw = std::max({max_raw, raw[0], raw[1]});
    raw_edges.emplace_back(raw[0], raw[1]);
  }
  if (remap.empty()) throw ParseError("empty edge list");

  // Inputs whose ids are already dense 0..|V|-1 keep them, which makes
  // loading a saved graph the identity. Everything else is renumbered in
  // order of first appearance.
  const VertexId count = static_cast<VertexId>(remap.size());
  if (std::size_t(max_raw) + 1 != count) {
    for (Edge& e : raw_edges) e = Edge(remap.at(e.src), remap.at(e.dst));
  }
  return Graph::from_edges(count, std::move(raw_edges));
}

void save_edge_list(const Graph& g, std::ostream& out) {
  for (const Edge& e : g.edges()) {
    out << e.src << ' ' << e.dst << '\n';
  }
}

}  // namespace nepart

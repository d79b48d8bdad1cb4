// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace npforge {

/// Simple undirected graph on vertices 0..n-1 stored as a dense symmetric
/// boolean adjacency matrix with zero diagonal.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}

  /// Throws InputError on self-loops or out-of-range endpoints. Duplicate
  /// edges are merged.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  static Graph complete(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph path(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i * n_ + j] != 0; }
  void add_edge(std::size_t i, std::size_t j);
  std::size_t degree(std::size_t i) const;
  std::size_t edge_count() const;
  std::vector<Edge> edges() const;

  /// Neighbour bitmask of vertex i; requires n <= 64.
  std::uint64_t neighbor_mask(std::size_t i) const;

  bool operator==(const Graph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> adj_;
};

/// Returns the graph with vertex v renamed to perm[v].
Graph relabel(const Graph& g, std::span<const std::size_t> perm);

bool is_connected(const Graph& g);

/// Parses either the "n m" + "u v" (0-based) edge-list format or DIMACS
/// graph format ("p edge n m", "e u v" 1-based, "c" comments).
Graph parse_graph(std::string_view text);

std::string format_edge_list(const Graph& g);

}  // namespace npforge

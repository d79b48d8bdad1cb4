// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/graph.hpp"

#include "npforge/errors.hpp"

#include <sstream>
#include <string>

namespace npforge {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n)
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") out of range for " + std::to_string(n) + " vertices");
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    g.add_edge(u, v);
  }
  return g;
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph Graph::cycle(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n && n >= 3; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph Graph::path(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

void Graph::add_edge(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_ || i == j) throw InputError("invalid edge");
  adj_[i * n_ + j] = 1;
  adj_[j * n_ + i] = 1;
}

std::size_t Graph::degree(std::size_t i) const {
  std::size_t d = 0;
  for (std::size_t j = 0; j < n_; ++j) d += adj_[i * n_ + j];
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t e = 0;
  for (std::size_t i = 0; i < n_; ++i) e += degree(i);
  return e / 2;
}

std::vector<Graph::Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (adjacent(i, j)) out.emplace_back(i, j);
  return out;
}

std::uint64_t Graph::neighbor_mask(std::size_t i) const {
  if (n_ > 64) throw InstanceTooLarge("neighbour masks need at most 64 vertices");
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < n_; ++j)
    if (adjacent(i, j)) m |= std::uint64_t{1} << j;
  return m;
}

Graph relabel(const Graph& g, std::span<const std::size_t> perm) {
  if (perm.size() != g.size()) throw DimensionMismatch("permutation size differs from graph");
  Graph h(g.size());
  for (const auto& [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
  return h;
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) return true;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v = 0; v < n; ++v) {
      if (g.adjacent(u, v) && !seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

namespace {

bool read_size(std::istringstream& in, std::size_t& out) {
  long long v = 0;
  if (!(in >> v) || v < 0) return false;
  out = static_cast<std::size_t>(v);
  return true;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::istringstream lines{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  bool dimacs = false;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Graph::Edge> edges;
  while (std::getline(lines, line)) {
    ++lineno;
    std::istringstream in(line);
    std::string first;
    if (!(in >> first)) continue;
    if (first == "c" || first[0] == '#') continue;
    if (!have_header) {
      if (first == "p") {
        std::string kind;
        in >> kind;
        if (kind != "edge" && kind != "col")
          throw InputError("expected 'p edge n m' header", lineno);
        if (!read_size(in, n) || !read_size(in, m))
          throw InputError("malformed DIMACS graph header", lineno);
        dimacs = true;
      } else {
        std::istringstream head(line);
        if (!read_size(head, n) || !read_size(head, m))
          throw InputError("expected 'n m' header", lineno);
      }
      have_header = true;
      continue;
    }
    std::size_t u = 0;
    std::size_t v = 0;
    if (dimacs) {
      if (first != "e") throw InputError("expected 'e u v' edge line", lineno);
      if (!read_size(in, u) || !read_size(in, v) || u == 0 || v == 0)
        throw InputError("malformed edge line", lineno);
      --u;
      --v;
    } else {
      std::istringstream again(line);
      if (!read_size(again, u) || !read_size(again, v))
        throw InputError("malformed edge line", lineno);
    }
    if (u >= n || v >= n) throw InputError("edge endpoint out of range", lineno);
    if (u == v) throw InputError("self-loop", lineno);
    edges.emplace_back(u, v);
  }
  if (!have_header) throw InputError("missing graph header");
  if (edges.size() != m)
    throw InputError("header announces " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  return Graph::from_edges(n, edges);
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  const auto es = g.edges();
  out << g.size() << ' ' << es.size() << '\n';
  for (const auto& [u, v] : es) out << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace npforge

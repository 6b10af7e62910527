// Apache License, Version 2.0, refer to LICENSE.txt
#include "netgen/graph.hpp"

#include <cmath>
#include <string>

#include "netgen/error.hpp"

namespace netgen {

DirectedGraph::DirectedGraph(std::size_t n_nodes) : n_(n_nodes), adj_(n_nodes * n_nodes, 0) {
  if (n_nodes == 0) throw InvalidArgument("graph must have at least one node");
}

DirectedGraph DirectedGraph::from_edges(std::size_t n_nodes, std::span<const Edge> edges) {
  DirectedGraph g(n_nodes);
  for (auto [i, j] : edges) {
    if (i >= n_nodes || j >= n_nodes) {
      throw InvalidArgument("edge " + std::to_string(i) + "->" + std::to_string(j) +
                            " out of range for " + std::to_string(n_nodes) + " nodes");
    }
    if (i == j) throw InvalidArgument("self-loop at node " + std::to_string(i));
    if (g.has_edge(i, j)) {
      throw InvalidArgument("duplicate edge " + std::to_string(i) + "->" + std::to_string(j));
    }
    g.set_edge(i, j, true);
  }
  return g;
}

DirectedGraph DirectedGraph::complete(std::size_t n_nodes) {
  DirectedGraph g(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i)
    for (std::size_t j = 0; j < n_nodes; ++j)
      if (i != j) g.set_edge(i, j, true);
  return g;
}

void DirectedGraph::set_edge(std::size_t i, std::size_t j, bool present) {
  if (i >= n_ || j >= n_) throw InvalidArgument("node index out of range");
  if (i == j) throw InvalidArgument("self-loops are not allowed");
  std::uint8_t& cell = adj_[i * n_ + j];
  if (cell != static_cast<std::uint8_t>(present)) {
    cell = present ? 1 : 0;
    if (present) {
      ++edges_;
    } else {
      --edges_;
    }
  }
}

std::size_t DirectedGraph::in_degree(std::size_t node) const noexcept {
  std::size_t d = 0;
  for (std::size_t i = 0; i < n_; ++i) d += adj_[i * n_ + node];
  return d;
}

std::size_t DirectedGraph::out_degree(std::size_t node) const noexcept {
  std::size_t d = 0;
  for (std::size_t j = 0; j < n_; ++j) d += adj_[node * n_ + j];
  return d;
}

std::vector<Edge> DirectedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (adj_[i * n_ + j]) out.emplace_back(i, j);
  return out;
}

GraphSet::GraphSet(std::vector<DirectedGraph> graphs) : graphs_(std::move(graphs)) {
  if (graphs_.empty()) throw InvalidArgument("graph set must not be empty");
  n_ = graphs_.front().n_nodes();
  for (const auto& g : graphs_) {
    if (g.n_nodes() != n_) {
      throw InvalidArgument("graph set members must share one node count (" +
                            std::to_string(n_) + " vs " + std::to_string(g.n_nodes()) + ")");
    }
  }
}

std::size_t nodes_for_dyads(std::size_t dyads) {
  auto n = static_cast<std::size_t>(std::llround((1.0 + std::sqrt(1.0 + 4.0 * dyads)) / 2.0));
  if (n == 0 || n * (n - 1) != dyads) {
    throw InvalidArgument(std::to_string(dyads) + " is not a dyad count n(n-1)");
  }
  return n;
}

DyadVector to_dyad_vector(const DirectedGraph& g) {
  const std::size_t n = g.n_nodes();
  DyadVector v{n, {}};
  v.values.reserve(g.dyad_count());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) v.values.push_back(g.has_edge(i, j) ? 1 : 0);
  return v;
}

DirectedGraph from_dyad_vector(const DyadVector& v) {
  const std::size_t n = v.n_nodes;
  if (n == 0 || v.values.size() != n * (n - 1)) {
    throw InvalidArgument("dyad vector length does not match node count");
  }
  DirectedGraph g(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::uint8_t x = v.values[k++];
      if (x > 1) throw InvalidArgument("dyad vector entries must be 0 or 1");
      if (x) g.set_edge(i, j, true);
    }
  }
  return g;
}

double mean_in_degree(const DirectedGraph& g) {
  return static_cast<double>(g.edge_count()) / static_cast<double>(g.n_nodes());
}

double mean_clustering(const DirectedGraph& g) {
  const std::size_t n = g.n_nodes();
  auto linked = [&](std::size_t a, std::size_t b) {
    return a != b && (g.has_edge(a, b) || g.has_edge(b, a));
  };
  double total = 0.0;
  std::vector<std::size_t> nbrs;
  for (std::size_t v = 0; v < n; ++v) {
    nbrs.clear();
    for (std::size_t u = 0; u < n; ++u)
      if (linked(v, u)) nbrs.push_back(u);
    const std::size_t k = nbrs.size();
    if (k < 2) continue;
    std::size_t closed = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (linked(nbrs[a], nbrs[b])) ++closed;
    total += static_cast<double>(closed) / (static_cast<double>(k * (k - 1)) / 2.0);
  }
  return total / static_cast<double>(n);
}

}  // namespace netgen

// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_GRAPH_HPP
#define NETGEN_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace netgen {

using Edge = std::pair<std::size_t, std::size_t>;

/// Directed graph on a fixed node set stored as a dense binary adjacency
/// matrix. Self-loops are not representable: the diagonal is always 0.
class DirectedGraph {
 public:
  /// Empty graph on n_nodes nodes (n_nodes >= 1).
  explicit DirectedGraph(std::size_t n_nodes);

  /// Rejects self-loops, duplicate edges and out-of-range endpoints.
  static DirectedGraph from_edges(std::size_t n_nodes, std::span<const Edge> edges);
  static DirectedGraph complete(std::size_t n_nodes);

  std::size_t n_nodes() const noexcept { return n_; }
  std::size_t dyad_count() const noexcept { return n_ * (n_ - 1); }

  bool has_edge(std::size_t i, std::size_t j) const noexcept {
    return adj_[i * n_ + j] != 0;
  }
  /// Bounds-checked; throws InvalidArgument for i == j.
  void set_edge(std::size_t i, std::size_t j, bool present);
  void toggle_edge(std::size_t i, std::size_t j) {
    set_edge(i, j, !has_edge(i, j));
  }

  std::size_t edge_count() const noexcept { return edges_; }
  std::size_t in_degree(std::size_t node) const noexcept;
  std::size_t out_degree(std::size_t node) const noexcept;

  /// Edges in lexicographic (src, dst) order.
  std::vector<Edge> edges() const;

  /// Row-major n x n matrix of 0/1 bytes.
  const std::vector<std::uint8_t>& adjacency() const noexcept { return adj_; }

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  std::size_t n_;
  std::size_t edges_ = 0;
  std::vector<std::uint8_t> adj_;
};

/// Ordered, non-empty collection of graphs sharing one node count.
class GraphSet {
 public:
  explicit GraphSet(std::vector<DirectedGraph> graphs);

  std::size_t size() const noexcept { return graphs_.size(); }
  std::size_t n_nodes() const noexcept { return n_; }
  const DirectedGraph& operator[](std::size_t i) const { return graphs_[i]; }
  const std::vector<DirectedGraph>& graphs() const noexcept { return graphs_; }
  auto begin() const noexcept { return graphs_.begin(); }
  auto end() const noexcept { return graphs_.end(); }

  friend bool operator==(const GraphSet& a, const GraphSet& b) {
    return a.graphs_ == b.graphs_;
  }

 private:
  std::vector<DirectedGraph> graphs_;
  std::size_t n_;
};

/// The n(n-1) dyad variables of a graph in row-major order with the
/// diagonal skipped. Every model shares this layout.
struct DyadVector {
  std::size_t n_nodes = 0;
  std::vector<std::uint8_t> values;
};

inline std::size_t dyad_index(std::size_t n_nodes, std::size_t i, std::size_t j) {
  return i * (n_nodes - 1) + (j < i ? j : j - 1);
}

inline Edge dyad_endpoints(std::size_t n_nodes, std::size_t k) {
  std::size_t i = k / (n_nodes - 1);
  std::size_t r = k % (n_nodes - 1);
  return {i, r < i ? r : r + 1};
}

/// Inverse of dyad_count: the n with n(n-1) == dyads; throws if none.
std::size_t nodes_for_dyads(std::size_t dyads);

DyadVector to_dyad_vector(const DirectedGraph& g);
DirectedGraph from_dyad_vector(const DyadVector& v);

/// edge_count / n.
double mean_in_degree(const DirectedGraph& g);

/// Mean local clustering coefficient of the undirected projection
/// ({i,j} present iff i->j or j->i). Nodes with fewer than two projected
/// neighbours count as 0 and stay in the denominator.
double mean_clustering(const DirectedGraph& g);

}  // namespace netgen

#endif  // NETGEN_GRAPH_HPP

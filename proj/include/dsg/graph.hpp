#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dsg {

using NodeId = std::uint32_t;

/// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph in compressed adjacency form. Neighbor
/// lists are sorted.
class Graph {
 public:
  Graph() = default;

  /// Edges may be given in either orientation and any order. Throws
  /// std::invalid_argument on self-loops, duplicates or ids >= num_nodes.
  static Graph from_edges(std::size_t num_nodes, std::vector<Edge> edges);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId a, NodeId b) const;

  /// Canonical sorted edge list.
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::size_t num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
};

/// Same graph with node v renamed to permutation[v].
Graph relabel(const Graph& graph, std::span<const NodeId> permutation);

}  // namespace dsg

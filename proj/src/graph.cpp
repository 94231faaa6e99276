#include "dsg/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dsg {

Graph Graph::from_edges(std::size_t num_nodes, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("self-loop on node " + std::to_string(e.u));
    if (e.u >= num_nodes || e.v >= num_nodes) throw std::invalid_argument("edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");

  Graph g;
  g.num_nodes_ = num_nodes;
  g.offsets_.assign(num_nodes + 1, 0);
  for (const auto& e : edges) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < num_nodes; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // With edges sorted by (u, v) every list fills in ascending order: smaller
  // neighbors arrive as the v side of earlier edges.
  for (const auto& e : edges) {
    g.adjacency_[cursor[e.u]++] = e.v;
    g.adjacency_[cursor[e.v]++] = e.u;
  }
  g.edges_ = std::move(edges);
  return g;
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (a >= num_nodes_ || b >= num_nodes_) return false;
  if (degree(a) > degree(b)) std::swap(a, b);
  auto n = neighbors(a);
  return std::binary_search(n.begin(), n.end(), b);
}

Graph relabel(const Graph& graph, std::span<const NodeId> permutation) {
  std::vector<Edge> edges;
  edges.reserve(graph.num_edges());
  for (const auto& e : graph.edges()) edges.push_back({permutation[e.u], permutation[e.v]});
  return Graph::from_edges(graph.num_nodes(), std::move(edges));
}

}  // namespace dsg

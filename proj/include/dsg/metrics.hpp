#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dsg/graph.hpp"
#include "dsg/sharing_graph.hpp"

namespace dsg {

/// Connected components over the non-isolated nodes.
struct ComponentStats {
  std::size_t count = 0;
  std::size_t largest = 0;
  double fraction = 0.0;  // largest / non-isolated nodes; 0 when there are none
};

ComponentStats component_stats(const Graph& graph);

/// Nodes of the largest component with at least one edge, ascending. Ties go
/// to the component holding the smallest node id. Empty for an edgeless graph.
std::vector<NodeId> largest_component(const Graph& graph);

/// Mean Watts-Strogatz local coefficient over nodes of degree >= 2. Nodes of
/// smaller degree are left out; nullopt when no node qualifies.
std::optional<double> clustering_coefficient(const Graph& graph);

/// Same coefficient with degree < 2 nodes counted as 0 and averaged over all
/// nodes. 0 for an empty graph.
double clustering_coefficient_zero_filled(const Graph& graph);

/// degree -> node count.
std::map<std::size_t, std::size_t> degree_distribution(const Graph& graph);

enum class PathLengthMethod { Exact, Sampled };

struct PathLengthConfig {
  /// Forces sampled mode with this many node pairs.
  std::optional<std::uint64_t> sample_pairs;
  std::uint64_t seed = 0;
  /// Components larger than this switch to sampling automatically.
  std::size_t exact_node_limit = 20000;
  std::uint64_t default_sample_pairs = 100000;
};

struct PathLength {
  double value = 0.0;
  PathLengthMethod method = PathLengthMethod::Exact;
  std::uint64_t pairs = 0;  // pairs averaged over
  std::uint64_t seed = 0;   // meaningful for Sampled only
};

/// Mean hop distance between node pairs of the largest component. Exact mode
/// runs a BFS from every component node; sampled mode averages over distinct
/// pairs drawn uniformly without replacement, which degenerates to the exact
/// value once the requested count covers every pair. Throws NoEdges.
PathLength average_path_length(const Graph& graph, const PathLengthConfig& config = {});

struct GraphMetrics {
  std::size_t n_total = 0;
  std::size_t n_nonisolated = 0;
  std::size_t links = 0;
  double mean_degree = 0.0;
  std::optional<double> clustering;
  double clustering_zero_filled = 0.0;
  std::optional<PathLength> path_length;
  std::size_t components = 0;
  std::size_t largest_component = 0;
  double largest_component_fraction = 0.0;
};

GraphMetrics compute_metrics(const Graph& graph, const PathLengthConfig& config = {});
inline GraphMetrics compute_metrics(const SharingGraph& graph, const PathLengthConfig& config = {}) {
  return compute_metrics(graph.topology, config);
}

}  // namespace dsg

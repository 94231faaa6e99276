#include "dsg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "dsg/error.hpp"
#include "dsg/random.hpp"
#include "parallel.hpp"

namespace dsg {

namespace {

constexpr std::int32_t kUnvisited = -1;

// Component label per node; isolated nodes get their own singleton label.
std::vector<std::size_t> label_components(const Graph& g, std::vector<std::size_t>& sizes) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> label(n, SIZE_MAX);
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    if (label[s] != SIZE_MAX) continue;
    const std::size_t id = sizes.size();
    label[s] = id;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (auto w : g.neighbors(queue[head])) {
        if (label[w] == SIZE_MAX) {
          label[w] = id;
          queue.push_back(w);
        }
      }
    }
    sizes.push_back(queue.size());
  }
  return label;
}

struct BfsScratch {
  std::vector<std::int32_t> dist;
  std::vector<NodeId> queue;

  explicit BfsScratch(std::size_t n) : dist(n, kUnvisited) {}

  void reset() {
    for (auto v : queue) dist[v] = kUnvisited;
    queue.clear();
  }
};

// Sum of distances from source to every node it reaches.
std::uint64_t bfs_distance_sum(const Graph& g, NodeId source, BfsScratch& s) {
  s.dist[source] = 0;
  s.queue.push_back(source);
  std::uint64_t sum = 0;
  for (std::size_t head = 0; head < s.queue.size(); ++head) {
    const NodeId v = s.queue[head];
    const std::int32_t d = s.dist[v] + 1;
    for (auto w : g.neighbors(v)) {
      if (s.dist[w] == kUnvisited) {
        s.dist[w] = d;
        sum += static_cast<std::uint64_t>(d);
        s.queue.push_back(w);
      }
    }
  }
  s.reset();
  return sum;
}

// BFS from source that stops once every target (sorted) has been reached.
std::uint64_t bfs_target_sum(const Graph& g, NodeId source, std::span<const NodeId> targets, BfsScratch& s) {
  s.dist[source] = 0;
  s.queue.push_back(source);
  std::size_t remaining = targets.size();
  for (std::size_t head = 0; head < s.queue.size() && remaining > 0; ++head) {
    const NodeId v = s.queue[head];
    const std::int32_t d = s.dist[v] + 1;
    for (auto w : g.neighbors(v)) {
      if (s.dist[w] == kUnvisited) {
        s.dist[w] = d;
        s.queue.push_back(w);
        if (std::binary_search(targets.begin(), targets.end(), w)) --remaining;
      }
    }
  }
  std::uint64_t sum = 0;
  for (auto t : targets) sum += static_cast<std::uint64_t>(s.dist[t]);
  s.reset();
  return sum;
}

double exact_mean(const Graph& g, const std::vector<NodeId>& component) {
  const std::size_t k = component.size();
  const std::size_t workers = detail::worker_count(k / 64 + 1);
  std::vector<std::uint64_t> partial(workers, 0);
  detail::parallel_slices(k, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    BfsScratch scratch(g.num_nodes());
    std::uint64_t sum = 0;
    for (std::size_t i = begin; i < end; ++i) sum += bfs_distance_sum(g, component[i], scratch);
    partial[w] = sum;
  });
  const auto total = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  // Every unordered pair was counted from both ends.
  return double(total) / (double(k) * double(k - 1));
}

// Inverse of t = j(j-1)/2 + i with 0 <= i < j.
std::pair<std::uint64_t, std::uint64_t> decode_pair(std::uint64_t t) {
  auto j = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * double(t))) / 2.0);
  while (j * (j - 1) / 2 > t) --j;
  while ((j + 1) * j / 2 <= t) ++j;
  return {t - j * (j - 1) / 2, j};
}

double sampled_mean(const Graph& g, const std::vector<NodeId>& component, std::uint64_t pairs, std::uint64_t seed) {
  const std::uint64_t k = component.size();
  const std::uint64_t total_pairs = k * (k - 1) / 2;

  // Floyd's sampling of `pairs` distinct indices from [0, total_pairs).
  Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(pairs * 2);
  for (std::uint64_t j = total_pairs - pairs; j < total_pairs; ++j) {
    std::uint64_t t = uniform_below(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::pair<NodeId, NodeId>> sample;
  sample.reserve(pairs);
  for (auto t : chosen) {
    auto [i, j] = decode_pair(t);
    sample.emplace_back(component[i], component[j]);
  }
  std::sort(sample.begin(), sample.end());

  // Group by source and answer all of a source's targets with one BFS.
  std::vector<std::size_t> group_start;
  for (std::size_t i = 0; i < sample.size(); ++i)
    if (i == 0 || sample[i].first != sample[i - 1].first) group_start.push_back(i);
  group_start.push_back(sample.size());
  const std::size_t groups = group_start.size() - 1;

  const std::size_t workers = detail::worker_count(groups / 64 + 1);
  std::vector<std::uint64_t> partial(workers, 0);
  detail::parallel_slices(groups, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    BfsScratch scratch(g.num_nodes());
    std::vector<NodeId> targets;
    std::uint64_t sum = 0;
    for (std::size_t grp = begin; grp < end; ++grp) {
      targets.clear();
      for (std::size_t i = group_start[grp]; i < group_start[grp + 1]; ++i) targets.push_back(sample[i].second);
      sum += bfs_target_sum(g, sample[group_start[grp]].first, targets, scratch);
    }
    partial[w] = sum;
  });
  const auto total = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  return double(total) / double(pairs);
}

}  // namespace

std::vector<NodeId> largest_component(const Graph& graph) {
  std::vector<std::size_t> sizes;
  auto label = label_components(graph, sizes);
  std::size_t best = SIZE_MAX;
  std::size_t best_size = 1;  // singletons never qualify
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    if (sizes[label[v]] > best_size) {
      best_size = sizes[label[v]];
      best = label[v];
    }
  }
  std::vector<NodeId> nodes;
  if (best == SIZE_MAX) return nodes;
  nodes.reserve(best_size);
  for (NodeId v = 0; v < graph.num_nodes(); ++v)
    if (label[v] == best) nodes.push_back(v);
  return nodes;
}

ComponentStats component_stats(const Graph& graph) {
  std::vector<std::size_t> sizes;
  label_components(graph, sizes);
  ComponentStats stats;
  std::size_t nonisolated = 0;
  for (auto s : sizes) {
    if (s < 2) continue;
    ++stats.count;
    nonisolated += s;
    stats.largest = std::max(stats.largest, s);
  }
  if (nonisolated > 0) stats.fraction = double(stats.largest) / double(nonisolated);
  return stats;
}

namespace {

// Sum of local coefficients over degree >= 2 nodes, and how many there were.
std::pair<double, std::size_t> local_clustering_sum(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<NodeId> mark(n, NodeId(-1));
  double sum = 0.0;
  std::size_t counted = 0;
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t k = g.degree(v);
    if (k < 2) continue;
    auto nbrs = g.neighbors(v);
    for (auto w : nbrs) mark[w] = v;
    std::uint64_t links = 0;
    for (auto w : nbrs)
      for (auto x : g.neighbors(w))
        if (x > w && mark[x] == v) ++links;
    sum += double(links) / (double(k) * double(k - 1) / 2.0);
    ++counted;
  }
  return {sum, counted};
}

}  // namespace

std::optional<double> clustering_coefficient(const Graph& graph) {
  auto [sum, counted] = local_clustering_sum(graph);
  if (counted == 0) return std::nullopt;
  return sum / double(counted);
}

double clustering_coefficient_zero_filled(const Graph& graph) {
  if (graph.num_nodes() == 0) return 0.0;
  return local_clustering_sum(graph).first / double(graph.num_nodes());
}

std::map<std::size_t, std::size_t> degree_distribution(const Graph& graph) {
  std::map<std::size_t, std::size_t> hist;
  for (NodeId v = 0; v < graph.num_nodes(); ++v) ++hist[graph.degree(v)];
  return hist;
}

PathLength average_path_length(const Graph& graph, const PathLengthConfig& config) {
  if (graph.num_edges() == 0) throw NoEdges();
  const auto component = largest_component(graph);
  const std::uint64_t k = component.size();
  const std::uint64_t total_pairs = k * (k - 1) / 2;

  std::optional<std::uint64_t> pairs = config.sample_pairs;
  if (!pairs && k > config.exact_node_limit) pairs = config.default_sample_pairs;

  PathLength out;
  if (!pairs) {
    out.method = PathLengthMethod::Exact;
    out.pairs = total_pairs;
    out.value = exact_mean(graph, component);
    return out;
  }
  out.method = PathLengthMethod::Sampled;
  out.seed = config.seed;
  if (*pairs == 0) throw ConfigError("metrics", "sample pair count must be positive");
  if (*pairs >= total_pairs) {
    out.pairs = total_pairs;
    out.value = exact_mean(graph, component);
  } else {
    out.pairs = *pairs;
    out.value = sampled_mean(graph, component, *pairs, config.seed);
  }
  return out;
}

GraphMetrics compute_metrics(const Graph& graph, const PathLengthConfig& config) {
  GraphMetrics m;
  m.n_total = graph.num_nodes();
  m.links = graph.num_edges();
  for (NodeId v = 0; v < graph.num_nodes(); ++v)
    if (graph.degree(v) > 0) ++m.n_nonisolated;
  m.mean_degree = m.n_total ? 2.0 * double(m.links) / double(m.n_total) : 0.0;
  m.clustering = clustering_coefficient(graph);
  m.clustering_zero_filled = clustering_coefficient_zero_filled(graph);
  auto comps = component_stats(graph);
  m.components = comps.count;
  m.largest_component = comps.largest;
  m.largest_component_fraction = comps.fraction;
  if (m.links > 0) m.path_length = average_path_length(graph, config);
  return m;
}

}  // namespace dsg

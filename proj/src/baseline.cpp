#include "dsg/baseline.hpp"

#include <cmath>
#include <unordered_set>
#include <vector>

#include <fmt/format.h>

#include "dsg/error.hpp"
#include "dsg/random.hpp"

namespace dsg {

namespace {

Edge decode_edge(std::uint64_t t) {
  auto j = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * double(t))) / 2.0);
  while (j * (j - 1) / 2 > t) --j;
  while ((j + 1) * j / 2 <= t) ++j;
  return {static_cast<NodeId>(t - j * (j - 1) / 2), static_cast<NodeId>(j)};
}

SampleStat summarize(const std::vector<double>& xs) {
  SampleStat s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (auto x : xs) sum += x;
  s.mean = sum / double(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (auto x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / double(xs.size() - 1));
  }
  return s;
}

}  // namespace

Graph random_graph(std::size_t n, std::uint64_t m, std::uint64_t seed) {
  const std::uint64_t total = n < 2 ? 0 : std::uint64_t(n) * (n - 1) / 2;
  if (m > total) throw TooManyEdges(fmt::format("{} edges requested but only {} pairs exist on {} nodes", m, total, n));

  // Floyd's algorithm picks a uniform subset; for dense graphs sample the
  // complement instead.
  const bool complement = m > total / 2;
  const std::uint64_t draw = complement ? total - m : m;
  Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(draw * 2);
  for (std::uint64_t j = total - draw; j < total; ++j) {
    std::uint64_t t = uniform_below(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  if (complement) {
    for (std::uint64_t t = 0; t < total; ++t)
      if (!chosen.contains(t)) edges.push_back(decode_edge(t));
  } else {
    for (auto t : chosen) edges.push_back(decode_edge(t));
  }
  return Graph::from_edges(n, std::move(edges));
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) { return derive_seed(master, {trial}); }

AnalyticBaseline analytic_baseline(std::size_t n, std::uint64_t m) {
  AnalyticBaseline a;
  if (n >= 2) a.clustering = 2.0 * double(m) / (double(n) * double(n - 1));
  const double mean_degree = n ? 2.0 * double(m) / double(n) : 0.0;
  a.degenerate = mean_degree <= 1.0;
  if (!a.degenerate) a.path_length = std::log(double(n)) / std::log(mean_degree);
  return a;
}

RandomBaseline baseline_metrics(std::size_t n, std::uint64_t m, std::size_t trials, std::uint64_t seed,
                                const PathLengthConfig& path_config) {
  if (trials < 1) throw ConfigError("baseline", "baseline needs at least one trial");
  RandomBaseline b;
  b.n = n;
  b.links = m;
  b.trials = trials;
  b.seed = seed;
  b.analytic = analytic_baseline(n, m);

  std::vector<double> c, l, cz, frac;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto s = trial_seed(seed, i);
    const Graph g = random_graph(n, m, s);
    PathLengthConfig pc = path_config;
    pc.seed = derive_seed(s, {1});
    const auto metrics = compute_metrics(g, pc);
    if (metrics.n_total != n || metrics.links != m)
      throw AnalysisError("baseline", "random graph does not match requested size");
    if (metrics.clustering) c.push_back(*metrics.clustering);
    if (metrics.path_length) l.push_back(metrics.path_length->value);
    cz.push_back(metrics.clustering_zero_filled);
    frac.push_back(metrics.largest_component_fraction);
  }
  if (!c.empty()) b.clustering = summarize(c);
  if (!l.empty()) b.path_length = summarize(l);
  b.clustering_zero_filled = summarize(cz);
  b.largest_component_fraction = summarize(frac);
  return b;
}

SmallWorldRatios small_world_ratios(double path_length, double clustering, double random_path_length,
                                    double random_clustering, const VerdictThresholds& thresholds) {
  for (double x : {path_length, clustering, random_path_length, random_clustering})
    if (!std::isfinite(x)) throw UndefinedRatio("metric is not finite");
  if (random_path_length <= 0.0) throw UndefinedRatio("random path length is not positive");
  if (random_clustering <= 0.0) throw UndefinedRatio("random clustering coefficient is zero");
  SmallWorldRatios r;
  r.path_ratio = path_length / random_path_length;
  r.clustering_ratio = clustering / random_clustering;
  r.thresholds = thresholds;
  r.small_world = r.clustering_ratio >= thresholds.min_clustering_ratio && r.path_ratio <= thresholds.max_path_ratio;
  return r;
}

SmallWorldRatios small_world_ratios(const GraphMetrics& measured, const RandomBaseline& baseline,
                                    const VerdictThresholds& thresholds) {
  if (!measured.clustering) throw UndefinedRatio("measured clustering coefficient undefined");
  if (!measured.path_length) throw UndefinedRatio("measured path length undefined");
  if (!baseline.clustering) throw UndefinedRatio("baseline clustering coefficient undefined");
  if (!baseline.path_length) throw UndefinedRatio("baseline path length undefined");
  return small_world_ratios(measured.path_length->value, *measured.clustering, baseline.path_length->mean,
                            baseline.clustering->mean, thresholds);
}

}  // namespace dsg

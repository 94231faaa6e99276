#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "dsg/graph.hpp"
#include "dsg/metrics.hpp"

namespace dsg {

/// Uniform G(n, M): exactly M distinct node pairs drawn without replacement.
/// Throws TooManyEdges if M > n(n-1)/2.
Graph random_graph(std::size_t n, std::uint64_t m, std::uint64_t seed);

/// Seed of trial i: derive_seed(master, {i}).
std::uint64_t trial_seed(std::uint64_t master, std::size_t trial);

struct SampleStat {
  double mean = 0.0;
  double stddev = 0.0;    // sample standard deviation (n - 1)
  std::size_t count = 0;  // trials in which the metric was defined
};

/// Closed-form G(n, M) estimates: C = 2M / (n(n-1)), L = ln n / ln <k>.
struct AnalyticBaseline {
  double clustering = 0.0;
  std::optional<double> path_length;  // only when mean degree > 1
  bool degenerate = false;            // mean degree <= 1
};

AnalyticBaseline analytic_baseline(std::size_t n, std::uint64_t m);

struct RandomBaseline {
  std::size_t n = 0;
  std::uint64_t links = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<SampleStat> clustering;
  std::optional<SampleStat> path_length;
  SampleStat clustering_zero_filled;
  SampleStat largest_component_fraction;
  AnalyticBaseline analytic;
};

/// Metrics averaged over `trials` G(n, M) graphs; trial i uses
/// trial_seed(seed, i) for the graph and for path sampling.
RandomBaseline baseline_metrics(std::size_t n, std::uint64_t m, std::size_t trials, std::uint64_t seed,
                                const PathLengthConfig& path_config = {});

struct VerdictThresholds {
  double min_clustering_ratio = 5.0;
  double max_path_ratio = 2.0;

  friend bool operator==(const VerdictThresholds&, const VerdictThresholds&) = default;
};

struct SmallWorldRatios {
  double path_ratio = 0.0;        // L / L_rand
  double clustering_ratio = 0.0;  // C / C_rand
  bool small_world = false;
  VerdictThresholds thresholds;
};

/// Throws UndefinedRatio if a denominator is not positive or a value is not
/// finite.
SmallWorldRatios small_world_ratios(double path_length, double clustering, double random_path_length,
                                    double random_clustering, const VerdictThresholds& thresholds = {});

/// Uses the baseline's empirical means. Throws UndefinedRatio if any of the
/// four metrics is undefined.
SmallWorldRatios small_world_ratios(const GraphMetrics& measured, const RandomBaseline& baseline,
                                    const VerdictThresholds& thresholds = {});

}  // namespace dsg

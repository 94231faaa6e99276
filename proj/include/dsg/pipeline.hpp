#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsg/report.hpp"
#include "dsg/sharing_graph.hpp"
#include "dsg/trace.hpp"

namespace dsg {

inline constexpr std::string_view kVersion = "0.1.0";

enum class GraphOutFormat { EdgeList, Adjacency };

std::optional<GraphOutFormat> parse_graph_out_format(std::string_view name);

struct PipelineConfig {
  std::filesystem::path trace;
  TraceFormat format = TraceFormat::CanonicalCsv;
  Granularity granularity = Granularity::Page;
  std::vector<std::int64_t> windows;       // seconds
  std::vector<std::uint32_t> min_common;   // thresholds m (or s for servers)
  std::size_t baseline_trials = 20;
  std::uint64_t seed = 1;
  std::filesystem::path out;
  std::optional<std::uint64_t> sample_pairs;
  std::optional<std::filesystem::path> dump_windows;
  std::optional<GraphOutFormat> graph_out;
  double max_error_rate = 0.01;
  std::size_t fanout_limit = kDefaultFanoutLimit;
  VerdictThresholds thresholds;
  std::string label;
  bool write_svg = true;
};

struct PipelineSummary {
  std::vector<SmallWorldReport> reports;
  std::size_t records = 0;
  std::size_t parse_errors = 0;
  std::size_t normalize_errors = 0;
  std::string input_sha256;
  std::vector<std::string> job_errors;  // jobs that produced no report
};

/// parse -> normalize -> window -> build -> metrics -> baseline -> aggregate
/// -> emit, for every job of the sweep. Writes report.csv, scatter.csv,
/// scatter.svg, job-NNN.json and manifest.json into config.out. A job whose
/// windows are all partial or undefined is recorded in its JSON and skipped;
/// the run fails only if no job yields a report. Throws dsg::Error.
PipelineSummary analyze_trace(const PipelineConfig& config);

/// analyze_trace with the text table on `out` and "<stage>: <message>" on
/// `err`. Returns the process exit code.
int run_pipeline(const PipelineConfig& config, std::ostream& out, std::ostream& err);

std::string sha256_hex(std::string_view bytes);

/// Writes to "<path>.tmp" and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Edge list "u v weight" over node indices, or adjacency lines "u: v1 v2 ...".
void write_sharing_graph(std::ostream& out, const SharingGraph& graph, GraphOutFormat format);

/// One "index consumer" line per node.
void write_node_manifest(std::ostream& out, const SharingGraph& graph);

}  // namespace dsg

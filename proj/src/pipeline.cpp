#include "dsg/pipeline.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "dsg/baseline.hpp"
#include "dsg/error.hpp"
#include "dsg/metrics.hpp"
#include "dsg/random.hpp"
#include "dsg/window.hpp"
#include "json_io.hpp"

namespace dsg {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kMeasuredStream = 0;
constexpr std::uint64_t kBaselineStream = 1;
constexpr std::size_t kManifestErrorSample = 10;

void validate(const PipelineConfig& c) {
  if (c.trace.empty()) throw ConfigError("config", "--trace is required");
  if (c.out.empty()) throw ConfigError("config", "--out is required");
  if (c.windows.empty()) throw ConfigError("config", "at least one window length is required");
  for (auto t : c.windows)
    if (t <= 0) throw ConfigError("config", fmt::format("window length must be positive, got {}", t));
  if (c.min_common.empty()) throw ConfigError("config", "at least one similarity threshold is required");
  for (auto m : c.min_common)
    if (m < 1) throw ConfigError("config", "similarity thresholds must be >= 1");
  if (c.baseline_trials < 1) throw ConfigError("config", "--baseline-trials must be >= 1");
  if (c.sample_pairs && *c.sample_pairs == 0) throw ConfigError("config", "--sample-pairs must be positive");
  if (!(c.max_error_rate >= 0.0 && c.max_error_rate <= 1.0))
    throw ConfigError("config", "error-rate limit must lie in [0, 1]");
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trace '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading trace '" + path.string() + "'");
  return buf.str();
}

json config_json(const PipelineConfig& c) {
  json windows = json::array(), thresholds = json::array();
  for (auto t : c.windows) windows.push_back(t);
  for (auto m : c.min_common) thresholds.push_back(m);
  return {{"trace", c.trace.string()},
          {"format", std::string(to_string(c.format))},
          {"granularity", std::string(to_string(c.granularity))},
          {"window_seconds", windows},
          {"min_common", thresholds},
          {"baseline_trials", c.baseline_trials},
          {"seed", c.seed},
          {"sample_pairs", json_io::optional_json(c.sample_pairs)},
          {"max_error_rate", c.max_error_rate},
          {"fanout_limit", c.fanout_limit},
          {"min_C_ratio", c.thresholds.min_clustering_ratio},
          {"max_L_ratio", c.thresholds.max_path_ratio},
          {"label", c.label}};
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("output", fmt::format("cannot create directory '{}': {}", dir.string(), ec.message()));
}

}  // namespace

std::optional<GraphOutFormat> parse_graph_out_format(std::string_view name) {
  if (name == "edgelist") return GraphOutFormat::EdgeList;
  if (name == "adjacency") return GraphOutFormat::Adjacency;
  return std::nullopt;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw AnalysisError("manifest", "SHA-256 computation failed");
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("output", "cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw ConfigError("output", "short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw ConfigError("output", fmt::format("cannot rename into '{}': {}", path.string(), ec.message()));
}

void write_sharing_graph(std::ostream& out, const SharingGraph& graph, GraphOutFormat format) {
  const auto& edges = graph.topology.edges();
  if (format == GraphOutFormat::EdgeList) {
    for (std::size_t i = 0; i < edges.size(); ++i)
      out << edges[i].u << ' ' << edges[i].v << ' ' << graph.weights[i] << '\n';
    return;
  }
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    out << v << ':';
    for (auto w : graph.topology.neighbors(v)) out << ' ' << w;
    out << '\n';
  }
}

void write_node_manifest(std::ostream& out, const SharingGraph& graph) {
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) out << i << ' ' << graph.nodes[i] << '\n';
}

PipelineSummary analyze_trace(const PipelineConfig& config) {
  validate(config);
  PipelineSummary summary;

  const std::string bytes = read_bytes(config.trace);
  summary.input_sha256 = sha256_hex(bytes);
  std::istringstream in(bytes);
  ParsedTrace trace = read_trace(in, config.format);
  summary.parse_errors = trace.errors.size();

  std::vector<AccessRecord> records;
  records.reserve(trace.records.size());
  std::vector<ParseError> normalize_errors;
  for (auto& r : trace.records) {
    try {
      records.push_back(normalize_object(std::move(r), config.granularity));
    } catch (const MissingServer& e) {
      normalize_errors.push_back({0, e.what()});
    }
  }
  summary.normalize_errors = normalize_errors.size();
  summary.records = records.size();

  const std::size_t lines = trace.total();
  if (lines == 0) throw InputError("ingest", "trace contains no records");
  const double error_rate = double(summary.parse_errors + summary.normalize_errors) / double(lines);
  if (error_rate > config.max_error_rate)
    throw InputError("ingest", fmt::format("{} of {} lines rejected ({:.2f}% > {:.2f}% limit){}",
                                           summary.parse_errors + summary.normalize_errors, lines,
                                           100.0 * error_rate, 100.0 * config.max_error_rate,
                                           trace.errors.empty() ? std::string()
                                                                : fmt::format("; first: line {}: {}",
                                                                              trace.errors.front().line_no,
                                                                              trace.errors.front().reason)));
  if (records.empty()) throw InputError("ingest", "trace contains no usable records");

  ensure_directory(config.out);
  if (config.dump_windows) ensure_directory(*config.dump_windows);
  if (config.graph_out) ensure_directory(config.out / "graphs");

  std::vector<SimilarityCriterion> criteria;
  for (auto m : config.min_common) criteria.push_back({config.granularity, m});
  const auto jobs = sweep_plan(config.windows, criteria);
  std::vector<std::vector<WindowResult>> results(jobs.size());

  std::size_t first = 0;
  while (first < jobs.size()) {
    const std::int64_t length = jobs[first].window_length;
    std::size_t last = first;
    while (last < jobs.size() && jobs[last].window_length == length) ++last;

    const auto profiles = partition_windows(records, length, config.granularity);
    for (const auto& profile : profiles) {
      if (config.dump_windows) {
        std::ostringstream dump;
        write_window_profile(dump, profile);
        write_file_atomic(*config.dump_windows / fmt::format("window-T{}-{:05}.csv", length, profile.window.index),
                          dump.str());
      }
      const auto cooccurrence = CoOccurrenceGraph::build(profile, config.fanout_limit);
      for (std::size_t j = first; j < last; ++j) {
        const auto& criterion = jobs[j].criterion;
        const auto graph = cooccurrence.threshold(criterion);
        const auto w = profile.window.index;

        if (config.graph_out) {
          std::ostringstream g, nodes;
          write_sharing_graph(g, graph, *config.graph_out);
          write_node_manifest(nodes, graph);
          const auto stem = fmt::format("job-{:03}-window-{:05}", j, w);
          const char* ext = *config.graph_out == GraphOutFormat::EdgeList ? ".edges" : ".adj";
          write_file_atomic(config.out / "graphs" / (stem + ext), g.str());
          write_file_atomic(config.out / "graphs" / (stem + ".nodes"), nodes.str());
        }

        PathLengthConfig measured_pc;
        measured_pc.sample_pairs = config.sample_pairs;
        measured_pc.seed = derive_seed(config.seed, {std::uint64_t(length), w, criterion.threshold, kMeasuredStream});

        WindowResult result;
        result.window = profile.window;
        result.metrics = compute_metrics(graph, measured_pc);
        result.nonisolated_analytic = analytic_baseline(result.metrics.n_nonisolated, result.metrics.links);
        if (result.metrics.links > 0) {
          PathLengthConfig baseline_pc;
          baseline_pc.sample_pairs = config.sample_pairs;
          result.baseline = baseline_metrics(
              result.metrics.n_total, result.metrics.links, config.baseline_trials,
              derive_seed(config.seed, {std::uint64_t(length), w, criterion.threshold, kBaselineStream}), baseline_pc);
        }
        results[j].push_back(std::move(result));
      }
    }
    first = last;
  }

  json manifest_jobs = json::array();
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto& job = jobs[j];
    const auto file = fmt::format("job-{:03}.json", j);
    json doc = {{"job", j},
                {"criterion", json_io::to_json(job.criterion)},
                {"T_seconds", job.window_length},
                {"windows", json::array()},
                {"report", nullptr},
                {"error", nullptr}};
    for (const auto& w : results[j]) doc["windows"].push_back(json_io::to_json(w, config.thresholds));
    try {
      auto report = aggregate(job.criterion, job.window_length, results[j], config.thresholds, config.label);
      doc["report"] = json_io::to_json(report);
      summary.reports.push_back(std::move(report));
    } catch (const NoValidWindows& e) {
      doc["error"] = e.what();
      summary.job_errors.push_back(e.what());
    }
    write_file_atomic(config.out / file, doc.dump(2) + "\n");
    manifest_jobs.push_back({{"id", j},
                             {"file", file},
                             {"T_seconds", job.window_length},
                             {"criterion", json_io::to_json(job.criterion)},
                             {"status", doc["error"].is_null() ? "ok" : "no-valid-windows"}});
  }

  write_file_atomic(config.out / "report.csv", emit_table(summary.reports, TableFormat::Csv));
  const auto scatter = emit_ratio_scatter(summary.reports, bundled_reference_points());
  write_file_atomic(config.out / "scatter.csv", scatter_csv(scatter));
  if (config.write_svg) write_file_atomic(config.out / "scatter.svg", scatter_svg(scatter));

  json first_errors = json::array();
  for (std::size_t i = 0; i < std::min(kManifestErrorSample, trace.errors.size()); ++i)
    first_errors.push_back({{"line", trace.errors[i].line_no}, {"reason", trace.errors[i].reason}});
  json manifest = {{"tool", "dsgraph"},
                   {"version", std::string(kVersion)},
                   {"config", config_json(config)},
                   {"input",
                    {{"path", config.trace.string()}, {"bytes", bytes.size()}, {"sha256", summary.input_sha256}}},
                   {"records",
                    {{"accepted", summary.records},
                     {"parse_errors", summary.parse_errors},
                     {"normalize_errors", summary.normalize_errors},
                     {"first_parse_errors", first_errors}}},
                   {"jobs", manifest_jobs},
                   {"scatter_rows_skipped", scatter.skipped}};
  write_file_atomic(config.out / "manifest.json", manifest.dump(2) + "\n");

  if (summary.reports.empty())
    throw NoValidWindows(summary.job_errors.empty() ? "no analysis jobs" : summary.job_errors.front());
  return summary;
}

int run_pipeline(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  try {
    auto summary = analyze_trace(config);
    if (summary.parse_errors + summary.normalize_errors > 0)
      err << fmt::format("ingest: skipped {} malformed and {} unnormalizable lines\n", summary.parse_errors,
                         summary.normalize_errors);
    for (const auto& e : summary.job_errors) err << "aggregate: " << e << '\n';
    out << emit_table(summary.reports, TableFormat::Text);
    return 0;
  } catch (const Error& e) {
    err << e.stage() << ": " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "internal: " << e.what() << '\n';
    return static_cast<int>(ErrorCategory::Analysis);
  }
}

}  // namespace dsg

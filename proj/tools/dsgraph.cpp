// dsgraph: data-sharing graph analysis of access traces.
//
//   dsgraph analyze --trace PATH --format canonical-csv --granularity page \
//       --window 120,1800 --min-common 1,10 --baseline-trials 20 --seed 7 --out DIR
//   dsgraph synth --consumers 200 --groups 10 --affinity 0.9 --zipf 0.8 \
//       --accesses 50 --duration 7200 --seed 1 --out trace.csv
//   dsgraph popularity --trace PATH --format proxy-log

#include <iostream>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "dsg/error.hpp"
#include "dsg/pipeline.hpp"
#include "dsg/synth.hpp"
#include "dsg/trace.hpp"

namespace {

const std::vector<std::string> kFormats{"canonical-csv", "proxy-log", "job-log"};
const std::vector<std::string> kGranularities{"page", "server", "file"};

int run_synth(const dsg::SynthConfig& config, const std::string& out_path) {
  const auto records = dsg::generate_trace(config);
  const auto csv = dsg::to_canonical_csv(records);
  if (out_path == "-") {
    std::cout << csv;
  } else {
    dsg::write_file_atomic(out_path, csv);
    std::cerr << fmt::format("wrote {} records to {}\n", records.size(), out_path);
  }
  return 0;
}

int run_popularity(const std::string& path, dsg::TraceFormat format, std::size_t top) {
  const auto trace = dsg::read_trace_file(path, format);
  const auto dist = dsg::popularity_distribution(trace.records);
  std::cout << fmt::format("accesses {}  distinct objects {}  parse errors {}\n", dist.total_accesses,
                           dist.ranking.size(), trace.errors.size());
  if (dist.exponent)
    std::cout << fmt::format("zipf exponent {:.3f} (fitted over {} ranks with count >= 2)\n", *dist.exponent,
                             dist.fitted_ranks);
  else
    std::cout << "zipf exponent undefined (fewer than 2 ranks with count >= 2)\n";
  for (std::size_t i = 0; i < std::min(top, dist.ranking.size()); ++i)
    std::cout << fmt::format("{:>6} {:>10} {}\n", i + 1, dist.ranking[i].count, dist.ranking[i].object);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data-sharing graph construction and small-world analysis of access traces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dsg::kVersion));

  dsg::PipelineConfig pc;
  std::string trace, out, dump_windows, graph_out_format;
  std::uint64_t sample_pairs = 0;
  auto* analyze = app.add_subcommand("analyze", "Build sharing graphs per window and compare with random baselines");
  analyze->add_option("--trace", trace, "Input trace")->required();
  std::string format = "canonical-csv", granularity = "page";
  analyze->add_option("--format", format, "Trace format")->check(CLI::IsMember(kFormats))->capture_default_str();
  analyze->add_option("--granularity", granularity, "Object granularity")
      ->check(CLI::IsMember(kGranularities))
      ->capture_default_str();
  analyze->add_option("--window", pc.windows, "Window length(s) in seconds")->required()->delimiter(',');
  analyze->add_option("--min-common", pc.min_common, "Common-object threshold(s)")->required()->delimiter(',');
  analyze->add_option("--baseline-trials", pc.baseline_trials, "Random graphs per window")->capture_default_str();
  analyze->add_option("--seed", pc.seed, "Master seed")->capture_default_str();
  analyze->add_option("--out", out, "Output directory")->required();
  analyze->add_option("--sample-pairs", sample_pairs, "Estimate L from this many sampled node pairs");
  analyze->add_option("--dump-windows", dump_windows, "Write per-window interest sets here");
  analyze->add_option("--graph-out-format", graph_out_format, "Export graphs: edgelist or adjacency")
      ->check(CLI::IsMember({"edgelist", "adjacency"}));
  analyze->add_option("--label", pc.label, "Experiment name used in table rows");
  analyze->add_option("--max-error-rate", pc.max_error_rate, "Tolerated fraction of bad lines")
      ->capture_default_str();
  analyze->add_option("--fanout-limit", pc.fanout_limit, "Report objects shared by more consumers")
      ->capture_default_str();
  analyze->add_option("--min-c-ratio", pc.thresholds.min_clustering_ratio, "Small-world verdict: C/C_rand floor")
      ->capture_default_str();
  analyze->add_option("--max-l-ratio", pc.thresholds.max_path_ratio, "Small-world verdict: L/L_rand ceiling")
      ->capture_default_str();
  bool no_svg = false;
  analyze->add_flag("--no-svg", no_svg, "Skip scatter.svg");

  dsg::SynthConfig sc;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic community-structured trace");
  synth->add_option("--consumers", sc.consumers)->capture_default_str();
  synth->add_option("--groups", sc.groups)->capture_default_str();
  synth->add_option("--objects-per-group", sc.objects_per_group)->capture_default_str();
  synth->add_option("--global-objects", sc.global_objects)->capture_default_str();
  synth->add_option("--affinity", sc.in_group_affinity, "Probability an access stays in-group")
      ->capture_default_str();
  synth->add_option("--zipf", sc.zipf_exponent, "Zipf exponent within each pool")->capture_default_str();
  synth->add_option("--accesses", sc.accesses_per_consumer, "Accesses per consumer")->capture_default_str();
  synth->add_option("--duration", sc.duration, "Trace length in seconds")->capture_default_str();
  synth->add_option("--seed", sc.seed)->capture_default_str();
  synth->add_option("--out", synth_out, "Output path, '-' for stdout")->required();

  std::string pop_trace;
  std::string pop_format = "canonical-csv";
  std::size_t top = 10;
  auto* popularity = app.add_subcommand("popularity", "Ranked object popularity and Zipf fit");
  popularity->add_option("--trace", pop_trace)->required();
  popularity->add_option("--format", pop_format)->check(CLI::IsMember(kFormats))->capture_default_str();
  popularity->add_option("--top", top)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(dsg::ErrorCategory::Config);
  }

  try {
    if (*analyze) {
      pc.format = *dsg::parse_trace_format(format);
      pc.granularity = *dsg::parse_granularity(granularity);
      pc.trace = trace;
      pc.out = out;
      if (sample_pairs > 0) pc.sample_pairs = sample_pairs;
      if (!dump_windows.empty()) pc.dump_windows = dump_windows;
      if (!graph_out_format.empty()) pc.graph_out = dsg::parse_graph_out_format(graph_out_format);
      pc.write_svg = !no_svg;
      return dsg::run_pipeline(pc, std::cout, std::cerr);
    }
    if (*synth) return run_synth(sc, synth_out);
    if (*popularity) return run_popularity(pop_trace, *dsg::parse_trace_format(pop_format), top);
  } catch (const dsg::Error& e) {
    std::cerr << e.stage() << ": " << e.what() << '\n';
    return e.exit_code();
  }
  return 0;
}

#include "json_io.hpp"

#include "dsg/error.hpp"

namespace dsg::json_io {

json to_json(const SimilarityCriterion& c) {
  return {{"granularity", std::string(to_string(c.granularity))}, {"threshold", c.threshold}};
}

SimilarityCriterion criterion_from_json(const json& j) {
  SimilarityCriterion c;
  auto g = parse_granularity(j.at("granularity").get<std::string>());
  if (!g) throw InputError("report", "unknown granularity in report JSON");
  c.granularity = *g;
  c.threshold = j.at("threshold").get<std::uint32_t>();
  return c;
}

json to_json(const Window& w) {
  return {{"index", w.index}, {"start", w.start}, {"length", w.length}, {"partial", w.partial}};
}

json to_json(const PathLength& p) {
  json j = {{"value", p.value},
            {"method", p.method == PathLengthMethod::Exact ? "exact" : "sampled"},
            {"pairs", p.pairs}};
  if (p.method == PathLengthMethod::Sampled) j["seed"] = p.seed;
  return j;
}

json to_json(const GraphMetrics& m) {
  return {{"n_total", m.n_total},
          {"n_nonisolated", m.n_nonisolated},
          {"links", m.links},
          {"mean_degree", m.mean_degree},
          {"clustering_C", optional_json(m.clustering)},
          {"clustering_C_zero_filled", m.clustering_zero_filled},
          {"path_length_L", m.path_length ? to_json(*m.path_length) : json(nullptr)},
          {"components", m.components},
          {"largest_component", m.largest_component},
          {"largest_component_fraction", m.largest_component_fraction}};
}

json to_json(const SampleStat& s) {
  return {{"mean", s.mean}, {"stddev", s.stddev}, {"count", s.count}};
}

json to_json(const AnalyticBaseline& a) {
  return {{"clustering_C", a.clustering},
          {"path_length_L", optional_json(a.path_length)},
          {"approximate", true},
          {"degenerate", a.degenerate}};
}

json to_json(const RandomBaseline& b) {
  return {{"n", b.n},
          {"links", b.links},
          {"trials", b.trials},
          {"seed", b.seed},
          {"clustering_C", b.clustering ? to_json(*b.clustering) : json(nullptr)},
          {"path_length_L", b.path_length ? to_json(*b.path_length) : json(nullptr)},
          {"clustering_C_zero_filled", to_json(b.clustering_zero_filled)},
          {"largest_component_fraction", to_json(b.largest_component_fraction)},
          {"analytic", to_json(b.analytic)}};
}

json to_json(const SmallWorldRatios& r) {
  return {{"L_ratio", r.path_ratio},
          {"C_ratio", r.clustering_ratio},
          {"small_world", r.small_world},
          {"min_C_ratio", r.thresholds.min_clustering_ratio},
          {"max_L_ratio", r.thresholds.max_path_ratio}};
}

json to_json(const WindowResult& w, const VerdictThresholds& thresholds) {
  json j = {{"window", to_json(w.window)},
            {"metrics", to_json(w.metrics)},
            {"baseline", w.baseline ? to_json(*w.baseline) : json(nullptr)},
            {"baseline_nonisolated_analytic", to_json(w.nonisolated_analytic)},
            {"ratios", nullptr}};
  if (w.baseline) {
    try {
      j["ratios"] = to_json(small_world_ratios(w.metrics, *w.baseline, thresholds));
    } catch (const UndefinedRatio&) {
    }
  }
  return j;
}

json to_json(const SmallWorldReport& r) {
  return {{"label", r.label},
          {"criterion", to_json(r.criterion)},
          {"T_seconds", r.window_length},
          {"windows_total", r.windows_total},
          {"windows_analyzed", r.windows_analyzed},
          {"partial_windows_excluded", r.partial_windows_excluded},
          {"undefined_windows_excluded", r.undefined_windows_excluded},
          {"avg_n", r.avg_n},
          {"avg_n_nonisolated", r.avg_n_nonisolated},
          {"avg_links", r.avg_links},
          {"avg_L", r.avg_L},
          {"avg_L_rand", r.avg_L_rand},
          {"avg_C", r.avg_C},
          {"avg_C_rand", r.avg_C_rand},
          {"avg_C_zero_filled", r.avg_C_zero_filled},
          {"L_ratio", optional_json(r.L_ratio)},
          {"C_ratio", optional_json(r.C_ratio)},
          {"mean_window_L_ratio", optional_json(r.mean_window_L_ratio)},
          {"mean_window_C_ratio", optional_json(r.mean_window_C_ratio)},
          {"small_world", r.small_world},
          {"min_C_ratio", r.thresholds.min_clustering_ratio},
          {"max_L_ratio", r.thresholds.max_path_ratio}};
}

SmallWorldReport report_from_json(const json& j) {
  SmallWorldReport r;
  r.label = j.at("label").get<std::string>();
  r.criterion = criterion_from_json(j.at("criterion"));
  r.window_length = j.at("T_seconds").get<std::int64_t>();
  r.windows_total = j.at("windows_total").get<std::size_t>();
  r.windows_analyzed = j.at("windows_analyzed").get<std::size_t>();
  r.partial_windows_excluded = j.at("partial_windows_excluded").get<std::size_t>();
  r.undefined_windows_excluded = j.at("undefined_windows_excluded").get<std::size_t>();
  r.avg_n = j.at("avg_n").get<double>();
  r.avg_n_nonisolated = j.at("avg_n_nonisolated").get<double>();
  r.avg_links = j.at("avg_links").get<double>();
  r.avg_L = j.at("avg_L").get<double>();
  r.avg_L_rand = j.at("avg_L_rand").get<double>();
  r.avg_C = j.at("avg_C").get<double>();
  r.avg_C_rand = j.at("avg_C_rand").get<double>();
  r.avg_C_zero_filled = j.at("avg_C_zero_filled").get<double>();
  r.L_ratio = optional_from<double>(j, "L_ratio");
  r.C_ratio = optional_from<double>(j, "C_ratio");
  r.mean_window_L_ratio = optional_from<double>(j, "mean_window_L_ratio");
  r.mean_window_C_ratio = optional_from<double>(j, "mean_window_C_ratio");
  r.small_world = j.at("small_world").get<bool>();
  r.thresholds.min_clustering_ratio = j.at("min_C_ratio").get<double>();
  r.thresholds.max_path_ratio = j.at("max_L_ratio").get<double>();
  return r;
}

}  // namespace dsg::json_io

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsg/baseline.hpp"
#include "dsg/criterion.hpp"
#include "dsg/metrics.hpp"
#include "dsg/window.hpp"

namespace dsg {

/// Everything computed for one window under one criterion.
struct WindowResult {
  Window window;
  GraphMetrics metrics;
  std::optional<RandomBaseline> baseline;  // absent for edgeless windows
  AnalyticBaseline nonisolated_analytic;   // G(n_nonisolated, M) estimates
};

/// One row of the small-world table: per-window metrics averaged over the
/// complete windows of one (criterion, window length) job.
struct SmallWorldReport {
  std::string label;  // experiment name, e.g. "Web"; may be empty
  SimilarityCriterion criterion;
  std::int64_t window_length = 0;
  std::size_t windows_total = 0;
  std::size_t windows_analyzed = 0;
  std::size_t partial_windows_excluded = 0;
  std::size_t undefined_windows_excluded = 0;
  double avg_n = 0.0;
  double avg_n_nonisolated = 0.0;
  double avg_links = 0.0;
  double avg_L = 0.0;
  double avg_L_rand = 0.0;
  double avg_C = 0.0;
  double avg_C_rand = 0.0;
  double avg_C_zero_filled = 0.0;
  // avg_L / avg_L_rand and avg_C / avg_C_rand.
  std::optional<double> L_ratio;
  std::optional<double> C_ratio;
  // Mean of per-window ratios, for comparison with the ratio of means.
  std::optional<double> mean_window_L_ratio;
  std::optional<double> mean_window_C_ratio;
  bool small_world = false;
  VerdictThresholds thresholds;

  friend bool operator==(const SmallWorldReport&, const SmallWorldReport&) = default;
};

/// "Web, m=1, T=2min", or "m=1, T=2min" without a label.
std::string display_label(const SmallWorldReport& report);

/// Averages the windows that are complete and have every metric defined.
/// Throws NoValidWindows if none are left.
SmallWorldReport aggregate(const SimilarityCriterion& criterion, std::int64_t window_length,
                           std::span<const WindowResult> windows, const VerdictThresholds& thresholds = {},
                           std::string label = {});

/// Fills the ratio and verdict fields from the averages already in the report.
void finalize_ratios(SmallWorldReport& report);

enum class TableFormat { Csv, Json, Text };

/// Text follows the printed table: node count as an integer, links
/// abbreviated to thousands ("38k"), path lengths to 2 decimals and clustering
/// to 3. CSV and JSON carry full precision and exact values.
std::string emit_table(std::span<const SmallWorldReport> reports, TableFormat format);

std::vector<SmallWorldReport> reports_from_json(std::string_view json);

/// Published small-world network used as a point of comparison.
struct ReferencePoint {
  std::string name;
  double L_ratio = 0.0;
  double C_ratio = 0.0;
  std::string source;
};

/// Static comparison set (WWW, Internet, movie actors, power grid, HEP
/// co-authorship). Ratios are L/L_rand and C/C_rand from the cited tables.
std::span<const ReferencePoint> bundled_reference_points();

struct ScatterRow {
  std::string label;
  double L_ratio = 0.0;
  double C_ratio = 0.0;
  bool is_reference = false;

  friend bool operator==(const ScatterRow&, const ScatterRow&) = default;
};

struct ScatterData {
  std::vector<ScatterRow> rows;
  std::size_t skipped = 0;  // reports or references without positive ratios
};

/// Measured reports first, then reference points.
ScatterData emit_ratio_scatter(std::span<const SmallWorldReport> reports,
                               std::span<const ReferencePoint> references);

std::string scatter_csv(const ScatterData& data);

/// Self-contained SVG: L ratio on a linear x axis, C ratio on a log y axis.
/// Output depends only on the data.
std::string scatter_svg(const ScatterData& data);

}  // namespace dsg

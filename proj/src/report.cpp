#include "dsg/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "dsg/error.hpp"
#include "json_io.hpp"

namespace dsg {

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_number(std::optional<double> x) { return x ? fmt::format("{}", *x) : std::string(); }

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string abbreviated_count(double x) {
  if (x < 1000.0) return fmt::format("{:.0f}", x);
  return fmt::format("{:.0f}k", x / 1000.0);
}

bool usable(const WindowResult& w) {
  return w.metrics.clustering && w.metrics.path_length && w.baseline && w.baseline->clustering &&
         w.baseline->path_length;
}

}  // namespace

std::string display_label(const SmallWorldReport& report) {
  std::string out = report.label.empty() ? std::string() : report.label + ", ";
  out += criterion_label(report.criterion);
  out += ", T=";
  out += duration_label(report.window_length);
  return out;
}

void finalize_ratios(SmallWorldReport& r) {
  r.L_ratio.reset();
  r.C_ratio.reset();
  r.small_world = false;
  try {
    auto ratios = small_world_ratios(r.avg_L, r.avg_C, r.avg_L_rand, r.avg_C_rand, r.thresholds);
    r.L_ratio = ratios.path_ratio;
    r.C_ratio = ratios.clustering_ratio;
    r.small_world = ratios.small_world;
  } catch (const UndefinedRatio&) {
  }
}

SmallWorldReport aggregate(const SimilarityCriterion& criterion, std::int64_t window_length,
                           std::span<const WindowResult> windows, const VerdictThresholds& thresholds,
                           std::string label) {
  SmallWorldReport r;
  r.label = std::move(label);
  r.criterion = criterion;
  r.window_length = window_length;
  r.thresholds = thresholds;
  r.windows_total = windows.size();

  double sum_l_ratio = 0.0, sum_c_ratio = 0.0;
  std::size_t ratio_windows = 0;
  for (const auto& w : windows) {
    if (w.window.partial) {
      ++r.partial_windows_excluded;
      continue;
    }
    if (!usable(w)) {
      ++r.undefined_windows_excluded;
      continue;
    }
    ++r.windows_analyzed;
    r.avg_n += double(w.metrics.n_total);
    r.avg_n_nonisolated += double(w.metrics.n_nonisolated);
    r.avg_links += double(w.metrics.links);
    r.avg_L += w.metrics.path_length->value;
    r.avg_L_rand += w.baseline->path_length->mean;
    r.avg_C += *w.metrics.clustering;
    r.avg_C_rand += w.baseline->clustering->mean;
    r.avg_C_zero_filled += w.metrics.clustering_zero_filled;
    try {
      auto ratios = small_world_ratios(w.metrics, *w.baseline, thresholds);
      sum_l_ratio += ratios.path_ratio;
      sum_c_ratio += ratios.clustering_ratio;
      ++ratio_windows;
    } catch (const UndefinedRatio&) {
    }
  }
  if (r.windows_analyzed == 0)
    throw NoValidWindows(fmt::format("{}: none of {} windows is complete with defined metrics ({} partial)",
                                     display_label(r), r.windows_total, r.partial_windows_excluded));

  const double k = double(r.windows_analyzed);
  for (double* avg : {&r.avg_n, &r.avg_n_nonisolated, &r.avg_links, &r.avg_L, &r.avg_L_rand, &r.avg_C,
                      &r.avg_C_rand, &r.avg_C_zero_filled})
    *avg /= k;
  if (ratio_windows > 0) {
    r.mean_window_L_ratio = sum_l_ratio / double(ratio_windows);
    r.mean_window_C_ratio = sum_c_ratio / double(ratio_windows);
  }
  finalize_ratios(r);
  return r;
}

std::string emit_table(std::span<const SmallWorldReport> reports, TableFormat format) {
  switch (format) {
    case TableFormat::Json: {
      auto doc = nlohmann::json::array();
      for (const auto& r : reports) doc.push_back(json_io::to_json(r));
      return doc.dump(2) + "\n";
    }
    case TableFormat::Csv: {
      std::string out =
          "criterion,granularity,threshold,T_seconds,windows_total,windows_analyzed,partial_windows_excluded,"
          "avg_n,avg_n_nonisolated,avg_links,avg_L,avg_L_rand,avg_C,avg_C_rand,L_ratio,C_ratio,small_world\n";
      for (const auto& r : reports) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_field(display_label(r)),
                           to_string(r.criterion.granularity), r.criterion.threshold, r.window_length,
                           r.windows_total, r.windows_analyzed, r.partial_windows_excluded, r.avg_n,
                           r.avg_n_nonisolated, r.avg_links, r.avg_L, r.avg_L_rand, r.avg_C, r.avg_C_rand,
                           csv_number(r.L_ratio), csv_number(r.C_ratio), r.small_world ? "true" : "false");
      }
      return out;
    }
    case TableFormat::Text: {
      std::vector<std::array<std::string, 7>> rows;
      rows.push_back({"criterion", "#node", "#links", "L", "L_rand", "C", "C_rand"});
      for (const auto& r : reports) {
        rows.push_back({display_label(r), fmt::format("{:.0f}", r.avg_n), abbreviated_count(r.avg_links),
                        fmt::format("{:.2f}", r.avg_L), fmt::format("{:.2f}", r.avg_L_rand),
                        fmt::format("{:.3f}", r.avg_C), fmt::format("{:.3f}", r.avg_C_rand)});
      }
      std::array<std::size_t, 7> width{};
      for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
      std::string out;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t c = 0; c < rows[i].size(); ++c) {
          if (c > 0) out += " | ";
          out += c == 0 ? fmt::format("{:<{}}", rows[i][c], width[c]) : fmt::format("{:>{}}", rows[i][c], width[c]);
        }
        out += '\n';
        if (i == 0) {
          std::size_t total = 3 * (width.size() - 1);
          for (auto w : width) total += w;
          out += std::string(total, '-') + '\n';
        }
      }
      return out;
    }
  }
  return {};
}

std::vector<SmallWorldReport> reports_from_json(std::string_view text) {
  std::vector<SmallWorldReport> out;
  try {
    auto doc = nlohmann::json::parse(text);
    for (const auto& j : doc) out.push_back(json_io::report_from_json(j));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("report", std::string("malformed report JSON: ") + e.what());
  }
  return out;
}

std::span<const ReferencePoint> bundled_reference_points() {
  // L, L_rand, C, C_rand as tabulated in R. Albert and A.-L. Barabasi,
  // "Statistical Mechanics of Complex Networks", Rev. Mod. Phys. 74, 47 (2002),
  // Table I; stored here as ratios.
  static const std::array<ReferencePoint, 5> points{{
      {"WWW (site level)", 3.1 / 3.35, 0.1078 / 0.00023,
       "Albert & Barabasi 2002, Table I (Adamic 1999): L=3.1 Lr=3.35 C=0.1078 Cr=0.00023"},
      {"Internet (domain level)", 3.7 / 6.36, 0.18 / 0.001,
       "Albert & Barabasi 2002, Table I (Yook et al. 2001): L=3.7 Lr=6.36 C=0.18 Cr=0.001"},
      {"Movie actors", 3.65 / 2.99, 0.79 / 0.00027,
       "Albert & Barabasi 2002, Table I (Watts & Strogatz 1998): L=3.65 Lr=2.99 C=0.79 Cr=0.00027"},
      {"Power grid", 18.7 / 12.4, 0.08 / 0.005,
       "Albert & Barabasi 2002, Table I (Watts & Strogatz 1998): L=18.7 Lr=12.4 C=0.08 Cr=0.005"},
      {"HEP co-authorship (SPIRES)", 4.0 / 2.12, 0.726 / 0.003,
       "Albert & Barabasi 2002, Table I (Newman 2001): L=4.0 Lr=2.12 C=0.726 Cr=0.003"},
  }};
  return points;
}

ScatterData emit_ratio_scatter(std::span<const SmallWorldReport> reports,
                               std::span<const ReferencePoint> references) {
  ScatterData data;
  for (const auto& r : reports) {
    if (r.L_ratio && r.C_ratio && *r.L_ratio > 0 && *r.C_ratio > 0)
      data.rows.push_back({display_label(r), *r.L_ratio, *r.C_ratio, false});
    else
      ++data.skipped;
  }
  for (const auto& p : references) {
    if (p.L_ratio > 0 && p.C_ratio > 0)
      data.rows.push_back({p.name, p.L_ratio, p.C_ratio, true});
    else
      ++data.skipped;
  }
  return data;
}

std::string scatter_csv(const ScatterData& data) {
  std::string out = "label,L_ratio,C_ratio,is_reference\n";
  for (const auto& row : data.rows)
    out += fmt::format("{},{},{},{}\n", csv_field(row.label), row.L_ratio, row.C_ratio,
                       row.is_reference ? "true" : "false");
  return out;
}

std::string scatter_svg(const ScatterData& data) {
  constexpr double width = 640, height = 480;
  constexpr double left = 70, right = 190, top = 30, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_max = 2.0;
  int decade_lo = 0, decade_hi = 3;
  if (!data.rows.empty()) {
    double c_lo = data.rows.front().C_ratio, c_hi = c_lo;
    for (const auto& row : data.rows) {
      x_max = std::max(x_max, row.L_ratio * 1.1);
      c_lo = std::min(c_lo, row.C_ratio);
      c_hi = std::max(c_hi, row.C_ratio);
    }
    decade_lo = std::min(0, static_cast<int>(std::floor(std::log10(c_lo))));
    decade_hi = std::max(decade_lo + 1, static_cast<int>(std::ceil(std::log10(c_hi))));
  }
  x_max = std::ceil(x_max * 2.0) / 2.0;

  auto sx = [&](double x) { return left + plot_w * x / x_max; };
  auto sy = [&](double c) {
    return top + plot_h * (1.0 - (std::log10(c) - decade_lo) / double(decade_hi - decade_lo));
  };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
      "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"sans-serif\" font-size=\"11\">\n",
      width, height);
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", width, height);

  for (int d = decade_lo; d <= decade_hi; ++d) {
    const double y = sy(std::pow(10.0, d));
    out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#ddd\"/>\n", left, y,
                       left + plot_w, y);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">1e{}</text>\n", left - 6, y + 4, d);
  }
  for (double x = 0.0; x <= x_max + 1e-9; x += 0.5) {
    const double px = sx(x);
    out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#ddd\"/>\n", px, top,
                       px, top + plot_h);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:.1f}</text>\n", px,
                       top + plot_h + 16, x);
  }
  out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
                     "stroke=\"black\"/>\n",
                     left, top, plot_w, plot_h);
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">L / L_rand</text>\n",
                     left + plot_w / 2, height - 18);
  out += fmt::format("<text x=\"16\" y=\"{:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2f})\">"
                     "C / C_rand (log)</text>\n",
                     top + plot_h / 2, top + plot_h / 2);

  for (const auto& row : data.rows) {
    const double px = sx(row.L_ratio), py = sy(row.C_ratio);
    if (row.is_reference)
      out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"#777\"/>\n",
                         px - 4, py - 4);
    else
      out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"#1f5fbf\"/>\n", px, py);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" fill=\"{}\">{}</text>\n", px + 7, py + 4,
                       row.is_reference ? "#777" : "#1f5fbf", xml_escape(row.label));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace dsg

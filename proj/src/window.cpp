#include "dsg/window.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>

#include "dsg/error.hpp"

namespace dsg {

std::string criterion_label(const SimilarityCriterion& criterion) {
  const char* symbol = criterion.granularity == Granularity::Server ? "s" : "m";
  return fmt::format("{}={}", symbol, criterion.threshold);
}

std::string duration_label(std::int64_t seconds) {
  if (seconds > 0 && seconds % 86400 == 0) {
    auto days = seconds / 86400;
    return fmt::format("{}{}", days, days == 1 ? "day" : "days");
  }
  if (seconds > 0 && seconds % 3600 == 0) return fmt::format("{}h", seconds / 3600);
  if (seconds > 0 && seconds % 60 == 0) return fmt::format("{}min", seconds / 60);
  return fmt::format("{}s", seconds);
}

std::vector<WindowProfile> partition_windows(std::span<const AccessRecord> records, std::int64_t length,
                                             Granularity granularity) {
  if (length <= 0) throw InvalidWindow(fmt::format("window length must be positive, got {}", length));
  if (records.empty()) return {};

  auto [lo, hi] = std::minmax_element(records.begin(), records.end(),
                                      [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
  const std::int64_t trace_start = lo->timestamp;
  const std::int64_t last = hi->timestamp;
  const auto count = static_cast<std::uint64_t>((last - trace_start) / length) + 1;

  std::vector<WindowProfile> profiles(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto& p = profiles[i];
    p.window.index = i;
    p.window.start = trace_start + static_cast<std::int64_t>(i) * length;
    p.window.length = length;
    p.granularity = granularity;
  }
  auto& tail = profiles.back().window;
  tail.partial = last - tail.start + 1 < length;

  for (const auto& r : records) {
    auto index = static_cast<std::size_t>((r.timestamp - trace_start) / length);
    profiles[index].accesses[r.consumer].insert(r.object);
  }
  return profiles;
}

void write_window_profile(std::ostream& out, const WindowProfile& profile) {
  std::vector<AccessRecord> rows;
  for (const auto& [consumer, objects] : profile.accesses)
    for (const auto& object : objects) rows.push_back({profile.window.start, consumer, object, std::nullopt});
  write_canonical_csv(out, rows);
}

std::vector<AnalysisJob> sweep_plan(std::span<const std::int64_t> window_lengths,
                                    std::span<const SimilarityCriterion> criteria) {
  std::vector<AnalysisJob> jobs;
  jobs.reserve(window_lengths.size() * criteria.size());
  for (auto t : window_lengths)
    for (const auto& c : criteria) jobs.push_back({t, c});
  std::sort(jobs.begin(), jobs.end());
  jobs.erase(std::unique(jobs.begin(), jobs.end()), jobs.end());
  return jobs;
}

}  // namespace dsg

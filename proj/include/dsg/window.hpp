#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dsg/criterion.hpp"
#include "dsg/trace.hpp"

namespace dsg {

/// Half-open interval [start, start + length) of the trace.
struct Window {
  std::uint64_t index = 0;
  std::int64_t start = 0;
  std::int64_t length = 0;
  // Trailing window whose records span less than `length` seconds.
  bool partial = false;

  friend bool operator==(const Window&, const Window&) = default;
};

/// Consumer id -> distinct objects accessed during the window.
using InterestSets = std::map<std::string, std::set<std::string>>;

struct WindowProfile {
  Window window;
  Granularity granularity = Granularity::Page;
  InterestSets accesses;

  friend bool operator==(const WindowProfile&, const WindowProfile&) = default;
};

/// Buckets records into consecutive windows of `length` seconds anchored at
/// the earliest timestamp. Input order does not matter. Every index from 0 to
/// the last occupied window is emitted, empty ones with no accesses.
/// Throws InvalidWindow when length <= 0.
std::vector<WindowProfile> partition_windows(std::span<const AccessRecord> records, std::int64_t length,
                                             Granularity granularity = Granularity::Page);

/// Writes the interest sets as canonical CSV (timestamp = window start).
void write_window_profile(std::ostream& out, const WindowProfile& profile);

struct AnalysisJob {
  std::int64_t window_length = 0;
  SimilarityCriterion criterion;

  friend auto operator<=>(const AnalysisJob&, const AnalysisJob&) = default;
};

/// Deduplicated Cartesian product, sorted by window length then criterion.
std::vector<AnalysisJob> sweep_plan(std::span<const std::int64_t> window_lengths,
                                    std::span<const SimilarityCriterion> criteria);

}  // namespace dsg

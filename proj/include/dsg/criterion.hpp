#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "dsg/trace.hpp"

namespace dsg {

/// Edge rule of a data-sharing graph: two consumers are linked when they
/// accessed at least `threshold` common objects at the given granularity.
struct SimilarityCriterion {
  Granularity granularity = Granularity::Page;
  std::uint32_t threshold = 1;

  friend auto operator<=>(const SimilarityCriterion&, const SimilarityCriterion&) = default;
};

/// "m=10" for pages and files, "s=10" for servers.
std::string criterion_label(const SimilarityCriterion& criterion);

/// "45s", "2min", "2h", "7days": the largest unit dividing the length exactly.
std::string duration_label(std::int64_t seconds);

}  // namespace dsg

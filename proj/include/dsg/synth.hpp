#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dsg/random.hpp"
#include "dsg/trace.hpp"

namespace dsg {

/// Planted-partition access workload. Consumer i belongs to group
/// i mod groups. Each access goes to the consumer's group pool with
/// probability in_group_affinity and to the shared global pool otherwise; the
/// object within a pool is drawn by Zipf rank.
struct SynthConfig {
  std::size_t consumers = 200;
  std::size_t groups = 10;
  std::size_t objects_per_group = 1000;
  std::size_t global_objects = 50;
  double zipf_exponent = 0.8;
  double in_group_affinity = 0.9;
  std::size_t accesses_per_consumer = 50;
  std::int64_t duration = 7200;  // seconds
  std::uint64_t seed = 1;
};

/// Throws InvalidConfig naming the first violated constraint.
void validate(const SynthConfig& config);

/// Draws 0-based ranks r with probability proportional to (r + 1)^-exponent.
class ZipfSampler {
 public:
  ZipfSampler(std::size_t size, double exponent);
  std::size_t operator()(Rng& rng) const;
  std::size_t size() const { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

/// Records sorted by timestamp (ties by consumer index, then draw order).
/// Group objects are "http://g<group>.example/o<rank>"; global objects are
/// "http://s<rank mod 100>.example/o<rank>". Consumer ids look like IPv4
/// addresses in 10.0.0.0/8. Timestamps are uniform in [0, duration).
std::vector<AccessRecord> generate_trace(const SynthConfig& config);

}  // namespace dsg

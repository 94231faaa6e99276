#include "dsg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <fmt/format.h>

#include "dsg/error.hpp"

namespace dsg {

void validate(const SynthConfig& c) {
  if (c.consumers == 0) throw InvalidConfig("consumers must be positive");
  if (c.groups == 0) throw InvalidConfig("groups must be positive");
  if (c.groups > c.consumers) throw InvalidConfig("groups <= consumers violated");
  if (!(c.in_group_affinity >= 0.0 && c.in_group_affinity <= 1.0))
    throw InvalidConfig("in_group_affinity must lie in [0, 1]");
  if (!(c.zipf_exponent >= 0.0) || !std::isfinite(c.zipf_exponent))
    throw InvalidConfig("zipf_exponent must be >= 0");
  if (c.in_group_affinity > 0.0 && c.objects_per_group == 0)
    throw InvalidConfig("objects_per_group must be positive when in_group_affinity > 0");
  if (c.in_group_affinity < 1.0 && c.global_objects == 0)
    throw InvalidConfig("global_objects must be positive when in_group_affinity < 1");
  if (c.duration <= 0) throw InvalidConfig("duration must be positive");
  if (c.consumers > (std::size_t{1} << 24)) throw InvalidConfig("at most 2^24 consumers are addressable");
}

ZipfSampler::ZipfSampler(std::size_t size, double exponent) : cdf_(size) {
  double total = 0.0;
  for (std::size_t r = 0; r < size; ++r) {
    total += std::pow(double(r + 1), -exponent);
    cdf_[r] = total;
  }
  for (auto& x : cdf_) x /= total;
}

std::size_t ZipfSampler::operator()(Rng& rng) const {
  const double u = uniform_unit(rng);
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
}

std::vector<AccessRecord> generate_trace(const SynthConfig& config) {
  validate(config);
  Rng rng(config.seed);
  const ZipfSampler group_pool(std::max<std::size_t>(config.objects_per_group, 1), config.zipf_exponent);
  const ZipfSampler global_pool(std::max<std::size_t>(config.global_objects, 1), config.zipf_exponent);

  struct Draw {
    std::int64_t timestamp;
    std::size_t consumer;
    std::size_t seq;
    AccessRecord record;
  };
  std::vector<Draw> draws;
  draws.reserve(config.consumers * config.accesses_per_consumer);
  for (std::size_t c = 0; c < config.consumers; ++c) {
    const std::size_t group = c % config.groups;
    const std::string consumer = fmt::format("10.{}.{}.{}", (c >> 16) & 255, (c >> 8) & 255, c & 255);
    for (std::size_t a = 0; a < config.accesses_per_consumer; ++a) {
      const bool in_group = uniform_unit(rng) < config.in_group_affinity;
      std::string server, object;
      if (in_group) {
        const auto rank = group_pool(rng);
        server = fmt::format("g{}.example", group);
        object = fmt::format("http://{}/o{}", server, rank);
      } else {
        const auto rank = global_pool(rng);
        server = fmt::format("s{}.example", rank % 100);
        object = fmt::format("http://{}/o{}", server, rank);
      }
      const auto ts = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(config.duration)));
      draws.push_back({ts, c, a, AccessRecord{ts, consumer, std::move(object), std::move(server)}});
    }
  }
  std::sort(draws.begin(), draws.end(), [](const Draw& x, const Draw& y) {
    return std::tie(x.timestamp, x.consumer, x.seq) < std::tie(y.timestamp, y.consumer, y.seq);
  });
  std::vector<AccessRecord> records;
  records.reserve(draws.size());
  for (auto& d : draws) records.push_back(std::move(d.record));
  return records;
}

}  // namespace dsg

#include <cmath>
#include <set>

#include "doctest.h"
#include "dsg/error.hpp"
#include "dsg/sharing_graph.hpp"
#include "dsg/synth.hpp"

using namespace dsg;

TEST_CASE("invalid configurations are rejected") {
  auto bad = [](auto mutate) {
    SynthConfig c;
    mutate(c);
    return c;
  };
  CHECK_NOTHROW(validate(SynthConfig{}));
  CHECK_THROWS_AS(validate(bad([](SynthConfig& c) { c.consumers = 0; })), InvalidConfig);
  CHECK_THROWS_AS(validate(bad([](SynthConfig& c) { c.groups = 0; })), InvalidConfig);
  CHECK_THROWS_AS(validate(bad([](SynthConfig& c) { c.groups = 300; })), InvalidConfig);
  CHECK_THROWS_AS(validate(bad([](SynthConfig& c) { c.in_group_affinity = 1.5; })), InvalidConfig);
  CHECK_THROWS_AS(validate(bad([](SynthConfig& c) { c.in_group_affinity = -0.1; })), InvalidConfig);
  CHECK_THROWS_AS(validate(bad([](SynthConfig& c) { c.zipf_exponent = -1; })), InvalidConfig);
  CHECK_THROWS_AS(validate(bad([](SynthConfig& c) { c.duration = 0; })), InvalidConfig);
  CHECK_THROWS_AS(validate(bad([](SynthConfig& c) { c.objects_per_group = 0; })), InvalidConfig);
  CHECK_THROWS_AS(generate_trace(bad([](SynthConfig& c) { c.consumers = 0; })), InvalidConfig);
}

TEST_CASE("trace shape") {
  SynthConfig c;
  c.consumers = 20;
  c.accesses_per_consumer = 7;
  c.duration = 500;
  auto rs = generate_trace(c);
  CHECK(rs.size() == 140);
  std::set<std::string> consumers;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    CHECK(rs[i].timestamp >= 0);
    CHECK(rs[i].timestamp < 500);
    if (i > 0) CHECK(rs[i - 1].timestamp <= rs[i].timestamp);
    CHECK(rs[i].consumer.rfind("10.", 0) == 0);
    CHECK(rs[i].object.rfind("http://", 0) == 0);
    consumers.insert(rs[i].consumer);
  }
  CHECK(consumers.size() == 20);
}

TEST_CASE("same seed, same trace") {
  SynthConfig c;
  c.consumers = 30;
  auto a = generate_trace(c);
  CHECK(a == generate_trace(c));
  c.seed = 2;
  CHECK_FALSE(a == generate_trace(c));
}

TEST_CASE("one group with full affinity gives a near-complete graph") {
  SynthConfig c;
  c.consumers = 30;
  c.groups = 1;
  c.in_group_affinity = 1.0;
  c.objects_per_group = 20;
  c.accesses_per_consumer = 40;
  auto rs = generate_trace(c);
  auto profile = partition_windows(rs, c.duration).front();
  auto g = build_sharing_graph(profile, {Granularity::Page, 1});
  const double density = double(g.num_edges()) / (30.0 * 29 / 2);
  MESSAGE("density " << density);
  CHECK(density > 0.95);
}

TEST_CASE("isolated groups share nothing") {
  // One consumer per group and no global traffic: no object is shared.
  SynthConfig c;
  c.consumers = 8;
  c.groups = 8;
  c.in_group_affinity = 1.0;
  auto rs = generate_trace(c);
  auto profile = partition_windows(rs, c.duration).front();
  CHECK(build_sharing_graph(profile, {Granularity::Page, 1}).num_edges() == 0);
}

TEST_CASE("global objects carry a server") {
  SynthConfig c;
  c.consumers = 10;
  c.in_group_affinity = 0.0;
  for (const auto& r : generate_trace(c)) {
    REQUIRE(r.server);
    CHECK(r.object.find(*r.server) != std::string::npos);
  }
}

TEST_CASE("popularity follows the configured exponent") {
  SynthConfig c;
  c.consumers = 500;
  c.groups = 1;
  c.in_group_affinity = 1.0;
  c.objects_per_group = 2000;
  c.accesses_per_consumer = 200;
  c.zipf_exponent = 0.8;
  auto rs = generate_trace(c);
  REQUIRE(rs.size() >= 50000);
  auto d = popularity_distribution(rs);
  REQUIRE(d.exponent);
  MESSAGE("fitted " << *d.exponent);
  CHECK(std::abs(*d.exponent - 0.8) <= 0.15);
}

TEST_CASE("ZipfSampler") {
  ZipfSampler uniform(4, 0.0);
  Rng rng(1);
  std::vector<int> hits(4);
  for (int i = 0; i < 40000; ++i) ++hits[uniform(rng)];
  for (int h : hits) CHECK(std::abs(h - 10000) < 400);

  ZipfSampler skewed(3, 1.0);
  std::vector<int> s(3);
  for (int i = 0; i < 110000; ++i) ++s[skewed(rng)];
  // Weights 1, 1/2, 1/3 sum to 11/6: expected 60000, 30000, 20000.
  CHECK(std::abs(s[0] - 60000) < 800);
  CHECK(std::abs(s[1] - 30000) < 800);
  CHECK(std::abs(s[2] - 20000) < 800);
}

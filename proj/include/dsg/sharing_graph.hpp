#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dsg/criterion.hpp"
#include "dsg/graph.hpp"
#include "dsg/window.hpp"

namespace dsg {

/// Objects with more consumers than this are reported as hot.
inline constexpr std::size_t kDefaultFanoutLimit = 5000;

/// Object id -> consumers that accessed it. Same shape as InterestSets, so
/// inverting twice returns the original map.
using InvertedIndex = std::map<std::string, std::set<std::string>>;

InvertedIndex invert_index(const InterestSets& sets);
inline InvertedIndex invert_index(const WindowProfile& profile) { return invert_index(profile.accesses); }

/// Unordered consumer pair, first < second.
struct ConsumerPair {
  std::string first;
  std::string second;

  friend auto operator<=>(const ConsumerPair&, const ConsumerPair&) = default;
};

struct CoOccurrenceCounts {
  std::map<ConsumerPair, std::uint32_t> counts;  // pairs with >= 1 common object
  std::vector<std::string> hot_objects;          // fan-out above the limit
};

/// Pair counts straight from the inverted index: every object shared by k
/// consumers contributes k(k-1)/2 increments.
CoOccurrenceCounts co_occurrence_counts(const InvertedIndex& index, std::size_t fanout_limit = kDefaultFanoutLimit);

/// Data-sharing graph of one window. Node i is nodes[i]; nodes are the
/// window's active consumers in lexicographic order, isolated ones included.
struct SharingGraph {
  std::vector<std::string> nodes;
  Graph topology;
  std::vector<std::uint32_t> weights;  // common-object count, aligned with topology.edges()
  SimilarityCriterion criterion;
  std::size_t hot_objects = 0;

  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_edges() const { return topology.num_edges(); }
};

/// Weighted co-occurrence graph of one window: every pair sharing at least one
/// object, with its count. Thresholding it yields the sharing graph for any m,
/// so a sweep over m needs one construction per window.
class CoOccurrenceGraph {
 public:
  /// Counts are accumulated one consumer row at a time through a dense
  /// accumulator, so memory stays linear in consumers plus output edges no
  /// matter how many consumers a single object has.
  static CoOccurrenceGraph build(const WindowProfile& profile, std::size_t fanout_limit = kDefaultFanoutLimit);

  /// Throws GranularityMismatch if the criterion's granularity differs from
  /// the profile's.
  SharingGraph threshold(const SimilarityCriterion& criterion) const;

  Granularity granularity() const { return granularity_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::uint32_t>& weights() const { return weights_; }
  std::size_t hot_objects() const { return hot_objects_; }

 private:
  Granularity granularity_ = Granularity::Page;
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;  // sorted
  std::vector<std::uint32_t> weights_;
  std::size_t hot_objects_ = 0;
};

SharingGraph build_sharing_graph(const WindowProfile& profile, const SimilarityCriterion& criterion,
                                 std::size_t fanout_limit = kDefaultFanoutLimit);

}  // namespace dsg

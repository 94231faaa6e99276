#include "dsg/sharing_graph.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

#include "dsg/error.hpp"

namespace dsg {

InvertedIndex invert_index(const InterestSets& sets) {
  InvertedIndex index;
  for (const auto& [consumer, objects] : sets)
    for (const auto& object : objects) index[object].insert(consumer);
  return index;
}

CoOccurrenceCounts co_occurrence_counts(const InvertedIndex& index, std::size_t fanout_limit) {
  CoOccurrenceCounts out;
  for (const auto& [object, consumers] : index) {
    if (consumers.size() > fanout_limit) out.hot_objects.push_back(object);
    for (auto a = consumers.begin(); a != consumers.end(); ++a)
      for (auto b = std::next(a); b != consumers.end(); ++b) ++out.counts[ConsumerPair{*a, *b}];
  }
  return out;
}

CoOccurrenceGraph CoOccurrenceGraph::build(const WindowProfile& profile, std::size_t fanout_limit) {
  CoOccurrenceGraph g;
  g.granularity_ = profile.granularity;
  const std::size_t n = profile.accesses.size();
  g.nodes_.reserve(n);

  // Object -> ascending consumer ids; consumer -> object ids.
  std::unordered_map<std::string_view, std::uint32_t> object_ids;
  std::vector<std::vector<NodeId>> members;
  std::vector<std::vector<std::uint32_t>> interests(n);
  NodeId next = 0;
  for (const auto& [consumer, objects] : profile.accesses) {
    g.nodes_.push_back(consumer);
    auto& row = interests[next];
    row.reserve(objects.size());
    for (const auto& object : objects) {
      auto [it, inserted] = object_ids.try_emplace(object, static_cast<std::uint32_t>(members.size()));
      if (inserted) members.emplace_back();
      members[it->second].push_back(next);
      row.push_back(it->second);
    }
    ++next;
  }
  for (const auto& m : members)
    if (m.size() > fanout_limit) ++g.hot_objects_;

  std::vector<std::uint32_t> counts(n, 0);
  std::vector<NodeId> touched;
  for (NodeId u = 0; u < n; ++u) {
    touched.clear();
    for (auto object : interests[u]) {
      const auto& m = members[object];
      for (auto it = std::upper_bound(m.begin(), m.end(), u); it != m.end(); ++it) {
        if (counts[*it]++ == 0) touched.push_back(*it);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto v : touched) {
      g.edges_.push_back({u, v});
      g.weights_.push_back(counts[v]);
      counts[v] = 0;
    }
  }
  return g;
}

SharingGraph CoOccurrenceGraph::threshold(const SimilarityCriterion& criterion) const {
  if (criterion.granularity != granularity_)
    throw GranularityMismatch(fmt::format("profile is {}-level but criterion asks for {}-level objects",
                                          to_string(granularity_), to_string(criterion.granularity)));
  if (criterion.threshold < 1) throw ConfigError("graph", "similarity threshold must be at least 1");
  SharingGraph out;
  out.nodes = nodes_;
  out.criterion = criterion;
  out.hot_objects = hot_objects_;
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (weights_[i] >= criterion.threshold) {
      kept.push_back(edges_[i]);
      out.weights.push_back(weights_[i]);
    }
  }
  // edges_ is already canonical, so weights stay aligned with topology.edges().
  out.topology = Graph::from_edges(nodes_.size(), std::move(kept));
  return out;
}

SharingGraph build_sharing_graph(const WindowProfile& profile, const SimilarityCriterion& criterion,
                                 std::size_t fanout_limit) {
  if (criterion.granularity != profile.granularity)
    throw GranularityMismatch(fmt::format("profile is {}-level but criterion asks for {}-level objects",
                                          to_string(profile.granularity), to_string(criterion.granularity)));
  return CoOccurrenceGraph::build(profile, fanout_limit).threshold(criterion);
}

}  // namespace dsg

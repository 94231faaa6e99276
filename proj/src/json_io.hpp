#pragma once

// JSON mapping for the report and per-job documents. Absent optionals become
// null.

#include <optional>

#include "json.hpp"

#include "dsg/baseline.hpp"
#include "dsg/metrics.hpp"
#include "dsg/report.hpp"

namespace dsg::json_io {

using nlohmann::json;

template <typename T>
json optional_json(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

json to_json(const SimilarityCriterion& c);
SimilarityCriterion criterion_from_json(const json& j);
json to_json(const Window& w);
json to_json(const PathLength& p);
json to_json(const GraphMetrics& m);
json to_json(const SampleStat& s);
json to_json(const AnalyticBaseline& a);
json to_json(const RandomBaseline& b);
json to_json(const SmallWorldRatios& r);
json to_json(const WindowResult& w, const VerdictThresholds& thresholds);
json to_json(const SmallWorldReport& r);
SmallWorldReport report_from_json(const json& j);

}  // namespace dsg::json_io

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dsg/error.hpp"
#include "dsg/pipeline.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace dsg;
namespace fs = std::filesystem;

namespace {

// 1000 synthetic records: dsgraph synth --consumers 40 --groups 4
// --objects-per-group 30 --global-objects 20 --accesses 25 --duration 600 --seed 3
const fs::path kTrace = fs::path(DSG_TEST_DATA_DIR) / "small_trace.csv";
// sha256sum tests/data/small_trace.csv
constexpr const char* kTraceSha256 = "9adbd6aee6d547dc210207f064d303540da664068125a98c12daa1160f450bf6";

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("dsg-test-" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json load(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

PipelineConfig small_config(const fs::path& out) {
  PipelineConfig c;
  c.trace = kTrace;
  c.windows = {120};
  c.min_common = {1};
  c.out = out;
  return c;
}

}  // namespace

TEST_CASE("golden trace: manifest hash and per-window metrics") {
  auto out = scratch("golden");
  auto summary = analyze_trace(small_config(out));
  CHECK(summary.input_sha256 == kTraceSha256);
  CHECK(summary.records == 1000);
  CHECK(summary.parse_errors == 0);
  REQUIRE(summary.reports.size() == 1);

  auto manifest = load(out / "manifest.json");
  CHECK(manifest["input"]["sha256"] == kTraceSha256);
  CHECK(manifest["input"]["bytes"] == fs::file_size(kTrace));
  CHECK(manifest["records"]["accepted"] == 1000);

  // Rebuild every window by hand and check the recorded metrics against the
  // brute-force oracle.
  auto trace = read_trace_file(kTrace, TraceFormat::CanonicalCsv);
  std::map<std::int64_t, InterestSets> buckets;
  std::int64_t t0 = trace.records.front().timestamp;
  for (const auto& r : trace.records) t0 = std::min(t0, r.timestamp);
  for (const auto& r : trace.records) buckets[(r.timestamp - t0) / 120][r.consumer].insert(canonicalize_url(r.object));

  auto job = load(out / "job-000.json");
  const auto& windows = job["windows"];
  REQUIRE(windows.size() == buckets.size());
  double sum_c = 0, sum_l = 0;
  for (const auto& w : windows) {
    const auto& sets = buckets.at(w["window"]["index"].get<std::int64_t>());
    std::vector<std::string> names;
    for (const auto& [c, os] : sets) names.push_back(c);
    std::vector<Edge> edges;
    for (const auto& [a, b] : oracle::sharing_edges(sets, 1)) {
      auto ia = std::lower_bound(names.begin(), names.end(), a) - names.begin();
      auto ib = std::lower_bound(names.begin(), names.end(), b) - names.begin();
      edges.push_back({NodeId(ia), NodeId(ib)});
    }
    oracle::Matrix mat(names.size(), edges);
    const auto& m = w["metrics"];
    CHECK(m["n_total"] == names.size());
    CHECK(m["links"] == edges.size());
    CHECK(m["clustering_C"].get<double>() == doctest::Approx(*oracle::clustering(mat)));
    CHECK(m["path_length_L"]["value"].get<double>() == doctest::Approx(*oracle::path_length(mat)));
    CHECK(m["largest_component"] == oracle::component_sizes(names.size(), edges).front());
    CHECK_FALSE(w["window"]["partial"].get<bool>());
    sum_c += m["clustering_C"].get<double>();
    sum_l += m["path_length_L"]["value"].get<double>();
  }
  const auto& r = summary.reports[0];
  CHECK(r.windows_analyzed == windows.size());
  CHECK(r.avg_C == doctest::Approx(sum_c / double(windows.size())));
  CHECK(r.avg_L == doctest::Approx(sum_l / double(windows.size())));
}

TEST_CASE("two runs write identical bytes") {
  auto a = scratch("det-a"), b = scratch("det-b");
  auto ca = small_config(a), cb = small_config(b);
  ca.windows = cb.windows = {120, 300};
  ca.min_common = cb.min_common = {1, 2};
  ca.seed = cb.seed = 7;
  analyze_trace(ca);
  analyze_trace(cb);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    if (name == "manifest.json") continue;  // records the output path
    CHECK_MESSAGE(slurp(entry.path()) == slurp(b / name), name.string());
    ++files;
  }
  CHECK(files == 4 + 3);  // four jobs, report.csv, scatter.csv, scatter.svg
  auto ma = load(a / "manifest.json"), mb = load(b / "manifest.json");
  CHECK(ma["jobs"] == mb["jobs"]);
  CHECK(ma["input"] == mb["input"]);
}

TEST_CASE("missing trace fails in the ingest stage") {
  auto c = small_config(scratch("missing"));
  c.trace = "/nonexistent/trace.csv";
  std::ostringstream out, err;
  CHECK(run_pipeline(c, out, err) == 3);
  CHECK(err.str().rfind("ingest: ", 0) == 0);
}

TEST_CASE("error-rate limit") {
  auto dir = scratch("errors");
  fs::create_directories(dir);
  const auto trace = dir / "trace.csv";
  {
    std::ofstream f(trace);
    for (int i = 0; i < 90; ++i) f << i << ",c" << i % 5 << ",o" << i % 7 << ",\n";
    for (int i = 0; i < 10; ++i) f << "garbage\n";
  }
  auto c = small_config(dir / "out");
  c.trace = trace;
  c.windows = {30};
  CHECK_THROWS_AS(analyze_trace(c), InputError);
  c.max_error_rate = 0.2;
  auto summary = analyze_trace(c);
  CHECK(summary.parse_errors == 10);
  CHECK(summary.records == 90);
}

TEST_CASE("a job without complete windows is skipped, not fatal") {
  auto out = scratch("skip");
  auto c = small_config(out);
  c.windows = {120, 100000};
  auto summary = analyze_trace(c);
  CHECK(summary.reports.size() == 1);
  CHECK(summary.job_errors.size() == 1);
  auto manifest = load(out / "manifest.json");
  CHECK(manifest["jobs"][1]["status"] == "no-valid-windows");

  c.windows = {100000};
  c.out = scratch("skip-all");
  CHECK_THROWS_AS(analyze_trace(c), NoValidWindows);
  std::ostringstream o, e;
  CHECK(run_pipeline(c, o, e) == 4);
}

TEST_CASE("window dumps and graph export") {
  auto out = scratch("export");
  auto c = small_config(out);
  c.dump_windows = out / "windows";
  c.graph_out = GraphOutFormat::EdgeList;
  analyze_trace(c);
  auto job = load(out / "job-000.json");
  for (const auto& w : job["windows"]) {
    const auto idx = w["window"]["index"].get<int>();
    char stem[64];
    std::snprintf(stem, sizeof stem, "job-000-window-%05d", idx);
    auto edges = slurp(out / "graphs" / (std::string(stem) + ".edges"));
    auto nodes = slurp(out / "graphs" / (std::string(stem) + ".nodes"));
    CHECK(std::count(edges.begin(), edges.end(), '\n') == w["metrics"]["links"].get<long>());
    CHECK(std::count(nodes.begin(), nodes.end(), '\n') == w["metrics"]["n_total"].get<long>());
    std::snprintf(stem, sizeof stem, "window-T120-%05d.csv", idx);
    CHECK(fs::exists(out / "windows" / stem));
  }

  std::ostringstream adj;
  SharingGraph g;
  g.nodes = {"a", "b", "c"};
  g.topology = Graph::from_edges(3, {{0, 1}, {0, 2}});
  g.weights = {2, 1};
  write_sharing_graph(adj, g, GraphOutFormat::Adjacency);
  CHECK(adj.str() == "0: 1 2\n1: 0\n2: 0\n");
  std::ostringstream el;
  write_sharing_graph(el, g, GraphOutFormat::EdgeList);
  CHECK(el.str() == "0 1 2\n0 2 1\n");
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

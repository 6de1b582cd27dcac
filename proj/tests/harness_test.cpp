#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "varcore/harness.hpp"
#include "varcore/synthesis.hpp"

using namespace varcore::harness;
using varcore::variants::VariantSet;
namespace fs = std::filesystem;

namespace {

struct TimeFixture : ::testing::Test {
  static void SetUpTestSuite() {
    const auto w = varcore::rtw::load_rtw(VARCORE_DATA_DIR "/time/time.rtw");
    model = varcore::synthesis::assemble_model(w).model;
    vs = varcore::variants::enumerate_variants(model);
    map = varcore::variants::load_feature_map(VARCORE_DATA_DIR "/time/feature_map.csv", vs.features);
  }
  HarnessOptions options(const std::string& name, const std::string& cmd) const {
    HarnessOptions o;
    o.workdir = fs::temp_directory_path() / ("varcore_harness_" + name);
    fs::remove_all(o.workdir);
    o.command = cmd;
    o.jobs = 4;
    return o;
  }
  static inline varcore::model::FeatureModel model;
  static inline VariantSet vs;
  static inline varcore::variants::FeatureCodeMap map;
};

const std::string kBuildStub =
    "grep -q 'CFG_SIGNAL false' {config} && grep -q 'CFG_VIRTUAL true' {config}";

}  // namespace

TEST(SamplingSpec, ParseAndPrint) {
  EXPECT_EQ(Sampling::parse("all").kind, Sampling::Kind::All);
  const auto r = Sampling::parse("random:2:7");
  EXPECT_EQ(r.kind, Sampling::Kind::Random);
  EXPECT_EQ(r.count, 2u);
  EXPECT_EQ(r.seed, 7u);
  EXPECT_EQ(r.to_string(), "random:2:7");
  EXPECT_EQ(Sampling::parse("ids:0001,0004").ids, (std::vector<std::string>{"0001", "0004"}));
  EXPECT_THROW(Sampling::parse("random:x:1"), HarnessError);
  EXPECT_THROW(Sampling::parse("some"), HarnessError);
  EXPECT_THROW(Sampling::parse("ids:"), HarnessError);
}

TEST_F(TimeFixture, BuildStubSplitsOnSignalAndVirtualMet) {
  const auto o = options("build", kBuildStub);
  const auto r = run_harness(vs, map, o);
  EXPECT_EQ(r.total, 128u);
  EXPECT_EQ(r.pass, 72u);
  EXPECT_EQ(r.fail, 56u);
  EXPECT_EQ(r.skipped, 0u);
  for (const auto& row : r.results) {
    const auto& v = *vs.find(row.id);
    const bool expected = !v.values.at("signal") && v.values.at("virtual_met");
    EXPECT_EQ(row.outcome == Outcome::Pass, expected) << row.id;
  }
  EXPECT_EQ(r.results[0].config, "0001/config.h");
  EXPECT_TRUE(fs::exists(o.workdir / "0001" / "config.h"));
  EXPECT_TRUE(fs::exists(o.workdir / "0001" / "log.txt"));
}

TEST_F(TimeFixture, UnitStubAlsoRejectsClient) {
  const auto r = run_harness(vs, map, options("unit", kBuildStub + " && grep -q 'CFG_CLIENT false' {config}"));
  EXPECT_EQ(r.pass, 56u);
  EXPECT_EQ(r.fail, 72u);
}

TEST_F(TimeFixture, RandomSamplingIsDeterministic) {
  Sampling s = Sampling::parse("random:2:7");
  const auto a = select(vs, s);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(select(vs, s), a);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  auto o = options("random", kBuildStub);
  o.sampling = s;
  const auto r = run_harness(vs, map, o);
  EXPECT_EQ(r.skipped, 126u);
  EXPECT_EQ(r.pass + r.fail, 2u);
  EXPECT_EQ(select(vs, Sampling::parse("random:500:1")).size(), 128u);
}

TEST_F(TimeFixture, IdSamplingAndKeyValue) {
  auto o = options("ids", "grep -q '^CFE_PLATFORM_TIME_CFG_CLIENT=' {config} && test {id} = 0002");
  o.sampling = Sampling::parse("ids:0001,0002");
  o.format = varcore::variants::ConfigFormat::KeyValue;
  const auto r = run_harness(vs, map, o);
  EXPECT_EQ(r.pass, 1u);
  EXPECT_EQ(r.fail, 1u);
  EXPECT_EQ(r.results[1].config, "0002/config.txt");
  o.sampling = Sampling::parse("ids:9999");
  EXPECT_THROW(run_harness(vs, map, o), HarnessError);
}

TEST_F(TimeFixture, FailureTraceNamesSignal) {
  auto o = options("trace", "grep -q 'CFG_SIGNAL false' {config}");
  const auto r = run_harness(vs, map, o);
  const auto traces = trace_failures(r, vs, &model);
  ASSERT_EQ(traces.size(), r.fail);
  for (const auto& t : traces) {
    ASSERT_EQ(t.suspects.size(), 1u);
    EXPECT_EQ(t.suspects[0], (Suspect{"signal", true, "TIME-15"}));
  }
}

TEST_F(TimeFixture, Preconditions) {
  EXPECT_THROW(run_harness(vs, map, options("noconfig", "true")), HarnessError);
  EXPECT_THROW(run_harness(vs, map, options("missing", "/nonexistent/tool {config}")), HarnessError);
  EXPECT_THROW(run_harness(vs, map, options("path", "no_such_tool_xyz {config}")), HarnessError);
  auto o = options("blocked", "true {config}");
  fs::create_directories(o.workdir.parent_path());
  std::ofstream(o.workdir) << "not a directory";
  EXPECT_THROW(run_harness(vs, map, o), HarnessError);
  fs::remove(o.workdir);
  auto bad = map;
  bad.entries.pop_back();
  EXPECT_THROW(run_harness(vs, bad, options("map", "true {config}")), varcore::Error);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>
#include <fstream>

#include "varcore/cli.hpp"

namespace fs = std::filesystem;
using varcore::cli::dispatch;

namespace {

const std::string kData = VARCORE_DATA_DIR;
const std::string kInitial = kData + "/time/time_initial.rtw";
const std::string kReviewed = kData + "/time/time.rtw";
const std::string kMap = kData + "/time/feature_map.csv";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "varcore");
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("varcore_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Cli, UsageExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"--version"}).code, 0);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"validate"}).code, 2);
  EXPECT_EQ(run({"validate", "/nonexistent.rtw"}).code, 2);
  EXPECT_EQ(run({"analyze", "--rtw", kInitial, "--model", kData + "/time/time.xml"}).code, 2);
  EXPECT_EQ(run({"validate", kReviewed, "--format", "yaml"}).code, 2);
}

TEST(Cli, ValidateExitCodes) {
  const auto bad = run({"validate", kInitial});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("TIME-7"), std::string::npos);
  EXPECT_EQ(run({"validate", kReviewed}).code, 0);
}

TEST(Cli, AnalyzeReportsTimeAnomaly) {
  const auto r = run({"analyze", "--rtw", kInitial, "--format", "json"});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["format"], "varcore.analysis/1");
  EXPECT_NE(r.out.find("virtual_met"), std::string::npos);
  EXPECT_EQ(run({"analyze", "--rtw", kReviewed}).code, 0);
  EXPECT_EQ(run({"analyze", "--model", kData + "/samples/transport.xml"}).code, 0);
}

TEST(Cli, JsonOutputIsDeterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"validate", kInitial, "--format", "json"},
           {"model", kReviewed, "--format", "json"},
           {"analyze", "--rtw", kInitial, "--format", "json"}}) {
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
    EXPECT_TRUE(nlohmann::json::accept(a.out));
  }
}

TEST(Cli, EnumerateGenconfigAndTest) {
  const auto dir = scratch("pipeline");
  const auto vdir = (dir / "variants").string();
  const auto r = run({"enumerate", "--rtw", kReviewed, "--out", vdir, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["count"], 128);

  const auto cdir = (dir / "configs").string();
  EXPECT_EQ(run({"genconfig", "--variants", vdir, "--map", kMap, "--out", cdir, "--style", "kv", "--id", "0005"}).code, 0);
  EXPECT_TRUE(fs::exists(fs::path(cdir) / "0005.cfg"));
  EXPECT_FALSE(fs::exists(fs::path(cdir) / "0001.cfg"));
  EXPECT_EQ(run({"genconfig", "--variants", vdir, "--map", kMap, "--out", cdir, "--id", "9999"}).code, 2);

  const auto t = run({"test", "--variants", vdir, "--map", kMap, "--workdir", (dir / "work").string(), "--jobs", "4",
                      "--cmd", "grep -q 'CFG_SIGNAL false' {config}", "--rtw", kReviewed});
  EXPECT_EQ(t.code, 1);
  EXPECT_NE(t.out.find("pass 80, fail 48"), std::string::npos) << t.out;
  EXPECT_NE(t.out.find("signal=true [TIME-15]"), std::string::npos);
  EXPECT_EQ(run({"test", "--variants", vdir, "--map", kMap, "--workdir", (dir / "work").string(), "--cmd",
                 "true {config}", "--sample", "random:3:1"})
                .code,
            0);
  fs::remove_all(dir);
}

TEST(Cli, VoidModelIsAFinding) {
  const auto dir = scratch("void");
  fs::create_directories(dir);
  const auto xml = (dir / "void.xml").string();
  std::ofstream(xml) << "<featureModel><struct><feature name=\"r\"/></struct><constraints><rule><not><var>r</var></not>"
                        "</rule></constraints></featureModel>";
  EXPECT_EQ(run({"enumerate", "--model", xml, "--out", (dir / "v").string()}).code, 1);
  EXPECT_EQ(run({"analyze", "--model", xml}).code, 1);
  fs::remove_all(dir);
}

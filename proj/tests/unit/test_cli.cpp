#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "yo_cli/cli.hpp"

using namespace yo::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "yo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "yo_cli_tests" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST(Cli, VerifyLemmasExitsCleanlyAndListsChecks) {
  const auto dir = fresh_dir("lemmas");
  const auto r = invoke({"verify-lemmas", "--seed", "7", "--dim", "20", "--out", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = load(dir / "result.json");
  ASSERT_GE(j["lemmas"].size(), 10u);
  for (const auto& l : j["lemmas"]) {
    EXPECT_TRUE(l.contains("max_residual"));
    EXPECT_TRUE(l.contains("tolerance"));
  }
  for (const auto& c : j["checks"]) EXPECT_TRUE(c.contains("tolerance"));
  EXPECT_TRUE(fs::exists(dir / "lemmas.csv"));
  EXPECT_TRUE(fs::exists(dir / "timing.json"));
}

TEST(Cli, MinimizeCriticalAgreesWithControlInvariant) {
  const auto dir = fresh_dir("min3");
  const auto r = invoke({"minimize", "--refine", "3", "--p", "critical", "--out", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json q = load(dir / "result.json")["quotient"];
  const double mu = q["mu_estimate"], mu_oc = q["mu_oc_estimate"];
  EXPECT_LE(std::abs(mu - mu_oc) / mu, 1e-6);
  EXPECT_DOUBLE_EQ(q["p"].get<double>(), 3.0);
}

TEST(Cli, MalformedMeshIsInputErrorWithByteOffset) {
  const auto dir = fresh_dir("badmesh");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << "{\"dim\":3,\"vertices\":[[0,0,0],";
  const auto r = invoke({"solve-obstacle", "--mesh", (dir / "bad.json").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("byte offset"), std::string::npos) << r.err;
}

TEST(Cli, InputErrors) {
  const auto dir = fresh_dir("errors");
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(invoke({"minimize", "--p", "3.5", "--out", dir.string()}).code, kExitInputError);
  EXPECT_EQ(invoke({"minimize", "--p", "abc", "--out", dir.string()}).code, kExitInputError);
  EXPECT_EQ(invoke({"minimize", "--tol", "0", "--out", dir.string()}).code, kExitInputError);
  EXPECT_EQ(invoke({"minimize", "--refine", "9", "--out", dir.string()}).code, kExitInputError);
  EXPECT_EQ(invoke({"minimize", "--mesh", (dir / "missing.json").string(), "--out", dir.string()}).code,
            kExitInputError);
  EXPECT_EQ(invoke({"bubble", "--pole", "0,0,0.5", "--out", dir.string()}).code, kExitInputError);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Cli, FailedCheckExitsTwoAndNamesTheCheck) {
  // at level 0 the curvature fit is far from 4, which the bubble check rejects
  const auto dir = fresh_dir("bubble0");
  const auto r = invoke({"bubble", "--refine", "0", "--pole", "0,0,1.2", "--out", dir.string()});
  ASSERT_EQ(r.code, kExitCheckFailed) << r.out << r.err;
  const json j = load(dir / "result.json");
  EXPECT_EQ(j["status"], "check_failed");
  bool named = false;
  for (const auto& c : j["checks"])
    if (!c["passed"].get<bool>()) named = !c["name"].get<std::string>().empty();
  EXPECT_TRUE(named);
}

TEST(Cli, IdenticalConfigGivesIdenticalBytes) {
  const auto dir = fresh_dir("repro");
  for (const std::string cmd : {"solve-obstacle", "minimize"}) {
    std::vector<std::string> args{cmd, "--refine", "2", "--seed", "13", "--init", "random", "--out", dir.string()};
    ASSERT_EQ(invoke(args).code, kExitOk);
    const std::string first = slurp(dir / "result.json");
    ASSERT_EQ(invoke(args).code, kExitOk);
    EXPECT_EQ(first, slurp(dir / "result.json")) << cmd;
    EXPECT_EQ(first.find("seconds"), std::string::npos);
  }
}

TEST(Cli, GenMeshWritesReadableMesh) {
  const auto dir = fresh_dir("gen");
  ASSERT_EQ(invoke({"gen-mesh", "--refine", "1", "--out", dir.string()}).code, kExitOk);
  const auto r = invoke({"minimize", "--mesh", (dir / "mesh.json").string(), "--out", (dir / "m").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(load(dir / "m" / "result.json")["mesh"]["level"].is_null());
}

TEST(Cli, SweepWritesPerLevelRunsAndReport) {
  const auto dir = fresh_dir("sweep");
  ASSERT_EQ(invoke({"sweep", "--levels", "1,2,0", "--out", dir.string()}).code, kExitOk);
  for (int l : {0, 1, 2}) EXPECT_TRUE(fs::exists(dir / ("level_" + std::to_string(l)) / "result.json"));
  const std::string csv = slurp(dir / "report.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  const json rows = load(dir / "report.json")["rows"];
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i]["level"], static_cast<int>(i));
  EXPECT_GT(rows[0]["relative_error"].get<double>(), rows[2]["relative_error"].get<double>());

  // report regenerates the same table from the subdirectories
  fs::remove(dir / "report.csv");
  ASSERT_EQ(invoke({"report", "--out", dir.string()}).code, kExitOk);
  EXPECT_EQ(slurp(dir / "report.csv"), csv);
}

TEST(Cli, ReportOnEmptyDirectoryIsHeaderOnly) {
  const auto dir = fresh_dir("empty_report");
  ASSERT_EQ(invoke({"report", "--out", dir.string()}).code, kExitOk);
  const std::string csv = slurp(dir / "report.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
}

TEST(Cli, OutDirDefaultsToEnvironment) {
  const auto dir = fresh_dir("env");
  setenv("YO_OUT_DIR", dir.string().c_str(), 1);
  EXPECT_EQ(default_out_dir(), dir);
  ASSERT_EQ(invoke({"gen-mesh", "--refine", "0"}).code, kExitOk);
  unsetenv("YO_OUT_DIR");
  EXPECT_TRUE(fs::exists(dir / "mesh.json"));
  EXPECT_EQ(default_out_dir(), fs::path("yo_out"));
}

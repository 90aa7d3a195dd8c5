// Drives the gmkp executable end to end. GMKP_CLI is the binary path.
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "gmkp/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(GMKP_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Drops the time_ms column (second to last) from bench rows.
std::vector<std::string> without_time(const std::string& csv) {
  std::vector<std::string> out;
  for (const std::string& line : lines(csv)) {
    std::vector<std::string> cols;
    std::istringstream in(line);
    for (std::string c; std::getline(in, c, ',');) cols.push_back(c);
    if (!line.empty() && line.back() == ',') cols.emplace_back();
    if (cols.size() >= 2) cols.erase(cols.end() - 2);
    std::string joined;
    for (const auto& c : cols) joined += c + ",";
    out.push_back(joined);
  }
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gmkp_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string fixture(const std::string& name, const gmkp::Instance& inst) const {
    gmkp::write_text(dir_ / name, gmkp::instance_to_json(inst));
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenerateIsByteIdentical) {
  ASSERT_EQ(run("generate --count 3 --seed 5 --capacity 30 --reward-scheme R2 --out-dir " + path("a")).code, 0);
  ASSERT_EQ(run("generate --count 3 --seed 5 --capacity 30 --reward-scheme R2 --out-dir " + path("b")).code, 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir_ / "a")) {
    ++files;
    const auto other = dir_ / "b" / entry.path().filename();
    ASSERT_TRUE(fs::exists(other));
    EXPECT_EQ(gmkp::read_text(entry.path()), gmkp::read_text(other));
  }
  EXPECT_EQ(files, 4U);
  const json manifest = json::parse(gmkp::read_text(dir_ / "a" / "manifest_5.json"));
  EXPECT_EQ(manifest["reward_scheme"], "R2");
  EXPECT_EQ(gmkp::instance_from_json(gmkp::read_text(dir_ / "a" / "inst_5_0.json")).capacities.front(), 30);
}

TEST_F(Cli, SolveWritesResult) {
  const auto inst = fixture("t.json", gmkp::Instance::from_groups({9, 9, 9}, {{8, {8}}, {8, {8}}, {8, {8}}, {3, {3}}}));
  const CliRun r = run("solve --instance " + inst + " --algo 3mkp --swap-opt");
  ASSERT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["metrics"]["reward"], 27);
  EXPECT_EQ(doc["metrics"]["max_exceeded"], 2);
  EXPECT_TRUE(doc["timings_ms"].contains("swap_opt"));

  const json best = json::parse(run("solve --instance " + inst + " --algo best").out);
  EXPECT_EQ(best["algorithm"].get<std::string>().rfind("best:", 0), 0U);
}

TEST_F(Cli, ExitCodes) {
  const auto inst = fixture("t.json", gmkp::Instance::from_groups({10, 10}, {{12, {6, 6}}, {9, {9}}}));
  EXPECT_EQ(run("solve --instance " + path("missing.json")).code, 2);
  EXPECT_EQ(run("solve --instance " + inst + " --algo nope").code, 2);
  EXPECT_EQ(run("solve --bogus-flag").code, 2);
  gmkp::write_text(dir_ / "bad.json", "{\"schema\": \"gmkp/1\"");
  EXPECT_EQ(run("solve --instance " + path("bad.json")).code, 2);
  EXPECT_EQ(run("solve --instance " + inst + " --algo 3mkp --node-budget 1").code, 3);
  EXPECT_EQ(run("exact --instance " + inst + " --node-budget 1").code, 3);
  const CliRun ok = run("exact --instance " + inst);
  ASSERT_EQ(ok.code, 0);
  EXPECT_EQ(json::parse(ok.out)["optimum"], 12);
}

TEST_F(Cli, SweepElevenRows) {
  const auto inst = fixture("t.json", gmkp::Instance::from_groups({10, 10, 10}, {{12, {6, 6}}, {9, {9}}, {4, {2, 3}}, {5, {5}}}));
  const CliRun r = run("sweep --instance " + inst + " --algo 2mkp");
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 12U);
  EXPECT_EQ(rows[0], "schema,factor,total_capacity,reward,max_exceeded,dominated,error");
  EXPECT_EQ(run("sweep --instance " + inst + " --factors 0,1").code, 2);
}

TEST_F(Cli, FeasibleIsCapacityFeasible) {
  const auto inst = fixture("t.json", gmkp::Instance::from_groups({7, 7, 7}, {{21, {3, 3, 3, 3, 3, 3, 3}}}));
  const CliRun r = run("feasible --instance " + inst + " --algo 2mkp");
  ASSERT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["metrics"]["reward"], 0);
  EXPECT_EQ(doc["metrics"]["max_exceeded"], -7);
}

TEST_F(Cli, BenchSerialMatchesConcurrent) {
  ASSERT_EQ(run("generate --count 8 --seed 3 --capacity 20 --out-dir " + path("gen")).code, 0);
  const std::string common = "bench --dir " + path("gen") + " --algos lp,kp,2mkp,3mkp --swap-opt --summary " + path("s.csv");
  const CliRun serial = run(common + " --workers 1");
  const CliRun parallel = run(common + " --workers 4");
  ASSERT_EQ(serial.code, 0);
  ASSERT_EQ(parallel.code, 0);
  EXPECT_EQ(lines(serial.out).size(), 1U + 8U * 4U);
  EXPECT_EQ(without_time(serial.out), without_time(parallel.out));
  const auto summary = lines(gmkp::read_text(path("s.csv")));
  ASSERT_EQ(summary.size(), 1U + 4U * 2U);
  EXPECT_EQ(summary[0], "schema,algo,metric,count,failures,p50,p75,p90,p95,p99");
  EXPECT_EQ(summary[1].rfind("gmkp-bench-summary/1,lp,time_ms,8,0,", 0), 0U);
}

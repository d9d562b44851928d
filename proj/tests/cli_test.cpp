// Copyright 2026 The vcsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "vcsched/vcsched.hpp"

namespace vcsched {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int status;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(VCSCHED_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int raw = pclose(p);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vcsched-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) +
            "-" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path sub(const std::string& name) {
    fs::create_directories(dir_ / name);
    return dir_ / name;
  }

  fs::path dir_;
};

TEST_F(CliTest, GenerateSmallSet) {
  auto r = run("generate --set small --per-spec 1 --seed 1 --out " + dir_.string());
  ASSERT_EQ(r.status, 0) << r.out;
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir_)) files += e.path().filename() != "manifest.json";
  EXPECT_EQ(files, 144u);
  auto manifest = read_json_file((dir_ / "manifest.json").string());
  EXPECT_EQ(manifest["instances"].size(), 144u);
  EXPECT_EQ(manifest["rng"], "mt19937_64");
  EXPECT_TRUE(fs::exists(dir_ / "small-000-000.json"));
  EXPECT_TRUE(fs::exists(dir_ / "small-143-000.json"));
}

TEST_F(CliTest, GenerateIsReproducible) {
  auto a = sub("a"), b = sub("b");
  ASSERT_EQ(run("generate --set large --per-spec 1 --seed 5 --out " + a.string()).status, 0);
  ASSERT_EQ(run("generate --set large --per-spec 1 --seed 5 --out " + b.string()).status, 0);
  EXPECT_EQ(slurp(a / "manifest.json"), slurp(b / "manifest.json"));
  EXPECT_EQ(slurp(a / "large-107-000.json"), slurp(b / "large-107-000.json"));
}

TEST_F(CliTest, GenerateTwoHostExample) {
  ASSERT_EQ(run("generate --hosts 2 --jobs 3 --cpu 0.6 --mem 0 --out " + dir_.string()).status, 0);
  auto inst = instance_from_json(read_json_file((dir_ / "custom-000-000.json").string()));
  EXPECT_EQ(inst, (ProblemInstance{2, {{0.6, 0.0, 1}, {0.6, 0.0, 1}, {0.6, 0.0, 1}}}));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_NE(run("generate --set small --out " + (dir_ / "missing").string()).status, 0);
  EXPECT_NE(run("generate --set small").status, 0);
  EXPECT_NE(run("generate --set medium --out " + dir_.string()).status, 0);
  EXPECT_NE(run("generate --set small --hosts 3 --out " + dir_.string()).status, 0);
  EXPECT_NE(run("generate --hosts 2 --jobs 3 --mem 0.1 --slack 0.5 --out " + dir_.string()).status, 0);
  EXPECT_NE(run("").status, 0);
  EXPECT_NE(run("report --results " + (dir_ / "none.csv").string() + " --out " + dir_.string()).status, 0);
}

TEST_F(CliTest, SolveTwoHostExample) {
  ASSERT_EQ(run("generate --hosts 2 --jobs 3 --cpu 0.6 --mem 0 --out " + dir_.string()).status, 0);
  const std::string file = (dir_ / "custom-000-000.json").string();
  auto r = run("solve --instance " + file + " --alg mcb8 --out " + dir_.string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("min_yield: 0.8333"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("allocation: ["), std::string::npos);
  auto sol = read_json_file((dir_ / "solution.json").string());
  EXPECT_NEAR(sol["min_yield"].get<double>(), 5.0 / 6.0, 1e-4);

  auto relaxed = run("solve --instance " + file + " --alg relaxed-bound");
  EXPECT_EQ(relaxed.status, 0);
  EXPECT_NE(relaxed.out.find("relaxed_bound: 1"), std::string::npos) << relaxed.out;

  EXPECT_NE(run("solve --instance " + file + " --alg mcb9").status, 0);
}

TEST_F(CliTest, SolveFailureExitsTwo) {
  write_text_file((dir_ / "tight.json").string(),
                  R"({"hosts": 1, "jobs": [{"cpu": 0.1, "mem": 0.6}, {"cpu": 0.1, "mem": 0.6}]})");
  auto r = run("solve --instance " + (dir_ / "tight.json").string() + " --alg gb");
  EXPECT_EQ(r.status, 2) << r.out;
  EXPECT_NE(r.out.find("success: false"), std::string::npos);
}

TEST_F(CliTest, SolveExactTooLarge) {
  ASSERT_EQ(run("generate --hosts 64 --jobs 100 --out " + dir_.string()).status, 0);
  auto r = run("solve --instance " + (dir_ / "custom-000-000.json").string() + " --alg exact");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("too large"), std::string::npos) << r.out;
}

TEST_F(CliTest, SolveAdaptationZeroBudgetKeepsPlacement) {
  write_text_file((dir_ / "inst.json").string(),
                  R"({"hosts": 2, "jobs": [{"cpu": 0.9, "mem": 0.1}, {"cpu": 0.9, "mem": 0.1}, {"cpu": 0.2, "mem": 0.1}]})");
  write_text_file((dir_ / "prev.json").string(),
                  R"([{"job": 0, "task": 0, "host": 0}, {"job": 1, "task": 0, "host": 0}, {"job": 2, "task": 0, "host": 1}])");
  const std::string base = "solve --instance " + (dir_ / "inst.json").string() + " --alg exact --previous " +
                           (dir_ / "prev.json").string();
  auto r = run(base + " --budget 0 --phase2 off");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find(R"("host":0,"job":0)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find(R"("host":0,"job":1)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find(R"("host":1,"job":2)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("migration_cost: 0"), std::string::npos);

  auto moved = run(base + " --budget 1 --budget-unit count");
  ASSERT_EQ(moved.status, 0);
  EXPECT_NE(moved.out.find("min_yield: 0.90909"), std::string::npos) << moved.out;
  auto bytes = run(base + " --budget 0.8e9 --budget-unit bytes --host-mem-bytes 8e9");
  ASSERT_EQ(bytes.status, 0);
  EXPECT_NE(bytes.out.find("migration_cost: 0.1"), std::string::npos) << bytes.out;
  EXPECT_NE(run(base + " --budget 1 --budget-unit bytes").status, 0);
  EXPECT_NE(run("solve --instance " + (dir_ / "inst.json").string() + " --alg mcb8 --budget 0").status, 0);
}

TEST_F(CliTest, BenchThenReport) {
  auto inst = sub("inst"), res = sub("res"), again = sub("again");
  ASSERT_EQ(run("generate --set small --per-spec 1 --seed 2 --out " + inst.string()).status, 0);
  // Keep ten instances.
  auto manifest = read_json_file((inst / "manifest.json").string());
  json keep = json::array();
  for (std::size_t i = 0; i < 144; i += 15) keep.push_back(manifest["instances"][i]);
  manifest["instances"] = keep;
  write_text_file((inst / "manifest.json").string(), manifest.dump());

  const std::string bench = "bench --manifest " + (inst / "manifest.json").string() +
                            " --alg mcb1,mcb2,mcb3,mcb4,mcb5,mcb6,mcb7,mcb8 --reps 1 --out ";
  auto b = run(bench + res.string());
  ASSERT_EQ(b.status, 0) << b.out;
  ASSERT_EQ(run(bench + again.string() + " --jobs 1").status, 0);
  const auto records = parse_csv(slurp(res / "results.csv"));
  EXPECT_EQ(records.size(), 80u);
  auto strip = [](std::vector<ResultRecord> v) {
    for (auto& r : v) r.runtime_s = 0;
    return v;
  };
  EXPECT_EQ(strip(records), strip(parse_csv(slurp(again / "results.csv"))));
  EXPECT_EQ(slurp(res / "metadata.json"), slurp(again / "metadata.json"));
  EXPECT_TRUE(fs::exists(res / "timing.csv"));

  auto r = run("report --results " + (res / "results.csv").string() + " --out " + res.string());
  ASSERT_EQ(r.status, 0) << r.out;
  std::istringstream table(slurp(res / "degradation.csv"));
  std::string line;
  std::size_t rows = 0;
  std::getline(table, line);
  while (std::getline(table, line)) rows += !line.empty();
  EXPECT_EQ(rows, 8u);
  for (const char* f : {"min-yield-vs-slack.csv", "avg-yield-vs-slack.csv", "failure-rate-vs-slack.csv",
                        "runtime-vs-tasks.csv", "summary-by-slack.csv"}) {
    EXPECT_TRUE(fs::exists(res / f)) << f;
  }
}

TEST_F(CliTest, FigureHasNineSlackRowsPerAlgorithm) {
  auto inst = sub("inst"), res = sub("res");
  ASSERT_EQ(run("generate --set small --per-spec 1 --seed 3 --out " + inst.string()).status, 0);
  ASSERT_EQ(run("bench --manifest " + (inst / "manifest.json").string() +
                " --alg mcb8,sg --reps 1 --out " + res.string()).status, 0);
  auto r = run("report --results " + (res / "results.csv").string() + " --figure min-yield-vs-slack --out " +
               res.string());
  ASSERT_EQ(r.status, 0) << r.out;
  std::istringstream csv(slurp(res / "min-yield-vs-slack.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "slack,algorithm,value");
  std::map<std::string, int> per_alg;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    const auto c = detail::split_csv_line(line);
    per_alg[c[1]]++;
  }
  EXPECT_EQ(per_alg["mcb8"], 9);
  EXPECT_EQ(per_alg["sg"], 9);
  EXPECT_EQ(per_alg["relaxed"], 9);
  EXPECT_NE(run("report --results " + (res / "results.csv").string() + " --figure nope --out " +
                res.string()).status, 0);
}

}  // namespace
}  // namespace vcsched

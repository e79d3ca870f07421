// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("risrcs_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  RunResult run(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = std::string(RISRCS_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  std::string scene() const { return std::string(RISRCS_DATA_DIR) + "/measurement_scene.json"; }
  fs::path dir_;
};

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

TEST_F(CliTest, BoundaryBothConventions) {
  auto r = run("boundary --scene " + scene());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "6.25 m\n");
  r = run("boundary --scene " + scene() + " --convention as-printed");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "120.93 m\n");
}

TEST_F(CliTest, FitPhaseOnSyntheticData) {
  const auto r = run("fit --data " + std::string(RISRCS_DATA_DIR) + "/element_samples.csv --target phase");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("a=90.000°, b=180.000°"), std::string::npos) << r.out;
}

TEST_F(CliTest, FitRcsOnSyntheticData) {
  const auto r = run("fit --data " + std::string(RISRCS_DATA_DIR) + "/element_samples.csv --target rcs --scene " + scene());
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("c=1.42000e-05 m^2"), std::string::npos) << r.out;
}

TEST_F(CliTest, SweepTwoSteps) {
  const auto r = run("sweep --scene " + scene() + " --param d1 --from 1 --to 5 --steps 2");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 3);
  EXPECT_EQ(r.out.rfind("param,value,proposed_db,specular_db\nd1,1,", 0), 0u) << r.out;
}

TEST_F(CliTest, SweepModelsSubset) {
  const auto r = run("sweep --scene " + scene() + " --param theta2 --from 0 --to 60 --steps 3 --models specular");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.rfind("param,value,specular_db\ntheta2,0,", 0), 0u) << r.out;
}

TEST_F(CliTest, PlotDoesNotChangeCsv) {
  const std::string base = "sweep --scene " + scene() + " --param d1 --from 1 --to 5 --steps 5 --out ";
  ASSERT_EQ(run(base + (dir_ / "a.csv").string()).status, 0);
  ASSERT_EQ(run(base + (dir_ / "b.csv").string() + " --plot " + (dir_ / "b.svg").string()).status, 0);
  EXPECT_EQ(slurp(dir_ / "a.csv"), slurp(dir_ / "b.csv"));
  EXPECT_NE(slurp(dir_ / "b.svg").find("</svg>"), std::string::npos);
}

TEST_F(CliTest, ConfigureWritesGrid) {
  const auto r = run("configure --scene " + scene() + " --out " + (dir_ / "states.csv").string());
  EXPECT_EQ(r.status, 0) << r.err;
  const std::string grid = slurp(dir_ / "states.csv");
  EXPECT_EQ(count_lines(grid), 20);
  const std::string first = grid.substr(0, grid.find('\n'));
  EXPECT_EQ(first.size(), 55u * 2 - 1);
  EXPECT_FALSE(fs::exists(dir_ / "states.csv.tmp"));
}

TEST_F(CliTest, EvalSummary) {
  const auto r = run("eval --scene " + scene() + " --config all-zero");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("configuration: all-zero"), std::string::npos);
  EXPECT_NE(r.out.find("specular: Pr = 1.780023e-03 W"), std::string::npos) << r.out;
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  auto r = run("sweep --scene " + scene() + " --param d3 --from 1 --to 5 --steps 2");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(count_lines(r.err), 1);
  r = run("");
  EXPECT_EQ(r.status, 2);
  r = run("boundary");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(count_lines(r.err), 1);
}

TEST_F(CliTest, ComputationErrorsExitOne) {
  std::ofstream(dir_ / "bad.json") << R"({"frequency_hz": 5.8e9})";
  const fs::path out = dir_ / "never.csv";
  const auto r = run("sweep --scene " + (dir_ / "bad.json").string() +
                     " --param d1 --from 1 --to 5 --steps 3 --out " + out.string());
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(count_lines(r.err), 1);
  EXPECT_NE(r.err.find("layout"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(out));

  const auto r2 = run("sweep --scene " + scene() + " --param d1 --from 5 --to 1 --steps 3 --out " + out.string());
  EXPECT_EQ(r2.status, 1);
  EXPECT_EQ(count_lines(r2.err), 1);
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliTest, ByteIdenticalReruns) {
  const std::string args = "sweep --scene " + scene() + " --param theta2 --from 0 --to 60 --steps 7";
  EXPECT_EQ(run(args).out, run(args).out);
}

}  // namespace

// Copyright 2026 The wgqed Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wgqed/experiment.hpp"

namespace wgqed {
namespace {

namespace fs = std::filesystem;

class ExperimentTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("wgqed_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  SimConfig config(std::string_view text, const std::string& sub) const {
    SimConfig c = parse_config(text);
    c.output_dir = (root_ / sub).string();
    return c;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  static std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
  }

  static std::vector<std::string> fields(const std::string& row) {
    std::vector<std::string> out;
    std::istringstream in(row);
    for (std::string f; std::getline(in, f, ',');) out.push_back(f);
    return out;
  }

  fs::path root_;
};

TEST_F(ExperimentTest, JumpOutputSchema) {
  const SimConfig c = config("n_traj = 3\nsave_trajectories = 2\nt_max = 1", "jump");
  ASSERT_EQ(run_experiment(c), 0);
  const fs::path dir = c.output_dir;
  EXPECT_TRUE(fs::exists(dir / "trajectory_0.csv"));
  EXPECT_TRUE(fs::exists(dir / "trajectory_1.csv"));
  EXPECT_FALSE(fs::exists(dir / "trajectory_2.csv"));
  const auto traj = lines(slurp(dir / "trajectory_0.csv"));
  EXPECT_EQ(traj.front(), "t,concurrence,p00,p11,p22,p33,re_rho03,im_rho03,re_rho12,im_rho12,click_l,click_r");
  EXPECT_EQ(traj.size(), 202u);
  EXPECT_EQ(traj[1], "0,0,1,0,0,0,0,0,0,0,0,0");
  EXPECT_EQ(lines(slurp(dir / "ensemble.csv")).front(), "t,mean_concurrence,stderr");
  EXPECT_EQ(slurp(dir / "terminal.csv"), "label,count\nunclassified,3\n");
  const std::string manifest = slurp(dir / "manifest.txt");
  EXPECT_NE(manifest.find("tool_version = 0.1.0"), std::string::npos);
  EXPECT_NE(manifest.find("# trajectory_seed[2] = "), std::string::npos);
}

TEST_F(ExperimentTest, HomodyneOutputSchemaAndClassification) {
  const SimConfig c = config("mode = homodyne\nn_traj = 4\nsave_trajectories = 1\nt_max = 10", "hom");
  ASSERT_EQ(run_experiment(c), 0);
  const auto traj = lines(slurp(fs::path(c.output_dir) / "trajectory_0.csv"));
  EXPECT_EQ(traj.front(), "t,concurrence,p00,p11,p22,p33,re_rho03,im_rho03,re_rho12,im_rho12,I_l,I_r");
  // Left port unmonitored: its current column stays zero.
  for (std::size_t k = 1; k < traj.size(); ++k) EXPECT_EQ(fields(traj[k]).at(10), "0");
  const auto term = lines(slurp(fs::path(c.output_dir) / "terminal.csv"));
  ASSERT_EQ(term.size(), 7u);
  EXPECT_EQ(term[1].rfind("psi_minus_like,", 0), 0u);
  std::size_t total = 0;
  for (std::size_t k = 1; k < term.size(); ++k) total += std::stoul(term[k].substr(term[k].find(',') + 1));
  EXPECT_EQ(total, 4u);
}

TEST_F(ExperimentTest, RerunFromManifestIsByteIdentical) {
  const SimConfig c = config("mode = homodyne\nn_traj = 5\nsave_trajectories = 5\nt_max = 1\nmaster_seed = 7", "a");
  ASSERT_EQ(run_experiment(c), 0);
  SimConfig again = parse_config(slurp(fs::path(c.output_dir) / "manifest.txt"));
  EXPECT_EQ(again, c);
  again.output_dir = (root_ / "b").string();
  ASSERT_EQ(run_experiment(again, RunOptions{3}), 0);
  for (const char* f : {"trajectory_0.csv", "trajectory_4.csv", "ensemble.csv", "terminal.csv"})
    EXPECT_EQ(slurp(root_ / "a" / f), slurp(root_ / "b" / f)) << f;
}

TEST_F(ExperimentTest, ClickColumnsGiveMonotoneCumulativeCounts) {
  const SimConfig c = config(*preset_text("fig2a"), "fig2a");
  ASSERT_EQ(run_experiment(c), 0);
  int total = 0;
  for (std::size_t i = 0; i < c.n_traj; ++i) {
    const auto traj = lines(slurp(fs::path(c.output_dir) / ("trajectory_" + std::to_string(i) + ".csv")));
    std::array<int, 2> cumulative{};
    for (std::size_t k = 1; k < traj.size(); ++k) {
      const auto f = fields(traj[k]);
      ASSERT_EQ(f.size(), 12u);
      for (std::size_t ch = 0; ch < 2; ++ch) {
        const std::string& flag = f[10 + ch];
        ASSERT_TRUE(flag == "0" || flag == "1") << traj[k];
        const int before = cumulative[ch];
        cumulative[ch] += flag == "1";
        EXPECT_GE(cumulative[ch], before);
      }
      if (cumulative[0] + cumulative[1] > 0) {
        EXPECT_GE(std::stod(f[1]), 1.0 - 1e-6) << traj[k];
      }
    }
    total += cumulative[0] + cumulative[1];
  }
  EXPECT_GT(total, 0);
}

TEST_F(ExperimentTest, LindbladRunWritesSteadyStateClassification) {
  const SimConfig c = config("mode = lindblad", "lind");
  ASSERT_EQ(run_experiment(c), 0);
  const auto terminal = slurp(fs::path(c.output_dir) / "terminal.csv");
  EXPECT_NE(terminal.find("separable,1"), std::string::npos);
  const auto traj = lines(slurp(fs::path(c.output_dir) / "trajectory_0.csv"));
  EXPECT_EQ(traj.front(), "t,concurrence,p00,p11,p22,p33,re_rho03,im_rho03,re_rho12,im_rho12");
  EXPECT_EQ(traj.size(), 3002u);
}

TEST_F(ExperimentTest, OracleCheckWritesTable) {
  const SimConfig c = config("mode = oracle_check\nn_traj = 20\nt_max = 0.5", "oracle");
  std::ostringstream log;
  ASSERT_EQ(run_experiment(c, {}, &log), 0);
  const auto rows = lines(slurp(fs::path(c.output_dir) / "oracle_check.csv"));
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "check,max_abs_error");
  EXPECT_EQ(rows[1].rfind("no_click_state,", 0), 0u);
  EXPECT_LT(std::stod(rows[1].substr(rows[1].find(',') + 1)), 1e-10);
  EXPECT_EQ(rows[5].rfind("steady_state_residual,", 0), 0u);
  EXPECT_LT(std::stod(rows[5].substr(rows[5].find(',') + 1)), 1e-12);
}

TEST_F(ExperimentTest, InvalidConfigExitsNonzero) {
  SimConfig c = config("", "bad");
  c.eta_l = 2.0;
  std::ostringstream log;
  EXPECT_NE(run_experiment(c, {}, &log), 0);
  EXPECT_NE(log.str().find("eta_l"), std::string::npos);
}

TEST(FormatNumber, TwelveSignificantDigitsLocaleFree) {
  EXPECT_EQ(format_number(0.1 + 0.2), "0.3");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(-2.5e-7), "-2.5e-07");
  EXPECT_EQ(format_number(0.0), "0");
}

}  // namespace
}  // namespace wgqed

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "inerton/cli.hpp"

namespace inerton {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("inerton_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path config(const std::string& name, const std::string& text) {
    const auto p = root_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "inerton_lab");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    out_.str("");
    err_.str("");
    return cli::main(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  fs::path root_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, ScalesJson) {
  const auto cfg = config("s.cfg", "M0 = 1\nv0 = 0.5\n");
  ASSERT_EQ(invoke({"scales", "--config", cfg.string(), "--out", (root_ / "o").string()}), 0)
      << err_.str();
  const auto j = json::parse(slurp(root_ / "o" / "scales.json"));
  for (const char* key : {"lambda", "Lambda", "lambda_com", "T", "nu"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_NEAR(j["lambda"].get<double>(), 1.0 / (0.5 / std::sqrt(0.75)), 1e-12);
  const auto resolved = slurp(root_ / "o" / "resolved_config.txt");
  EXPECT_NE(resolved.find("command = scales"), std::string::npos);
  EXPECT_NE(resolved.find("M0 = 1"), std::string::npos);
  EXPECT_NE(resolved.find("v0 = 0.5"), std::string::npos);
}

TEST_F(CliTest, ScalesCsv) {
  const auto cfg = config("s.cfg", "v0 = 0.25\n");
  ASSERT_EQ(invoke({"scales", "--config", cfg.string(), "--out", root_.string(), "--format", "csv"}),
            0);
  const auto csv = slurp(root_ / "scales.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "lambda,Lambda,lambda_com,T,nu");
  EXPECT_FALSE(fs::exists(root_ / "scales.json"));
}

TEST_F(CliTest, SimulateWritesTrajectoryAndCycles) {
  const auto cfg = config("d.cfg", "M0 = 1\nv0 = 0.5\nmode = impulsive\nK = 8\n");
  ASSERT_EQ(invoke({"simulate", "--config", cfg.string(), "--out", root_.string()}), 0)
      << err_.str();
  const auto traj = slurp(root_ / "trajectory.csv");
  EXPECT_EQ(traj.substr(0, traj.find('\n')), "t,X,v,a,b,E_particle,E_cloud");
  const auto c = json::parse(slurp(root_ / "cycles.json"));
  EXPECT_NEAR(c["cycle_time"].get<double>(), 8.0, 1e-9);
  EXPECT_NEAR(c["distance_per_cycle"].get<double>(), 2.0, 0.02);
}

TEST_F(CliTest, DiracAndPhonon) {
  const auto d = config("dirac.cfg", "p = 0.6, 0, 0.8\nM0 = 1\n");
  ASSERT_EQ(invoke({"dirac", "--config", d.string(), "--out", root_.string()}), 0) << err_.str();
  const auto j = json::parse(slurp(root_ / "dirac.json"));
  ASSERT_EQ(j["eigenvalues"].size(), 4u);
  EXPECT_NEAR(j["eigenvalues"][3].get<double>(), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(j["eigenvalues"][0].get<double>(), -std::sqrt(2.0), 1e-12);

  const auto ph = config("ph.cfg", "dim = 1\na = 1\nm_atom = 1\nC = 1\nn_k = 5\n");
  ASSERT_EQ(invoke({"phonon", "--config", ph.string(), "--out", root_.string()}), 0) << err_.str();
  const auto csv = slurp(root_ / "dispersion.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k1,k2,k3,omega_1");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST_F(CliTest, ClusterSummary) {
  const auto cfg = config("c.cfg", "epsilon = 1\ng = 1\ngamma = 3.5\nN_max = 4\nrestarts = 4\n");
  ASSERT_EQ(invoke({"cluster", "--config", cfg.string(), "--out", root_.string()}), 0)
      << err_.str();
  const auto j = json::parse(slurp(root_ / "cluster_summary.json"));
  EXPECT_EQ(j["N_numeric"].get<int>(), 1);
  EXPECT_EQ(j["N_formula_rounded"].get<int>(), 1);
  EXPECT_EQ(j["mode"].get<std::string>(), "centroid");
  const auto csv = slurp(root_ / "cluster_sweep.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST_F(CliTest, ErrorsMapToExitCodes) {
  const auto good = config("good.cfg", "v0 = 0.5\n");
  EXPECT_EQ(invoke({"bogus", "--config", good.string(), "--out", root_.string()}), 2);
  EXPECT_NE(err_.str().find("usage"), std::string::npos);

  const auto typo = config("typo.cfg", "vo = 0.5\n");
  EXPECT_EQ(invoke({"scales", "--config", typo.string(), "--out", root_.string()}), 2);
  EXPECT_NE(err_.str().find("vo"), std::string::npos);

  EXPECT_EQ(invoke({"scales", "--config", (root_ / "missing.cfg").string()}), 2);

  const auto fast = config("fast.cfg", "v0 = 1.2\n");
  EXPECT_EQ(invoke({"scales", "--config", fast.string(), "--out", root_.string()}), 3);
  const auto rec = json::parse(err_.str().substr(0, err_.str().find('\n')));
  EXPECT_TRUE(rec.contains("module"));
  EXPECT_TRUE(rec.contains("operation"));
  EXPECT_TRUE(rec.contains("message"));

  std::ofstream(root_ / "blocker") << "x";
  EXPECT_EQ(invoke({"scales", "--config", good.string(), "--out", (root_ / "blocker" / "sub").string()}),
            4);

  const auto empty = config("empty.cfg",
                            "sweep_command = scales\nsweep_param = v0\nsweep_min = 0.1\n"
                            "sweep_max = 0.5\nsweep_steps = 0\n");
  EXPECT_EQ(invoke({"sweep", "--config", empty.string(), "--out", root_.string()}), 2);
}

TEST_F(CliTest, SweepRowsInGridOrderWithPerRowErrors) {
  const auto cfg = config("sw.cfg",
                          "sweep_command = scales\nsweep_param = v0\n"
                          "sweep_values = 0.2, 0.4, 1.5, 0.6\nM0 = 1\n");
  EXPECT_EQ(invoke({"sweep", "--config", cfg.string(), "--out", root_.string(), "--jobs", "3"}), 3);
  std::istringstream csv(slurp(root_ / "sweep.csv"));
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(csv, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].substr(0, 3), "v0,");
  EXPECT_EQ(rows[1].substr(0, 4), "0.2,");
  EXPECT_EQ(rows[3].substr(0, 4), "1.5,");
  EXPECT_NE(rows[3].find("error"), std::string::npos);
  EXPECT_EQ(rows[4].substr(0, 4), "0.6,");
  EXPECT_EQ(rows[4].substr(rows[4].rfind(',') + 1), "ok");
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical) {
  const auto cfg = config("c.cfg", "epsilon = 1\ng = 1\ngamma = 0.4\nN_max = 6\nrestarts = 4\n");
  for (const char* dir : {"a", "b"}) {
    ASSERT_EQ(invoke({"cluster", "--config", cfg.string(), "--out", (root_ / dir).string(),
                      "--seed", "17"}),
              0);
  }
  for (const char* file : {"cluster_sweep.csv", "cluster_summary.json", "resolved_config.txt"}) {
    EXPECT_EQ(slurp(root_ / "a" / file), slurp(root_ / "b" / file)) << file;
  }
}

}  // namespace
}  // namespace inerton

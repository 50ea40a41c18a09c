#include "quadnlpid/config.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace quadnlpid {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CmdResult {
  int exit_code = -1;
  std::string output;  ///< combined stdout + stderr
};

std::string slurp(const fs::path& path) {
  std::ifstream f(path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

CmdResult run_cli(const std::string& args, const fs::path& scratch) {
  const fs::path capture = scratch / "cmd_output.txt";
  const std::string cmd =
      std::string(QUADNLPID_CLI) + " " + args + " > " + capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CmdResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = slurp(capture);
  return r;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("quadnlpid_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

constexpr const char* kCsvHeader =
    "t,x,y,z,phi,theta,psi,u,v,w,p,q,r,"
    "x_de,y_de,z_de,psi_de,Ux,Uy,Uz,Uphi,Utheta,Upsi,phi_de,theta_de";

TEST(Cli, ListsPresets) {
  const fs::path dir = scratch_dir("presets");
  const CmdResult r = run_cli("presets", dir);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("paper-nlpid"), std::string::npos);
  EXPECT_NE(r.output.find("paper-lpid"), std::string::npos);
  EXPECT_NE(r.output.find("case2-helix"), std::string::npos);
}

TEST(Cli, RejectsMissingSubcommand) {
  const fs::path dir = scratch_dir("nosub");
  EXPECT_NE(run_cli("", dir).exit_code, 0);
  EXPECT_NE(run_cli("frobnicate", dir).exit_code, 0);
}

TEST(Cli, RunWritesArtifacts) {
  const fs::path dir = scratch_dir("run");
  const CmdResult r = run_cli(
      "run --preset-controller paper-nlpid --t-final 1 --seed 9 --out " + dir.string(), dir);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("[opi]"), std::string::npos);

  ASSERT_TRUE(fs::exists(dir / "timeseries.csv"));
  ASSERT_TRUE(fs::exists(dir / "metrics.txt"));
  ASSERT_TRUE(fs::exists(dir / "manifest.json"));

  std::ifstream csv(dir / "timeseries.csv");
  std::string header;
  ASSERT_TRUE(std::getline(csv, header));
  EXPECT_EQ(header, kCsvHeader);

  const json manifest = json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest["tool"], "quadnlpid");
  EXPECT_EQ(manifest["seed"], 9);
  EXPECT_EQ(manifest["config_hash"],
            fnv1a_hex(manifest["config"].dump()));  // hash keys the exact config
  EXPECT_EQ(manifest["config"]["controller_label"], "paper-nlpid");
  EXPECT_EQ(manifest["config"]["sim"]["t_final"], 1.0);
  ASSERT_EQ(manifest["outputs"].size(), 3u);
}

TEST(Cli, RunCsvFormatPrintsTimeseries) {
  const fs::path dir = scratch_dir("runcsv");
  const CmdResult r = run_cli("run --preset-controller paper-lpid --t-final 0.1 --format csv"
                              " --out " + dir.string(), dir);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(r.output.rfind(kCsvHeader, 0), 0u);  // stdout starts with the header
}

TEST(Cli, MalformedConfigFailsCleanly) {
  const fs::path dir = scratch_dir("badcfg");
  {
    std::ofstream f(dir / "bad.json");
    f << "{ this is not json";
  }
  const CmdResult r = run_cli(
      "run --config " + (dir / "bad.json").string() + " --out " + dir.string(), dir);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("error:"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "timeseries.csv"));

  {
    std::ofstream f(dir / "unknown.json");
    f << R"({"simulation": {"dt": 0.001}})";
  }
  const CmdResult r2 = run_cli(
      "run --config " + (dir / "unknown.json").string() + " --out " + dir.string(), dir);
  EXPECT_EQ(r2.exit_code, 1);
  EXPECT_NE(r2.output.find("unknown key"), std::string::npos);
}

TEST(Cli, StabilityVerdictDrivesExitCode) {
  const fs::path dir = scratch_dir("stability");
  const CmdResult ok = run_cli("stability --preset-controller paper-nlpid", dir);
  EXPECT_EQ(ok.exit_code, 0) << ok.output;
  EXPECT_NE(ok.output.find("overall: stable"), std::string::npos);

  // Inline gain set with an integral gain far beyond the stable range.
  json channels = json::object();
  for (const char* name : {"x", "y", "z", "phi", "theta", "psi"}) {
    channels[name] = json{{"kp", 1.0}, {"ki", 10.0}, {"kd", 0.1}};
  }
  {
    std::ofstream f(dir / "unstable.json");
    f << json{{"controller", {{"family", "lpid"}, {"channels", channels}}}}.dump();
  }
  const CmdResult bad = run_cli("stability --config " + (dir / "unstable.json").string() +
                                " --out " + dir.string(), dir);
  EXPECT_EQ(bad.exit_code, 2);
  EXPECT_NE(bad.output.find("UNSTABLE"), std::string::npos);
  EXPECT_NE(bad.output.find("delta2 <= 0"), std::string::npos);  // names the failing minor

  ASSERT_TRUE(fs::exists(dir / "stability.json"));
  const json report = json::parse(slurp(dir / "stability.json"));
  EXPECT_FALSE(report["overall_stable"].get<bool>());
  ASSERT_EQ(report["subsystems"].size(), 6u);
}

TEST(Cli, CompareWritesBothRuns) {
  const fs::path dir = scratch_dir("compare");
  const CmdResult r = run_cli(
      "compare --preset-controller paper-nlpid --preset-controller paper-lpid"
      " --t-final 1 --out " + dir.string(), dir);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_TRUE(fs::exists(dir / "timeseries_a.csv"));
  EXPECT_TRUE(fs::exists(dir / "timeseries_b.csv"));
  EXPECT_TRUE(fs::exists(dir / "compare.txt"));
  EXPECT_TRUE(fs::exists(dir / "manifest.json"));
  const std::string cmp = slurp(dir / "compare.txt");
  EXPECT_NE(cmp.find("paper-nlpid"), std::string::npos);
  EXPECT_NE(cmp.find("paper-lpid"), std::string::npos);
  EXPECT_NE(cmp.find("[opi]"), std::string::npos);
  // Different controllers must produce different trajectories.
  EXPECT_NE(slurp(dir / "timeseries_a.csv"), slurp(dir / "timeseries_b.csv"));
}

TEST(Cli, CompareIdenticalControllersMatchesExactly) {
  const fs::path dir = scratch_dir("compare_same");
  const CmdResult r = run_cli(
      "compare --preset-controller paper-nlpid --preset-controller paper-nlpid"
      " --t-final 1 --out " + dir.string(), dir);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(slurp(dir / "timeseries_a.csv"), slurp(dir / "timeseries_b.csv"));
}

TEST(Cli, CompareRejectsMixedSelectors) {
  const fs::path dir = scratch_dir("compare_bad");
  const CmdResult r = run_cli("compare --preset-controller paper-nlpid", dir);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("error:"), std::string::npos);
}

TEST(Cli, TuneSphereIsReproducible) {
  const fs::path dir = scratch_dir("tune");
  {
    std::ofstream f(dir / "tune.json");
    f << R"({"ga": {"fitness": "sphere", "sphere_dim": 3, "population": 10,
                    "generations": 5, "seed": 2}})";
  }
  const fs::path out_a = dir / "a", out_b = dir / "b";
  const CmdResult ra = run_cli("tune --config " + (dir / "tune.json").string() +
                               " --out " + out_a.string(), dir);
  ASSERT_EQ(ra.exit_code, 0) << ra.output;
  EXPECT_NE(ra.output.find("best fitness:"), std::string::npos);

  ASSERT_TRUE(fs::exists(out_a / "history.csv"));
  ASSERT_TRUE(fs::exists(out_a / "best_vector.json"));
  ASSERT_TRUE(fs::exists(out_a / "manifest.json"));

  std::ifstream hist(out_a / "history.csv");
  std::string line;
  ASSERT_TRUE(std::getline(hist, line));
  EXPECT_EQ(line, "generation,best_fitness");
  int rows = 0;
  while (std::getline(hist, line)) ++rows;
  EXPECT_EQ(rows, 6);  // initial population + 5 generations

  const json best = json::parse(slurp(out_a / "best_vector.json"));
  ASSERT_EQ(best["best"].size(), 3u);

  const CmdResult rb = run_cli("tune --config " + (dir / "tune.json").string() +
                               " --out " + out_b.string(), dir);
  ASSERT_EQ(rb.exit_code, 0) << rb.output;
  EXPECT_EQ(slurp(out_a / "history.csv"), slurp(out_b / "history.csv"));
  EXPECT_EQ(slurp(out_a / "best_vector.json"), slurp(out_b / "best_vector.json"));
}

}  // namespace
}  // namespace quadnlpid

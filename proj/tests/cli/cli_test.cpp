// Drives the installed command-line tool and checks its exit codes and files.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string output;
};

Result run(const std::string& args) {
  const fs::path log = fs::temp_directory_path() / "sorr_cli_test.log";
  const std::string cmd = std::string(SORR_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sorr_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void writeFile(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string readFile(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSyntheticConfig =
    "name = tiny\n"
    "task = binary\n"
    "loss = hinge\n"
    "aggregate = aorr\n"
    "synthetic = balanced\n"
    "n_outliers = 1\n"
    "standardize = false\n"
    "k = 2\n"
    "m = 1\n"
    "outer_epochs = 2\n"
    "inner_epochs = 50\n"
    "repeats = 2\n"
    "output = tiny\n";

TEST(Cli, MissingSubcommandIsUsageError) { EXPECT_EQ(run("").code, 1); }

TEST(Cli, UnknownFlagIsUsageError) { EXPECT_EQ(run("train --bogus").code, 1); }

TEST(Cli, UnknownReproNameListsRegistry) {
  const Result r = run("repro table99");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("table3"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("fig9"), std::string::npos) << r.output;
}

TEST(Cli, BadConfigKeyIsUsageError) {
  const fs::path dir = scratch("badkey");
  writeFile(dir / "c.cfg", std::string(kSyntheticConfig) + "nonsense = 1\n");
  const Result r = run("train --config " + (dir / "c.cfg").string() + " --out " + dir.string());
  EXPECT_EQ(r.code, 1) << r.output;
  EXPECT_NE(r.output.find("nonsense"), std::string::npos) << r.output;
}

TEST(Cli, MissingDatasetIsDataError) {
  const fs::path dir = scratch("nodata");
  writeFile(dir / "c.cfg",
            "task = binary\nloss = logistic\naggregate = aorr\ndataset = /nonexistent.csv\n"
            "k = 5\nm = 1\n");
  EXPECT_EQ(run("train --config " + (dir / "c.cfg").string() + " --out " + dir.string()).code, 2);
}

TEST(Cli, TrainWritesReportsAndModel) {
  const fs::path dir = scratch("train");
  writeFile(dir / "c.cfg", kSyntheticConfig);
  const Result r = run("train --config " + (dir / "c.cfg").string() + " --out " + dir.string());
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(fs::exists(dir / "tiny.json"));
  EXPECT_TRUE(fs::exists(dir / "tiny.csv"));
  EXPECT_TRUE(fs::exists(dir / "tiny.model"));
  const std::string json = readFile(dir / "tiny.json");
  EXPECT_NE(json.find("\"config\""), std::string::npos);
  EXPECT_NE(json.find("\"summary\""), std::string::npos);

  // The saved model scores a generated file.
  ASSERT_EQ(run("gen-synth --outliers 1 --seed 3 --out " + (dir / "s.csv").string()).code, 0);
  const Result e = run("eval --model " + (dir / "tiny.model").string() + " --data " +
                       (dir / "s.csv").string());
  EXPECT_EQ(e.code, 0) << e.output;
  EXPECT_NE(e.output.find("error_pct"), std::string::npos);
}

TEST(Cli, SeedOverrideChangesRunsDeterministically) {
  const fs::path dir = scratch("seed");
  writeFile(dir / "c.cfg", kSyntheticConfig);
  const std::string base = "train --config " + (dir / "c.cfg").string() + " --out ";
  ASSERT_EQ(run(base + (dir / "a").string() + " --seed 5").code, 0);
  ASSERT_EQ(run(base + (dir / "b").string() + " --seed 5").code, 0);
  EXPECT_EQ(readFile(dir / "a" / "tiny.csv"), readFile(dir / "b" / "tiny.csv"));
}

TEST(Cli, SweepWritesOneRowPerValue) {
  const fs::path dir = scratch("sweep");
  writeFile(dir / "c.cfg", std::string(kSyntheticConfig));
  const Result r = run("sweep --config " + (dir / "c.cfg").string() +
                       " --param k --range 2:4 --out " + (dir / "s.csv").string());
  ASSERT_EQ(r.code, 0) << r.output;
  const std::string csv = readFile(dir / "s.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(csv.rfind("k,", 0), 0u);
}

TEST(Cli, NoiseReportsFlipCount) {
  const fs::path dir = scratch("noise");
  ASSERT_EQ(run("gen-synth --seed 1 --out " + (dir / "s.csv").string()).code, 0);
  const Result r = run("noise --data " + (dir / "s.csv").string() + " --p 1 --out " +
                       (dir / "n.csv").string());
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("flipped 200 of 200"), std::string::npos) << r.output;
}

TEST(Cli, InvalidRangeIsUsageError) {
  const fs::path dir = scratch("range");
  writeFile(dir / "c.cfg", kSyntheticConfig);
  EXPECT_EQ(run("sweep --config " + (dir / "c.cfg").string() + " --param m --range 5:1").code, 1);
}

}  // namespace

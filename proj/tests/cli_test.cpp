#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "snaplab/cli.hpp"
#include "snaplab/fixtures.hpp"
#include "snaplab/io.hpp"

namespace snaplab {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("snaplab_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ::unsetenv("SNAPLAB_SEED");
  }
  void TearDown() override {
    ::unsetenv("SNAPLAB_SEED");
    fs::remove_all(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, FrozenAtZeroIsAllTrue) {
  ASSERT_EQ(run({"simulate", "--regions", "2", "--processes", "2", "--events", "3", "--seed", "5", "--out",
                 path("tr.jsonl")})
                .code,
            0);
  ASSERT_EQ(run({"acquire", "--trace", path("tr.jsonl"), "--strategy", "frozen", "--at", "0", "--out",
                 path("s.jsonl")})
                .code,
            0);
  const Result r = run({"evaluate", "--trace", path("tr.jsonl"), "--snapshot", path("s.jsonl"), "--tau", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const io::Json v = io::Json::parse(r.out);
  for (const char* key : {"correct", "instantaneous", "quasi_instantaneous", "causal", "restrictive_integrity",
                          "permissive_integrity"})
    EXPECT_EQ(v[key], true) << key;
}

TEST_F(CliTest, EveryStrategyProducesASnapshot) {
  ASSERT_EQ(run({"simulate", "--regions", "3", "--processes", "2", "--events", "12", "--regime", "mixed", "--out",
                 path("tr.jsonl")})
                .code,
            0);
  const std::vector<std::vector<std::string>> extra{
      {"--strategy", "frozen", "--at", "4"},
      {"--strategy", "sequential", "--start", "2", "--delay", "2", "--order", "2,0,1"},
      {"--strategy", "cow", "--start", "1"},
      {"--strategy", "priority", "--start", "1", "--priority", "2"}};
  for (const auto& flags : extra) {
    std::vector<std::string> args{"acquire", "--trace", path("tr.jsonl"), "--out", path("s.jsonl")};
    args.insert(args.end(), flags.begin(), flags.end());
    const Result r = run(args);
    ASSERT_EQ(r.code, 0) << flags[1] << ": " << r.err;
    EXPECT_EQ(run({"evaluate", "--trace", path("tr.jsonl"), "--snapshot", path("s.jsonl"), "--window"}).code, 0);
  }
}

TEST_F(CliTest, ManifestRerunReproducesOutputs) {
  ASSERT_EQ(run({"simulate", "--regions", "3", "--processes", "3", "--events", "20", "--regime", "modifying",
                 "--workload", "linked-list", "--seed", "17", "--out", path("tr.jsonl")})
                .code,
            0);
  ASSERT_TRUE(fs::exists(path("tr.jsonl.manifest.json")));
  const std::string first = slurp(path("tr.jsonl"));
  fs::remove(path("tr.jsonl"));
  ASSERT_EQ(run({"rerun", "--manifest", path("tr.jsonl.manifest.json")}).code, 0);
  EXPECT_EQ(slurp(path("tr.jsonl")), first);

  ASSERT_EQ(run({"acquire", "--trace", path("tr.jsonl"), "--strategy", "cow", "--start", "3", "--out",
                 path("s.jsonl")})
                .code,
            0);
  const std::string snap = slurp(path("s.jsonl"));
  fs::remove(path("s.jsonl"));
  ASSERT_EQ(run({"rerun", "--manifest", path("s.jsonl.manifest.json")}).code, 0);
  EXPECT_EQ(slurp(path("s.jsonl")), snap);
}

TEST_F(CliTest, SeedComesFromEnvironment) {
  ::setenv("SNAPLAB_SEED", "1234", 1);
  ASSERT_EQ(run({"simulate", "--regions", "2", "--events", "15", "--out", path("env.jsonl")}).code, 0);
  ::unsetenv("SNAPLAB_SEED");
  ASSERT_EQ(run({"simulate", "--regions", "2", "--events", "15", "--seed", "1234", "--out", path("flag.jsonl")}).code,
            0);
  EXPECT_EQ(slurp(path("env.jsonl")), slurp(path("flag.jsonl")));
  const io::Json manifest = io::Json::parse(slurp(path("env.jsonl.manifest.json")));
  EXPECT_EQ(manifest["seed"], 1234);
}

TEST_F(CliTest, VerifyDefaultCampaignExitsZero) {
  const Result r = run({"verify", "--cases", "10000", "--seed", "7", "--out", path("report.jsonl")});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(path("report.jsonl")));
}

TEST_F(CliTest, LatticeAndDiagram) {
  std::ofstream(path("canon.jsonl")) << io::trace_text(fixtures::canonical_computation());
  Result r = run({"lattice", "--trace", path("canon.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("{e1,e2,e3}"), std::string::npos);
  r = run({"diagram", "--trace", path("canon.jsonl"), "--cut", "1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("cut_r1"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"simulate", "--bogus"}).code, 64);
  EXPECT_EQ(run({"nonsense"}).code, 64);
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"evaluate", "--trace", path("missing.jsonl"), "--snapshot", path("missing.jsonl")}).code, 74);
  std::ofstream(path("bad.jsonl")) << "garbage\n";
  EXPECT_EQ(run({"lattice", "--trace", path("bad.jsonl")}).code, 74);
  std::ofstream(path("canon.jsonl")) << io::trace_text(fixtures::canonical_computation());
  EXPECT_EQ(run({"acquire", "--trace", path("canon.jsonl"), "--strategy", "sequential", "--order", "0,0", "--out",
                 path("s.jsonl")})
                .code,
            64);
}

TEST_F(CliTest, BinaryReportsUsageErrors) {
  const std::string cmd = std::string(SNAPLAB_BINARY) + " simulate --unknown-flag >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 64);
}

}  // namespace
}  // namespace snaplab

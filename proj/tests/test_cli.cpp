#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <string>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result cli(const std::string& args) {
  const std::string cmd = std::string(ACOOL_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST(Cli, CrashSilentRunOutputsInput) {
  const Result r = cli("run --protocol acool --n 4 --t 1 --len 1024 --adversary crash_silent --seed 7");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "terminated");
  EXPECT_TRUE(j["properties"]["consistency"].get<bool>());
  EXPECT_TRUE(j["properties"]["validity"].get<bool>());
}

TEST(Cli, SplitScenarioSucceeds) {
  const Result r = cli("run --scenario split-input --n 7 --t 2");
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, LegacySplitScenarioReportsLiveness) {
  int stalls = 0;
  for (int s = 1; s <= 10; ++s) {
    const Result r = cli("run --scenario split-input --n 7 --t 2 --legacy-cool --scheduler adversary --seed " +
                         std::to_string(s));
    ASSERT_TRUE(r.code == 0 || r.code == 3) << r.out;
    stalls += r.code == 3;
  }
  EXPECT_GE(stalls, 1);
}

TEST(Cli, ResilienceViolationExitsOne) {
  const Result r = cli("run --n 3 --t 1");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("ResilienceViolation"), std::string::npos) << r.out;
}

TEST(Cli, UnknownFlagExitsOne) { EXPECT_EQ(cli("run --bogus 1").code, 1); }

TEST(Cli, ScenarioListIsJson) {
  const Result r = cli("scenario-list");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("scenarios"));
  EXPECT_EQ(j["adversaries"].size(), 7u);
  EXPECT_EQ(j["schedulers"].back(), "fifo");
}

TEST(Cli, SweepPrintsCsv) {
  const Result r = cli("sweep --ns 4,7 --len 256 --seeds 1 2>/dev/null");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("protocol,", 0), 0u) << r.out;
}

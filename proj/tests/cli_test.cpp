#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QSCHMIDT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("qschmidt-cli-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(Cli, PTable) {
  auto r = run("ptable -k 1 -r 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "i=1: q^-1 + 1\ni=2: 1 + 2q + q^2\n");
  EXPECT_EQ(run("ptable -k 0 -r 5").out, "i=0: 1\n");
}

TEST(Cli, PTableJson) {
  auto r = run("--format json ptable -k 2 -r 3");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 5U);
  EXPECT_EQ(j[0].at("i"), 2);
  EXPECT_EQ(j[4].at("i"), 6);
  EXPECT_EQ(j[0].at("k"), 2);
  EXPECT_TRUE(j[0].at("poly").contains("coeffs"));
}

TEST(Cli, CpolyBpolyTpoly) {
  EXPECT_EQ(run("cpoly -r 2 --i-max 2").out, "i=0: 1\ni=1: 1 + q\ni=2: 2 + 3q + 3q^2 + q^3 + q^4\n");
  EXPECT_EQ(run("bpoly -r 2 --i-max 1").out, "i=0: 1\ni=1: q^-1 + 1\n");
  EXPECT_EQ(run("tpoly -k 1 -r 2 --plan zudilin").out, "i=1: 1 + q\ni=2: 1 + 2q + q^2\n");
  EXPECT_EQ(run("tpoly -k 1 -r 2 --plan bogus").status, 2);
}

TEST(Cli, TpolyCustomPlanFile) {
  const auto dir = scratch("plan");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "plan.json") << R"({"name": "shift1", "f": [[1]], "g": [[0]]})";
  EXPECT_EQ(run("tpoly -k 1 -r 2 --plan-file " + (dir / "plan.json").string()).out, "i=1: 1 + q\ni=2: q + 2q^2 + q^3\n");
  EXPECT_EQ(run("tpoly -k 1 -r 2 --plan-file " + (dir / "missing.json").string()).status, 3);
  std::filesystem::remove_all(dir);
}

TEST(Cli, Schmidt) {
  auto r = run("--format csv schmidt -r 2 -s 1 -N 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "k,c_k,integral\n0,1/1,true\n1,2/1,true\n2,10/1,true\n");
  const auto diag = nlohmann::json::parse(run("--format json schmidt -r 3 -s 3 -N 5").out);
  for (const auto& v : diag.at("values")) EXPECT_EQ(v, "1/1");
  auto flagged = run("schmidt -r 3 -s 2 -N 3");
  EXPECT_EQ(flagged.status, 0);
  EXPECT_NE(flagged.out.find("3     no        343/5"), std::string::npos) << flagged.out;
}

TEST(Cli, SearchRWithCache) {
  const auto dir = scratch("cache");
  const std::string flags = " --cache-dir " + dir.string();
  auto cold = run("--format json search-r -n 4 -s 2 --r-max 50" + flags);
  ASSERT_EQ(cold.status, 0);
  EXPECT_EQ(nlohmann::json::parse(cold.out).at("r_found"), 32);
  EXPECT_TRUE(std::filesystem::exists(dir / "search-r.json"));
  auto warm = run("--format json search-r -n 4 -s 2 --r-max 50" + flags);
  EXPECT_EQ(warm.out, cold.out);
  EXPECT_EQ(run("--format json search-r -n 4 -s 2 --r-max 50 --no-cache").out, cold.out);
  std::filesystem::remove_all(dir);
}

TEST(Cli, SearchRHuman) {
  EXPECT_EQ(run("search-r -n 0 -s 2 --no-cache").out.substr(0, 11), "r(0,2) = 3\n");
  auto miss = run("search-r -n 3 -s 2 --r-max 5 --no-cache");
  EXPECT_EQ(miss.status, 0);
  EXPECT_NE(miss.out.find("not found"), std::string::npos);
}

TEST(Cli, SearchRFiveViaEnvCacheDir) {
  const auto dir = scratch("env");
  const std::string cmd = "QSCHMIDT_CACHE_DIR=" + dir.string() + " " + std::string(QSCHMIDT_CLI) +
                          " search-r -n 5 -s 2 --r-max 250";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::array<char, 256> buf{};
  ASSERT_NE(std::fgets(buf.data(), buf.size(), pipe), nullptr);
  EXPECT_EQ(std::string(buf.data()), "r(5,2) = 212\n");
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) {
  }
  EXPECT_EQ(::pclose(pipe), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "search-r.json"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, SearchRIoError) {
  const auto dir = scratch("io");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "blocker") << "x";
  EXPECT_EQ(run("search-r -n 1 -s 2 --r-max 5 --cache-dir " + (dir / "blocker" / "sub").string()).status, 3);
  std::filesystem::remove_all(dir);
}

TEST(Cli, FirstNonint) {
  auto r = run("--format json first-nonint -r 3 -s 2 --k-max 10");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("k"), 3);
  EXPECT_EQ(j.at("value"), "343/5");
  EXPECT_TRUE(nlohmann::json::parse(run("--format json first-nonint -r 7 -s 2 --k-max 3").out).at("k").is_null());
  EXPECT_EQ(run("first-nonint -r 3 -s 3").status, 2);
}

TEST(Cli, Verify) {
  EXPECT_EQ(run("verify --suite pfaff --max 6").status, 0);
  EXPECT_EQ(run("verify --suite thm11 --n-max 10 --r-max 4").status, 0);
  auto all = run("--format json verify --suite all --n-max 3");
  EXPECT_EQ(all.status, 0);
  const auto j = nlohmann::json::parse(all.out);
  EXPECT_EQ(j.at("holds"), true);
  EXPECT_EQ(j.at("suites").size(), 7U);  // thm11, thm13, lemma12, 2 step plans, pfaff, pfaff-substituted
  EXPECT_EQ(run("verify --suite nope").status, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("ptable -k -1 -r 2").status, 2);
  EXPECT_EQ(run("ptable -k 1").status, 2);
  EXPECT_EQ(run("--format xml ptable -k 1 -r 1").status, 2);
  EXPECT_EQ(run("search-r -n 1 -s 3 --r-max 3 --no-cache").status, 2);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, ReproSkipAndJson) {
  const auto dir = scratch("repro");
  std::filesystem::create_directories(dir);
  const auto report = dir / "out.json";
  auto r = run("repro --skip search-r-5 --json " + report.string());
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("SKIP  search-r-5"), std::string::npos);
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
  std::ifstream in(report);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j.at("pass"), true);
  EXPECT_EQ(run("repro --skip no-such-check").status, 2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, MachineOutputIsDeterministic) {
  for (const char* args : {"--format json ptable -k 3 -r 3", "--format json --threads 3 verify --suite lemma12 --n-max 6",
                           "--format csv schmidt -r 5 -s 2 -N 6", "--format json cpoly -r 3 --i-max 5"}) {
    EXPECT_EQ(run(args).out, run(args).out) << args;
  }
}

}  // namespace

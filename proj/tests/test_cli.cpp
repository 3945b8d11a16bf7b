#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + WEYL_UNCERT_BIN + std::string(" ") + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path tmpdir() {
  const auto d = std::filesystem::temp_directory_path() / "weylunc_cli_test";
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("verify --suite all --samples 0").code, 2);
  EXPECT_EQ(run("verify --suite nope").code, 2);
  EXPECT_EQ(run("qubit --sx 1 --sz 1").code, 2);
  EXPECT_EQ(run("figure --id 7").code, 2);
  EXPECT_EQ(run("scan --family phase-coherent --param xi --from 0.1 --to 0.2").code, 2);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run("scan --help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("phase-coherent:xi="), std::string::npos);
}

TEST(Cli, BadFamilyReportsPosition) {
  const auto r = run("scan --family gaussian:a=0.01,c=2 --param b --from 0 --to 1 --steps 3");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("position 16"), std::string::npos) << r.out;
}

TEST(Cli, TruncationCapFromEnvironment) {
  const std::string args = "scan --family phase-coherent --param xi --from 0.99 --to 0.999 --steps 2";
  EXPECT_EQ(run(args).code, 2);
  EXPECT_EQ(run(args, "WEYL_UNCERT_MAX_NMAX=40000").code, 0);
}

TEST(Cli, ScanCsv) {
  const auto r = run("scan --family phase-coherent --param xi --from 0.01 --to 0.995 --steps 99 --k 1 --phi-over-pi 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "param,U,Uprime,Udoubleprime,V,absPhi,absPhiTilde,absOmega,Pik,nbar");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 100);
}

TEST(Cli, NumberScanIsConstant) {
  const auto r = run("scan --family number --param n --from 0 --to 5 --steps 6 --k 1 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema_version"], "1");
  EXPECT_EQ(j["command"], "scan");
  ASSERT_EQ(j["rows"].size(), 6u);
  for (const auto& row : j["rows"]) EXPECT_EQ(row["U"].get<double>(), 1.0);
}

TEST(Cli, FigureIsDeterministicAndAtomic) {
  const auto d = tmpdir();
  ASSERT_EQ(run("figure --id 1 --out " + (d / "a.csv").string()).code, 0);
  ASSERT_EQ(run("figure --id 1 --out " + (d / "b.csv").string()).code, 0);
  const std::string a = slurp(d / "a.csv");
  EXPECT_EQ(a, slurp(d / "b.csv"));
  EXPECT_EQ(a.find('\r'), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(d / "a.csv.tmp"));
  std::filesystem::remove_all(d);
}

TEST(Cli, Qubit) {
  const auto r = run("qubit --sx 0.7071 --sy 0 --sz 0.7071");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["report"]["U"].get<double>(), 1.0, 5e-4);
  EXPECT_NEAR(j["report"]["V"].get<double>(), 0.5, 5e-4);
  EXPECT_EQ(j["notes"].size(), 1u);
  const auto y = nlohmann::json::parse(run("qubit --sy 1").out);
  EXPECT_EQ(y["report"]["Omega"]["im"].get<double>(), 1.0);
}

TEST(Cli, Extremum) {
  const auto r =
      run("extremum --family phase-coherent --param xi --functional V --kind max --from 0.05 --to 0.95");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["report"]["param"].get<double>(), 0.486, 0.001);
  EXPECT_NEAR(j["report"]["value"].get<double>(), 0.300, 0.001);
}

TEST(Cli, VerifySuites) {
  const auto r = run("verify --suite fock --samples 100 --seed 1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("max Gram-determinant negativity"), std::string::npos);
  const auto again = run("verify --suite fock --samples 100 --seed 1");
  EXPECT_EQ(r.out, again.out);
}

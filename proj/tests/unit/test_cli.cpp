#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#ifdef FRMPE_CLI_PATH

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(FRMPE_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string last_line(const std::string& text) {
  auto end = text.find_last_not_of('\n');
  auto start = text.rfind('\n', end);
  return text.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

TEST(Cli, VersionAndHelp) {
  const auto v = run("--version");
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ExactDiagonalizationRow) {
  const auto r = run("ed --ratio 0.8");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("omega,Omega,g,g_over_gc,energy,sigma_x,corr,nphot,parity,cutoff"), std::string::npos);
  EXPECT_EQ(last_line(r.out).rfind("0.01,1,0.040807836115251094,0.8,-0.50207085364301", 0), 0u);
}

TEST(Cli, EDNonConvergenceExitCode) {
  EXPECT_EQ(run("ed --ratio 1.2 --ed-max-cutoff 32").code, 2);
}

TEST(Cli, BadArgumentsExitCode) {
  EXPECT_EQ(run("ed --no-such-flag").code, 4);
  EXPECT_EQ(run("ed --g 0.05 --ratio 1.0").code, 4);
  EXPECT_EQ(run("ed --omega -1").code, 4);
  EXPECT_EQ(run("sweep --method gauss3").code, 4);
}

TEST(Cli, ValidationPassAndFail) {
  EXPECT_EQ(run("validate --draws 20").code, 0);
  const auto r = run("validate --draws 20 --threshold 1e-30");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("fail"), std::string::npos);
}

TEST(Cli, ConfigFileWithCommandLineOverride) {
  const auto cfg = temp_file("frmpe_cli_test.ini", "omega=0.02\nratio=0.9\n");
  const auto a = run("ed --config " + cfg.string());
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(last_line(a.out).rfind("0.02,1,", 0), 0u);
  const auto b = run("ed --config " + cfg.string() + " --omega 0.03");
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(last_line(b.out).rfind("0.03,1,", 0), 0u);
  std::filesystem::remove(cfg);
}

TEST(Cli, JsonOutput) {
  const auto r = run("ed --ratio 0.8 --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.front(), '{');
  EXPECT_NE(r.out.find("\"energy\": -0.5020708536430104"), std::string::npos);
  EXPECT_NE(r.out.find("\"parity\": -1.0"), std::string::npos);
}

TEST(Cli, SmallSweepWritesFile) {
  const auto out = std::filesystem::temp_directory_path() / "frmpe_cli_sweep.csv";
  const auto r = run("sweep --method frmpe1 --points 2 --ratio-min 0.9 --ratio-max 1.0 --restarts 1 --out " +
                     out.string());
  ASSERT_EQ(r.code, 0);
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("frmpe1_dE_over_omega"), std::string::npos);
  int rows = 0;
  for (std::size_t p = text.find("\n0.1.0,"); p != std::string::npos; p = text.find("\n0.1.0,", p + 1)) ++rows;
  EXPECT_EQ(rows, 2);
  std::filesystem::remove(out);
}

}  // namespace

#endif

// Runs the pilab binary as a subprocess. PILAB_CLI is set by CMake.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int status;
  std::string out;
};

CliResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " PILAB_CLI " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("pilab_cli_" + name);
  std::ofstream(p) << content;
  return p;
}

int lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, GenPipesIntoEnumerate) {
  const CliResult r = run("gen scheder-t --m 2 | " PILAB_CLI " enumerate --method structural");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out), 9);
}

TEST(Cli, DiffIsEmptyOnRandomFormula) {
  const CliResult r = run("diff -f random:n=8,m=12,seed=3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "");
}

TEST(Cli, UnsatisfiableGivesEmptyOutput) {
  const fs::path p = temp_file("unsat.cnf", "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n");
  const CliResult r = run("enumerate --input " + p.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("frobnicate").status, 1);
  EXPECT_EQ(run("enumerate -f scheder-t:m=1 --method magic").status, 1);
  EXPECT_EQ(run("enumerate -f cm-block:k=3 --method structural").status, 1);
  EXPECT_EQ(run("enumerate --input /nonexistent/x.cnf").status, 2);
  const fs::path bad = temp_file("bad.cnf", "p cnf 2 1\n1 5 0\n");
  EXPECT_EQ(run("enumerate --input " + bad.string()).status, 2);
  EXPECT_EQ(run("enumerate -f cm:n=15,k=3").status, 3);
  EXPECT_EQ(run("verify").status, 1);
}

TEST(Cli, NmaxRaisesTheOracleLimit) {
  EXPECT_EQ(run("enumerate --method oracle -f random:n=13,m=10,seed=1").status, 3);
  const CliResult r = run("enumerate --method oracle -f random:n=13,m=10,seed=1", "PI_LAB_NMAX=13");
  EXPECT_EQ(r.status, 0);
  const CliResult s = run("enumerate --method structural -f random:n=13,m=10,seed=1");
  EXPECT_EQ(s.status, 0);
  EXPECT_EQ(r.out, s.out);
  EXPECT_EQ(run("enumerate -f scheder-t:m=1", "PI_LAB_NMAX=zero").status, 1);
}

TEST(Cli, EnumerateIsDeterministic) {
  for (const char* spec : {"scheder-t:m=3", "random:n=10,m=18,seed=4", "cm:n=6,k=3"}) {
    const CliResult a = run(std::string("enumerate -f ") + spec);
    const CliResult b = run(std::string("enumerate -f ") + spec);
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, CountJsonAndText) {
  const CliResult j = run("count -f scheder-t:m=2 --format json");
  EXPECT_EQ(j.status, 0);
  EXPECT_NE(j.out.find("\"count_total\": 9"), std::string::npos);
  EXPECT_NE(j.out.find("\"bound_total\": \"17\""), std::string::npos);
  const CliResult t = run("count -f scheder-t:m=2");
  EXPECT_NE(t.out.find("total"), std::string::npos);
}

TEST(Cli, VerifyFamilies) {
  const CliResult r = run("verify -f scheder-t:m=2 -f cm-block:k=3 -f random:n=6,m=9,seed=2");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("3/3 formulas passed"), std::string::npos);
}

TEST(Cli, VerifyCorpusDirectory) {
  const fs::path dir = fs::temp_directory_path() / "pilab_cli_corpus";
  fs::create_directories(dir);
  std::ofstream(dir / "a.cnf") << "p cnf 3 3\n1 2 0\n2 3 0\n1 3 0\n";
  std::ofstream(dir / "b.cnf") << "p cnf 2 2\n1 2 0\n-1 -2 0\n";
  const CliResult r = run("verify --corpus " + dir.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("2/2 formulas passed"), std::string::npos);
  EXPECT_EQ(run("verify --corpus /nonexistent/dir").status, 2);
}

TEST(Cli, GraphDot) {
  const CliResult d = run("graph -f scheder-t:m=1 --dot");
  EXPECT_EQ(d.status, 0);
  EXPECT_NE(d.out.find("\"~x1\" -> \"x2\""), std::string::npos);
  const CliResult v = run("graph -f scheder-t:m=1 --which variable");
  EXPECT_NE(v.out.find("\"x1\" -- \"x2\""), std::string::npos);
}

TEST(Cli, GenWritesFile) {
  const fs::path out = fs::temp_directory_path() / "pilab_cli_gen.cnf";
  EXPECT_EQ(run("gen random --n 5 --m 8 --seed 1 --out " + out.string()).status, 0);
  std::ifstream in(out);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "c generator random n=5 m=8 seed=1");
  EXPECT_EQ(run("gen random --n 5 --m 8 --seed 1").out, run("gen random --n 5 --m 8 --seed 1").out);
}

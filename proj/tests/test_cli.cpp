#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

/// Runs the CLI with stderr folded into the captured output.
CliRun run(const std::string& args) {
  CliRun r;
  const std::string cmd = std::string(STATMAN_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

}  // namespace

TEST(Cli, FixturesList) {
  const CliRun r = run("fixtures");
  EXPECT_EQ(r.status, 0);
  for (const char* n : {"kenmotsu5d", "hyperbolic2", "flat2-einstein", "flat3-einstein", "kenmotsu5d-sub-invariant"})
    EXPECT_TRUE(contains(r.out, n)) << n;
}

TEST(Cli, CheckKenmotsuAllPass) {
  const CliRun r = run("check kenmotsu5d --structure all --format machine");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  int checks = 0;
  for (const auto& s : j["sections"])
    for (const auto& c : s["checks"]) {
      ++checks;
      EXPECT_NE(c["verdict"], "fail") << c["id"];
    }
  EXPECT_GT(checks, 10);
}

TEST(Cli, FixturePathAndNameAgree) {
  // the first line names the target; the rest must be identical
  auto body = [](const std::string& s) { return s.substr(s.find('\n')); };
  const CliRun by_name = run("scalar hyperbolic2");
  const CliRun by_path = run("scalar " + std::string(STATMAN_FIXTURE_DIR) + "/hyperbolic2.sm");
  EXPECT_EQ(by_name.status, 0);
  EXPECT_EQ(by_path.status, 0);
  EXPECT_EQ(body(by_path.out), body(by_name.out));
}

TEST(Cli, SolitonQuasiYamabe) {
  const CliRun r = run("soliton kenmotsu5d --kind quasi-yamabe");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "lambda = -21, omega = 1"));
  EXPECT_TRUE(contains(r.out, "expanding"));
}

TEST(Cli, ClassifyDefaultsToRicciWithoutContact) {
  const CliRun r = run("classify hyperbolic2");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "solved ricci lambda = 0"));
  const CliRun given = run("classify kenmotsu5d --lambda \"a - 1\" --assign a=0");
  EXPECT_EQ(given.status, 0) << given.out;
  EXPECT_TRUE(contains(given.out, "shrinking"));
}

TEST(Cli, ClassifyNeedsAssignment) {
  const CliRun r = run("classify kenmotsu5d --lambda a");
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(contains(r.out, "--assign"));
}

TEST(Cli, SectionalWithAssignment) {
  const CliRun r = run("sectional flat3-einstein --connection nabla --ricci-source nabla --pair e1,e2 --assign b=2");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "K(e1,e2)"));
}

TEST(Cli, ClaimsReportMatches) {
  const CliRun r = run("claims hyperbolic2");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "summary: match=3"));
}

TEST(Cli, OracleDeterministic) {
  const CliRun a = run("oracle hyperbolic2 --points 4 --seed 3");
  const CliRun b = run("oracle hyperbolic2 --points 4 --seed 3");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(contains(a.out, "oracle.curvature.nabla"));
}

TEST(Cli, AuditSectionSelection) {
  const CliRun r = run("audit kenmotsu5d --section 8 --format machine");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  bool saw_claim = false;
  for (const auto& s : j["sections"])
    for (const auto& c : s["checks"])
      if (c["id"].get<std::string>().rfind("claim.", 0) == 0) saw_claim = true;
  EXPECT_TRUE(saw_claim);
}

TEST(Cli, SubmanifoldByBlockAndTangent) {
  const CliRun a = run("sub kenmotsu5d --submanifold umbilical");
  EXPECT_EQ(a.status, 0);
  EXPECT_TRUE(contains(a.out, "H = -xi"));
  const CliRun b = run("sub kenmotsu5d --tangent e1,e3,xi");
  EXPECT_EQ(b.status, 0) << b.out;
  EXPECT_TRUE(contains(b.out, "invariant"));
}

TEST(CliErrors, ParseErrorExitsTwoWithPosition) {
  const std::string f = temp_file("statman_bad.sm", "manifold \"x\"\nframe e1 e2\nmetric diag(1, 1)\nbracket [e1, e9] = e1\n");
  const CliRun r = run(f);
  EXPECT_NE(r.status, 0);
  const CliRun c = run("check " + f);
  EXPECT_EQ(c.status, 2);
  EXPECT_TRUE(contains(c.out, "4:14: reference error: undeclared frame vector 'e9'"));
}

TEST(CliErrors, UnknownTarget) {
  const CliRun r = run("scalar no-such-thing");
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(contains(r.out, "neither a readable file nor a built-in fixture"));
}

TEST(CliErrors, BadOptionValues) {
  EXPECT_EQ(run("scalar hyperbolic2 --sign sideways").status, 2);
  EXPECT_EQ(run("scalar hyperbolic2 --ricci-source other").status, 2);
  EXPECT_EQ(run("soliton hyperbolic2 --kind gradient").status, 2);
  EXPECT_EQ(run("scalar hyperbolic2 --assign a").status, 2);
  EXPECT_EQ(run("scalar hyperbolic2 --connection missing").status, 2);
}

TEST(CliErrors, MissingSubcommandIsUsageError) {
  const CliRun r = run("");
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.status, 2);
}

#include "tilekit/errors.hpp"
#include "tilekit/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace tilekit;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(TILEKIT_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string spec(const std::string& name) { return std::string(TILEKIT_SPECS) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("tilekit_test_" + std::to_string(getpid()) + "_" + name)).string();
}

}  // namespace

TEST(Io, LoadSpecKinds) {
  const LoadedSpec a = load_spec(json::parse(R"({"two_cut": {"n1":5,"n2":5,"m1":4,"m2":6,"b":3,"c":7,"d":2}})"));
  EXPECT_EQ(a.kind, "two_cut");
  EXPECT_EQ(a.bd.two_cut->rho, 2);
  const LoadedSpec b = load_spec(json::parse(R"({"hexagon": {"a":2,"b":2,"c":2}})"));
  EXPECT_EQ(b.bd.N, 4);
  const LoadedSpec c = load_spec(json::parse(
      R"({"multi_cut": {"upper_cuts":[2],"lower_cuts":[2],"upper_gaps":[5,5],"lower_gaps":[4,6],"b0":3,"bu":7,"d0":7}})"));
  EXPECT_EQ(c.bd.x, a.bd.x);
}

TEST(Io, MalformedSpecs) {
  for (const char* s : {R"({"two_cut": {"n1":5}})", R"({"two_cut": {"n1":"5","n2":5,"m1":4,"m2":6,"b":3,"c":7,"d":2}})",
                        R"({"square": {}})", R"([1,2])"})
    EXPECT_THROW(load_spec(json::parse(s)), Error) << s;
}

TEST(Io, NumberFormats) {
  EXPECT_EQ(exact_json(Rational(0)), "0/1");
  EXPECT_EQ(exact_json(Rational(6, -4)), "-3/2");
  EXPECT_EQ(float_json(0.1), "0.10000000000000001");
  EXPECT_EQ(number_json(Rational(1, 3), false), "0.33333333333333331");
}

TEST(Io, TilingRoundTrip) {
  const json t = json::parse(R"({"levels": [[1], [0, 2]], "blue_dots": []})");
  const RedDotConfig c = levels_from_json(t);
  ASSERT_EQ(c.levels.size(), 2u);
  EXPECT_EQ(c.levels[1], (Level{0, 2}));
  EXPECT_THROW(levels_from_json(json::parse(R"({"levels": [[1.5]]})")), Error);
}

TEST(Cli, ValidateTwoCutD2) {
  const CliRun r = run("validate --spec " + spec("twocut_d2.json"));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["result"]["r"], 1);
  EXPECT_EQ(j["result"]["rho"], 2);
  EXPECT_EQ(j["result"]["sigma"], 4);
  EXPECT_EQ(j["result"]["N"], 10);
}

TEST(Cli, SpecErrorsExitTwo) {
  const std::string bad = tmp("bad.json");
  std::ofstream(bad) << R"({"two_cut": {"n1":5,"n2":5,"m1":4,"m2":7,"b":3,"c":7,"d":2}})";
  const CliRun r = run("validate --spec " + bad);
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "ConstraintViolation");
  EXPECT_EQ(run("validate --spec /nonexistent.json").code, 2);
  EXPECT_EQ(run("identities --backend float --spec " + spec("twocut_d2.json")).code, 2);
  EXPECT_EQ(run("kernel k --spec " + spec("twocut_d2.json")).code, 2);
  EXPECT_EQ(run("nosuchcommand").code, 2);
  std::filesystem::remove(bad);
}

TEST(Cli, IdentitiesTwoCutD2) {
  const CliRun r = run("identities --spec " + spec("twocut_d2.json"));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  ASSERT_EQ(j["result"]["suites"].size(), 6u);
  for (const json& s : j["result"]["suites"]) EXPECT_TRUE(s["pass"].get<bool>()) << s["name"];
}

TEST(Cli, KasteleynVerify) {
  const CliRun r = run("kasteleyn --verify --count --spec " + spec("twocut_d2.json"));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["result"]["max_residual"], "0/1");
  EXPECT_EQ(j["result"]["abs_det"], "49365250325820");
}

TEST(Cli, CountCrossCheck) {
  const CliRun r = run("count --cross-check --spec " + spec("hex222.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["result"]["count"], "20");
}

TEST(Cli, KernelValues) {
  const CliRun e = run("kernel k --at 3,0,5,1 --spec " + spec("twocut_d2.json"));
  ASSERT_EQ(e.code, 0);
  const std::string v = json::parse(e.out)["result"]["value"];
  EXPECT_NE(v.find('/'), std::string::npos);
  const CliRun f = run("kernel k --at 3,0,5,1 --backend float --spec " + spec("twocut_d2.json"));
  const std::string fv = json::parse(f.out)["result"]["value"];
  const Rational q(v);
  EXPECT_NEAR(std::stod(fv), q.get_d(), 1e-16);
  const std::string csv = tmp("l.csv");
  ASSERT_EQ(run("kernel l --grid --out " + csv + " --spec " + spec("mini.json")).code, 0);
  EXPECT_EQ(slurp(csv).rfind("eta1,xi1,eta2,xi2,value_num,value_den", 0), 0u);
  std::filesystem::remove(csv);
}

TEST(Cli, SampleTwiceIsByteIdentical) {
  const std::string a = tmp("a"), b = tmp("b");
  const CliRun ra = run("sample --seed 42 --svg " + a + ".svg --json " + a + ".json --spec " + spec("twocut_d2.json"));
  const CliRun rb = run("sample --seed 42 --svg " + b + ".svg --json " + b + ".json --spec " + spec("twocut_d2.json"));
  ASSERT_EQ(ra.code, 0);
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_EQ(slurp(a + ".svg"), slurp(b + ".svg"));
  EXPECT_EQ(slurp(a + ".json"), slurp(b + ".json"));
  EXPECT_EQ(slurp(a + ".svg"), slurp(std::string(TILEKIT_TEST_DATA) + "/twocut_d2_seed42.svg"));
  // render reproduces the sampled SVG
  ASSERT_EQ(run("render --tiling " + a + ".json --svg " + b + ".r.svg --spec " + spec("twocut_d2.json")).code, 0);
  EXPECT_EQ(slurp(a + ".svg"), slurp(b + ".r.svg"));
  for (const auto& f : {a + ".svg", a + ".json", b + ".svg", b + ".json", b + ".r.svg"}) std::filesystem::remove(f);
}

TEST(Cli, DtacEval) {
  const CliRun r = run("dtac --rho 0 --r 1 --beta 0 --eval 0,0,0,0");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["result"]["value"]["pieces"].size(), 5u);
  // a rule this coarse cannot meet the tolerance
  EXPECT_EQ(run("dtac --rho 1 --r 1 --eval 2,0.3,-1,0.1 --T 1 --n 9 --n0 4").code, 3);
}

TEST(Cli, ReportFile) {
  const std::string rep = tmp("report.json");
  const CliRun r = run("--report " + rep + " validate --spec " + spec("mini.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(json::parse(slurp(rep))["command"], "validate");
  std::filesystem::remove(rep);
}

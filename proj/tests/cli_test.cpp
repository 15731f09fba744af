#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "superbracket/io.hpp"

using namespace superbracket;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = SUPERBRACKET_FIXTURE_DIR;
const std::string kCli = SUPERBRACKET_CLI;

struct Run {
  int code = -1;
  std::string out;
  Json report;
};

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

// Runs the CLI; stderr is merged into `out` when `merge_stderr` is set.
Run run(const std::vector<std::string>& args, bool merge_stderr = false, const std::string& env = "") {
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += quote(kCli);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (!merge_stderr && !r.out.empty() && r.out.front() == '{') r.report = Json::parse(r.out);
  return r;
}

std::string fixture(const std::string& name) { return (kFixtures / name).string(); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("superbracket_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  [[nodiscard]] std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const Json* find_check(const Json& report, const std::string& name) {
  for (const auto& c : report["checks"])
    if (c["name"] == name) return &c;
  return nullptr;
}

}  // namespace

TEST_F(CliTest, VerifyExitCodes) {
  const auto ok = run({"verify", fixture("ex1_1_n2.json"), "--kind", "lie"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.report["verdict"], "pass");
  EXPECT_TRUE(ok.report.contains("timing_ms"));

  const auto corrupted = run({"verify", fixture("corrupted.json"), "--kind", "lie"}, true);
  EXPECT_EQ(corrupted.code, 2);
  EXPECT_NE(corrupted.out.find("corrupted.json:7:"), std::string::npos) << corrupted.out;

  const auto bad = run({"verify", fixture("non_jacobi.json"), "--kind", "lie"});
  EXPECT_EQ(bad.code, 1);
  const Json* lie = find_check(bad.report, "lie_super");
  ASSERT_NE(lie, nullptr);
  EXPECT_EQ(lie->at("violations")[0]["condition"], "jacobi");
  EXPECT_EQ(lie->at("violations")[0]["indices"].size(), 3u);

  EXPECT_EQ(run({"verify", fixture("ex1_1_n2.json"), "--kind", "triple"}).code, 2);
  EXPECT_EQ(run({"verify", fixture("missing.json")}).code, 2);
  EXPECT_EQ(run({"verify", fixture("orthogonal3.json"), "--kind", "triple"}).code, 0);
  EXPECT_EQ(run({"verify", fixture("orthogonal3.json"), "--kind", "triple"}, false, "SUPERBRACKET_MAX_DIM=2").code, 2);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"verify", fixture("ex1_1_n2.json"), "--kind", "quaternion"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"ybe", "--family", "lie-triple"}).code, 2);
  EXPECT_EQ(run({"ybe", "--family", "lie-triple", "--base", "ex1_1:n=1", "--f", "x"}).code, 2);
  EXPECT_EQ(run({"ybe", "--family", "lie-triple", "--base", "ex1_9"}).code, 2);
  EXPECT_EQ(run({"ybe", "--family", "lie-triple", "--base", "ex1_1:q=1"}).code, 2);
}

TEST_F(CliTest, ExampleWritesReverifiableFiles) {
  const auto r = run({"example", "ex1_3", "--n", "2", "--m", "1", "--out", tmp("ex13.json")});
  EXPECT_EQ(r.code, 0);
  const Json* dim = find_check(r.report, "dimension");
  ASSERT_NE(dim, nullptr);
  // 2n + 2m + nm with n = 2, m = 1.
  EXPECT_EQ(dim->at("dimension"), 8);
  EXPECT_EQ(dim->at("expected"), 8);
  EXPECT_EQ(run({"verify", tmp("ex13.json")}).code, 0);

  EXPECT_EQ(run({"example", "ex1_1", "--n", "1", "--lambda", "0", "--out", tmp("ex11.json")}).code, 0);
  const auto written = algebra_from_json(read_json_file(tmp("ex11.json")));
  const auto worked = algebra_from_json(read_json_file(fixture("ex1_1_n1_lambda0.json")));
  EXPECT_EQ(written.algebra.entries(), worked.algebra.entries());
  EXPECT_EQ(written.algebra.basis(), worked.algebra.basis());
  EXPECT_EQ(written.form, worked.form);

  EXPECT_EQ(run({"example", "ex1_2", "--n", "3", "--out", tmp("bad.json")}).code, 2);
  EXPECT_FALSE(fs::exists(tmp("bad.json")));
  EXPECT_EQ(run({"example", "ex1_7"}).code, 2);
  EXPECT_EQ(run({"example", "ex1_1", "--lambda", "1/0"}).code, 2);
}

TEST_F(CliTest, FormsCasimirSeries) {
  auto forms = run({"forms", fixture("ex1_1_n1_lambda0.json")});
  EXPECT_EQ(forms.code, 0);
  EXPECT_GE(forms.report["data"]["dimension"].get<int>(), 2);
  forms = run({"forms", fixture("abelian2.json")});
  EXPECT_EQ(forms.report["data"]["dimension"], 3);
  forms = run({"forms", fixture("simple3.json")});
  EXPECT_EQ(forms.report["data"]["dimension"], 1);
  EXPECT_EQ(forms.report["data"]["unique_up_to_scale"], true);

  ASSERT_EQ(run({"example", "ex1_1", "--n", "1", "--lambda", "2", "--out", tmp("l2.json")}).code, 0);
  const auto cas = run({"casimir", tmp("l2.json")});
  EXPECT_EQ(cas.code, 0);
  // Rows and columns e, f, x1, y1.
  EXPECT_EQ(cas.report["data"]["g_upper"], Json::parse(R"([["2","1","0","0"],["1","0","0","0"],
                                                             ["0","0","0","-1"],["0","0","-1","0"]])"));
  EXPECT_EQ(run({"casimir", fixture("simple3.json")}).code, 2);

  ASSERT_EQ(run({"example", "ex1_4", "--n", "1", "--m", "2", "--out", tmp("ex14.json")}).code, 0);
  const auto series = run({"series", tmp("ex14.json")});
  EXPECT_EQ(series.report["data"]["nilpotent"], true);
  EXPECT_EQ(series.report["data"]["nilpotency_length"], 3);
  const auto s11 = run({"series", fixture("ex1_1_n2.json")});
  EXPECT_EQ(s11.report["data"]["nilpotent"], false);
  EXPECT_EQ(s11.report["data"]["derived_identity"], true);
}

TEST_F(CliTest, TripleAndEmbedRoundTrips) {
  ASSERT_EQ(run({"triple-from-lie", fixture("ex1_1_n1_lambda0.json"), "--out", tmp("t.json")}).code, 0);
  EXPECT_EQ(run({"verify", tmp("t.json"), "--kind", "triple"}).code, 0);
  EXPECT_EQ(run({"triple-from-lie", fixture("simple3.json")}).code, 2);

  const auto e = run({"embed", tmp("t.json"), "--l0", tmp("l0.json"), "--m", tmp("m.json")});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(run({"verify", tmp("l0.json")}).code, 0);
  EXPECT_EQ(run({"verify", tmp("m.json")}).code, 0);
  EXPECT_EQ(run({"casimir", tmp("l0.json")}).code, 0);

  const auto orth = run({"embed", fixture("orthogonal3.json")});
  EXPECT_EQ(orth.code, 0);
  EXPECT_EQ(orth.report["data"]["l0_dimension"], 6);

  const auto zero = run({"embed", fixture("zero3.json"), "--l0", tmp("z.json")});
  EXPECT_EQ(zero.code, 0);
  EXPECT_EQ(zero.report["data"]["m_dimension"], 0);
  EXPECT_EQ(algebra_from_json(read_json_file(tmp("z.json"))).algebra.entries().size(), 0u);

  const auto refused = run({"embed", fixture("symplectic2.json")}, true);
  EXPECT_EQ(refused.code, 2);
  EXPECT_NE(refused.out.find("does not work for delta = -1"), std::string::npos);
}

TEST_F(CliTest, FkAndJordanLie) {
  const auto p = run({"fk", "--construction", "projector", "--base", "identity:n=3", "--out", tmp("jp.json")});
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(run({"verify", tmp("jp.json"), "--kind", "jordan"}).code, 0);
  EXPECT_EQ(run({"verify", tmp("jp.json"), "--kind", "fk"}).code, 0);
  const auto jl = run({"jordan-lie", tmp("jp.json"), "--out", tmp("jl.json"), "--triple-out", tmp("jt.json")});
  EXPECT_EQ(jl.code, 0);
  EXPECT_EQ(jl.report["data"]["m_dimension"], 9);
  EXPECT_EQ(run({"verify", tmp("jl.json")}).code, 0);
  EXPECT_EQ(run({"verify", tmp("jt.json"), "--kind", "triple"}).code, 0);

  const auto nil = run({"fk", "--construction", "nilpotent", "--base", "ex1_4:n=1,m=2", "--c1", "2", "--c2", "3",
                        "--out", tmp("nil.json")});
  EXPECT_EQ(nil.code, 0);
  EXPECT_EQ(run({"verify", tmp("nil.json"), "--kind", "fk"}).code, 0);
  // c1 != c2 breaks the outer symmetry.
  EXPECT_EQ(run({"verify", tmp("nil.json"), "--kind", "jordan"}).code, 1);

  const auto rank_one = run({"fk", "--construction", "rank-one", "--base", "identity:n=2", "--p-diagonal", "1,2"});
  EXPECT_EQ(rank_one.code, 0);
  EXPECT_EQ(find_check(rank_one.report, "fk_condition")->at("verdict"), "pass");
  EXPECT_EQ(run({"fk", "--construction", "nilpotent", "--base", "ex1_1:n=1"}).code, 2);
  EXPECT_EQ(run({"fk", "--construction", "projector", "--base", "identity:n=2", "--p-diagonal", "1"}).code, 2);
}

TEST_F(CliTest, YbeFamilies) {
  const auto pass = run({"ybe", "--family", "lie-triple", "--base", "ex1_1:n=1", "--f", "0,1", "--g", "1",
                         "--check", "ybe"});
  EXPECT_EQ(pass.code, 0);
  EXPECT_EQ(find_check(pass.report, "ybe")->at("points_checked"), 16);

  const auto fail = run({"ybe", "--family", "lie-triple", "--base", "simple3"});
  EXPECT_EQ(fail.code, 1);
  const Json* ybe = find_check(fail.report, "ybe");
  ASSERT_NE(ybe, nullptr);
  EXPECT_EQ(ybe->at("verdict"), "fail");
  EXPECT_EQ(ybe->at("failure")["point"].size(), 3u);
  EXPECT_EQ(run({"ybe", "--family", "lie-triple", "--base", "simple3", "--check", "commute"}).code, 1);

  const auto commuting = run({"ybe", "--family", "commuting", "--diagonal", "1,2", "--diagonal", "0,1",
                              "--coefficient", "0,1", "--coefficient", "1", "--coefficient", "2", "--coefficient",
                              "1,1", "--export", tmp("r.json"), "--theta", "1/2"});
  EXPECT_EQ(commuting.code, 0);
  const Json exported = read_json_file(tmp("r.json"));
  EXPECT_EQ(exported["evaluated"]["theta"], "1/2");
  EXPECT_EQ(run({"verify", tmp("r.json"), "--kind", "r-matrix"}).code, 0);
  EXPECT_EQ(run({"ybe", "--family", "commuting", "--diagonal", "1,2", "--coefficient", "1", "--coefficient", "1"})
                .code,
            2);

  const auto deep = run({"ybe", "--family", "deep-nilpotent", "--base", "ex1_3:n=1,m=1", "--f1", "1,1", "--f2", "0,2",
                         "--check", "triple-form"});
  EXPECT_EQ(deep.code, 0);
  EXPECT_EQ(find_check(deep.report, "ybe_triple_form")->at("lhs_identically_zero"), true);

  const auto nil = run({"ybe", "--family", "nilpotent", "--base", "ex1_3:n=1,m=1", "--f1", "1,1", "--f2", "2",
                        "--g", "0,0,1", "--grid-degree", "3"});
  EXPECT_EQ(nil.code, 0);
  EXPECT_EQ(find_check(nil.report, "ybe")->at("grid_max"), 9);

  const auto scalar = run({"ybe", "--family", "scalar", "--base", "ex1_1:n=1", "--g", "1,1", "--export",
                           tmp("s.json"), "--check", "classical"});
  EXPECT_EQ(scalar.code, 0);
  EXPECT_EQ(run({"verify", tmp("s.json"), "--kind", "r-matrix"}).code, 0);
  EXPECT_EQ(run({"ybe", "--family", "commuting", "--diagonal", "1", "--coefficient", "1", "--check", "triple-form"})
                .code,
            2);
}

TEST_F(CliTest, StableReportsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands{
      {"verify", fixture("ex1_1_n2.json"), "--kind", "lie", "--stable"},
      {"forms", fixture("ex1_1_n1_lambda0.json"), "--stable"},
      {"ybe", "--family", "lie-triple", "--base", "simple3", "--stable"},
      {"embed", fixture("orthogonal3.json"), "--stable", "--human"}};
  for (const auto& c : commands) {
    const auto a = run(c);
    const auto b = run(c);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.find("timing_ms"), std::string::npos);
  }
  const auto human = run({"verify", fixture("ex1_1_n2.json"), "--human"});
  EXPECT_NE(human.out.find("verdict: pass"), std::string::npos);
  EXPECT_NE(human.out.find("timing_ms"), std::string::npos);
}

// Reports for the shipped fixtures. Setting SUPERBRACKET_UPDATE_EXPECTED
// rewrites the expected files instead of comparing.
TEST_F(CliTest, ExpectedReports) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"ex1_1_n1_lambda0.verify", {"verify", fixture("ex1_1_n1_lambda0.json")}},
      {"ex1_1_n2.verify", {"verify", fixture("ex1_1_n2.json")}},
      {"ex1_1_n2.casimir", {"casimir", fixture("ex1_1_n2.json")}},
      {"ex1_1_n2.series", {"series", fixture("ex1_1_n2.json")}},
      {"ex1_1_n1_lambda0.forms", {"forms", fixture("ex1_1_n1_lambda0.json")}},
      {"abelian2.forms", {"forms", fixture("abelian2.json")}},
      {"simple3.forms", {"forms", fixture("simple3.json")}},
      {"non_jacobi.verify", {"verify", fixture("non_jacobi.json")}},
      {"orthogonal3.verify", {"verify", fixture("orthogonal3.json"), "--kind", "triple"}},
      {"orthogonal3.embed", {"embed", fixture("orthogonal3.json")}},
      {"symplectic2.verify", {"verify", fixture("symplectic2.json"), "--kind", "triple"}},
      {"zero3.embed", {"embed", fixture("zero3.json")}},
      {"ex1_1_n1.ybe", {"ybe", "--family", "lie-triple", "--base", fixture("ex1_1_n1_lambda0.json"), "--f", "0,1"}},
      {"simple3.ybe", {"ybe", "--family", "lie-triple", "--base", "simple3"}},
  };
  const bool update = std::getenv("SUPERBRACKET_UPDATE_EXPECTED") != nullptr;
  for (const auto& [name, args] : cases) {
    auto full = args;
    full.push_back("--stable");
    const auto r = run(full);
    ASSERT_TRUE(r.code == 0 || r.code == 1) << name;
    // Fixture paths depend on the checkout location; reports name subjects, not paths.
    EXPECT_EQ(r.out.find(kFixtures.string()), std::string::npos) << name;
    const fs::path expected = kFixtures / "expected" / (name + ".json");
    if (update) {
      std::ofstream(expected, std::ios::binary) << r.out;
      continue;
    }
    std::ifstream in(expected, std::ios::binary);
    ASSERT_TRUE(in) << expected;
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(r.out, buf.str()) << name;
  }
}

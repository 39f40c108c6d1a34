#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "codedloops");
  std::ostringstream out, err;
  const int code = codedloops::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("codedloops_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  static std::string read(const std::string& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::filesystem::path dir_;
};

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_F(Cli, OctonionPipeline) {
  const auto cvs = run({"builtin", "hamming", "--as-cvs", "--out", path("oct.cvs")});
  ASSERT_EQ(cvs.code, 0);
  const auto b = run({"build", path("oct.cvs"), "--table", path("oct.csv")});
  ASSERT_EQ(b.code, 0);
  EXPECT_TRUE(has_line(b.out, "order=16"));
  const auto v = run({"verify-loop", path("oct.csv")});
  ASSERT_EQ(v.code, 0) << v.err;
  for (const char* line : {"moufang=true", "assoc=false", "class=2", "Z=2", "N=2", "Lstar=2", "frattini=2",
                           "extraspecial=true"}) {
    EXPECT_TRUE(has_line(v.out, line)) << line;
  }
  const auto vc = run({"verify-cvs", path("oct.cvs")});
  EXPECT_EQ(vc.code, 0);
  EXPECT_TRUE(has_line(vc.out, "axioms=pass"));
  EXPECT_TRUE(has_line(vc.out, "extraspecial=true"));
}

TEST_F(Cli, CyclicGroupReport) {
  const auto f = write("c4.csv", "n=4\n0,1,2,3\n1,2,3,0\n2,3,0,1\n3,0,1,2\n");
  const auto r = run({"verify-loop", f});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "class=1"));
  EXPECT_TRUE(has_line(r.out, "extraspecial=false"));
}

TEST_F(Cli, CorruptedTablesExitOne) {
  const auto f = write("l5.csv", "n=5\n0,1,2,3,4\n1,0,3,4,2\n2,4,0,1,3\n3,2,4,0,1\n4,3,1,2,0\n");
  const auto r = run({"verify-loop", f});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(has_line(r.out, "moufang=false"));
  EXPECT_NE(r.out.find("witness="), std::string::npos);
  const auto g = write("notloop.csv", "n=2\n0,1\n1,1\n");
  EXPECT_EQ(run({"verify-loop", g}).code, 1);
}

TEST_F(Cli, CodeConversions) {
  const auto oct = write("oct.cvs", "cvs\np 2\ndim 3\nsigma 1 1\nsigma 2 1\nsigma 3 1\nchi 1 2 1\nchi 1 3 1\nchi 2 3 1\n"
                                    "alpha 1 2 3 1\n");
  const auto c = run({"cvs2code", oct, "--out", path("c.code")});
  ASSERT_EQ(c.code, 0);
  EXPECT_TRUE(has_line(c.out, "length=67"));
  const auto back = run({"code2cvs", path("c.code")});
  ASSERT_EQ(back.code, 0);
  EXPECT_EQ(back.out, read(oct));
  const auto h = run({"builtin", "hamming", "--as-code"});
  EXPECT_EQ(h.out, "code\n1110100\n0111010\n0011101\n");
  const auto bad = write("bad.code", "code\n110000\n");
  EXPECT_EQ(run({"code2cvs", bad}).code, 1);
}

TEST_F(Cli, GolayBuiltin) {
  const auto g = run({"builtin", "golay"});
  ASSERT_EQ(g.code, 0);
  std::istringstream in(g.out);
  std::string header, row;
  std::getline(in, header);
  int rows = 0;
  while (std::getline(in, row)) {
    EXPECT_EQ(row.size(), 24u);
    ++rows;
  }
  EXPECT_EQ(rows, 12);
  write("golay.cvs", run({"builtin", "golay", "--as-cvs"}).out);
  const auto b = run({"build", path("golay.cvs")});
  EXPECT_EQ(b.code, 0);
  EXPECT_TRUE(has_line(b.out, "order=8192"));
  EXPECT_TRUE(has_line(b.out, "table=skipped"));
  EXPECT_EQ(run({"build", path("golay.cvs"), "--table", path("g.csv")}).code, 2);
}

TEST_F(Cli, Eval) {
  write("oct.cvs", run({"builtin", "hamming", "--as-cvs"}).out);
  EXPECT_EQ(run({"eval", path("oct.cvs"), "--expr", "[g1,g2,g3]"}).out, "z\n");
  EXPECT_EQ(run({"eval", path("oct.cvs"), "--expr", "g1^2"}).out, "z\n");
  const auto left = run({"eval", path("oct.cvs"), "--expr", "g1*g2*g3", "--assoc", "left"});
  EXPECT_EQ(left.out, "z g1(g2(g3))\n");
  const auto bad = run({"eval", path("oct.cvs"), "--expr", "g1*g2*g3"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("     ^"), std::string::npos);
  EXPECT_EQ(run({"eval", path("oct.cvs"), "--expr", "g7"}).code, 2);
  run({"build", path("oct.cvs"), "--table", path("oct.csv")});
  EXPECT_EQ(run({"eval", path("oct.csv"), "--expr", "((g1*g2)*g3)"}).out, "z g1(g2(g3))\n");
  EXPECT_EQ(run({"eval", path("oct.csv"), "--expr", "[g1,g2,g3]"}).out, "z\n");
}

TEST_F(Cli, IsotopeWithZeroKappaIsIdentity) {
  const auto f = write("c.cvs", "cvs\np 3\ndim 3\nchi 1 2 1\nalpha 1 2 3 2\n");
  const auto r = run({"isotope", f, "--kappa", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, read(f));
  const auto t = run({"isotope", f, "--kappa", "0,0,1"});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out, read(f));
  EXPECT_EQ(run({"isotope", f, "--kappa", "1,1"}).code, 2);
}

TEST_F(Cli, Classify) {
  const auto r = run({"classify", "--p", "3", "--dim", "3", "--exponent", "3", "--nonassociative"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "iso_classes=2"));
  EXPECT_TRUE(has_line(r.out, "isotopy_classes=1"));
  EXPECT_EQ(r.out, run({"classify", "--p", "3", "--dim", "3", "--exponent", "3", "--nonassociative"}).out);
}

TEST_F(Cli, VerifyModule) {
  const auto f = write("m.mod", "module\np 2\norders 8 2\nzorder 2\nzi 1 1\nchi 1 2 1\n");
  const auto r = run({"verify-module", f, "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(has_line(r.out, "axioms=pass"));
  EXPECT_TRUE(has_line(r.out, "extension.power=pass"));
  EXPECT_TRUE(has_line(r.out, "moufang=true"));
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"builtin", "foo"}).code, 2);
  EXPECT_EQ(run({"verify-cvs", path("missing.cvs")}).code, 2);
  const auto bad = write("bad.cvs", "cvs\np 2\ndim 2\nchi 1 5 1\n");
  const auto r = run({"verify-cvs", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 4"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, SeededReportsAreReproducible) {
  write("g.cvs", run({"builtin", "golay", "--as-cvs"}).out);
  const auto a = run({"verify-cvs", path("g.cvs"), "--seed", "7", "--tuple-limit", "500"});
  const auto b = run({"verify-cvs", path("g.cvs"), "--seed", "7", "--tuple-limit", "500"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(has_line(a.out, "axiom.alphamultilin.mode=sampled"));
}

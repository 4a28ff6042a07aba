#include <gtest/gtest.h>

#include <cstdlib>
#include <unistd.h>

#include "fppkit/cli/app.hpp"

using namespace fppkit;
using namespace fppkit::cli;

namespace {

const fs::path kDemo = FPPKIT_DEMO_DIR;

struct TempDir {
  fs::path path;
  TempDir() {
    static int n = 0;
    path = fs::temp_directory_path() / ("fppkit-cli-" + std::to_string(::getpid()) + "-" + std::to_string(n++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) { return mpoly::read_file(p.string()); }

int run(std::vector<std::string> args, std::string* text = nullptr) {
  std::ostringstream os;
  int st = run_command_line(args, os, os);
  if (text) *text = os.str();
  return st;
}

PipelineResult run_demo(const std::string& name, const fs::path& out, bool force = false) {
  RunOptions o{kDemo, out, force};
  return run_pipeline(load_manifest((kDemo / name).string()), o);
}

std::size_t error_line(const std::string& text) {
  try {
    parse_manifest(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Manifest, EmptyIsEmptyPipeline) {
  auto m = parse_manifest("# nothing here\n\n");
  EXPECT_TRUE(m.steps.empty());
  auto r = run_pipeline(m);
  EXPECT_EQ(r.status, kOk);
  EXPECT_TRUE(r.steps.empty());
  EXPECT_FALSE(r.failed_step);
}

TEST(Manifest, SingleStep) {
  auto m = parse_manifest("seed = 3\nprime = 7\n\nstep hilbert\ninput = a.ideal  # comment\nmod = 7\n");
  ASSERT_EQ(m.steps.size(), 1u);
  EXPECT_EQ(m.steps[0].command, "hilbert");
  EXPECT_EQ(m.steps[0].line, 4u);
  EXPECT_EQ(*m.steps[0].get("input"), "a.ideal");
  EXPECT_EQ(*m.seed, "3");
  EXPECT_EQ(*m.prime, "7");
  EXPECT_FALSE(m.digits);
}

TEST(Manifest, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("step ledger\n\nstep frobnicate\n"), 3u);
  EXPECT_EQ(error_line("step ledger\nreport = a.txt\nstep ledger\nreport = ./a.txt\n"), 4u);
  EXPECT_EQ(error_line("step char-table\nout = t.csv\nstep ledger\nreport = t.csv\n"), 4u);
  EXPECT_EQ(error_line("seed = abc\n"), 1u);
  EXPECT_EQ(error_line("prime = 1\n"), 1u);
  EXPECT_EQ(error_line("colour = red\n"), 1u);
  EXPECT_EQ(error_line("step hilbert\ninput =\n"), 2u);
  EXPECT_EQ(error_line("step hilbert\njust words\n"), 2u);
  EXPECT_EQ(error_line("step hilbert\nbudget = 4\n"), 2u);  // not a hilbert option
  EXPECT_EQ(error_line("step hilbert\nmod = 7\nmod = 11\n"), 3u);
  EXPECT_EQ(error_line("step\n"), 1u);
  EXPECT_EQ(error_line("step run\ninput = x\n"), 1u);  // no nested pipelines
}

TEST(Pipeline, DemoAcceptance) {
  TempDir t;
  auto r = run_demo("acceptance.manifest", t.path);
  ASSERT_EQ(r.status, kOk) << r.summary();
  ASSERT_EQ(r.steps.size(), 4u);
  EXPECT_EQ(r.steps[0].command, "char-table");
  EXPECT_EQ(r.steps[3].command, "recognize");
  auto ct = slurp(t.path / "out/char-table.txt");
  EXPECT_NE(ct.find("degrees: 1^9 2^9 3^3 8^9"), std::string::npos);
  EXPECT_NE(ct.find("reference: match"), std::string::npos);
  auto d = slurp(t.path / "out/decompose71.txt");
  EXPECT_NE(d.find("support (reference rows): 11 12 19 23 24 25 26 27 28 29 30"), std::string::npos);
  EXPECT_NE(d.find("Ghat72: regular"), std::string::npos);
  EXPECT_NE(slurp(t.path / "out/ledger.txt").find("32/24/24"), std::string::npos);
  EXPECT_NE(slurp(t.path / "out/recognize-w.txt").find("minpoly: 3*x^6 - 4*x^3 + 2"), std::string::npos);
  EXPECT_TRUE(fs::exists(t.path / "out/g648.csv"));
}

TEST(Pipeline, RerunsAreByteIdentical) {
  TempDir t;
  auto a = run_demo("kernels.manifest", t.path);
  ASSERT_EQ(a.status, kOk) << a.summary();
  std::map<std::string, std::string> first;
  for (const auto& s : a.steps) first[s.report_path] = slurp(s.report_path);
  auto b = run_demo("kernels.manifest", t.path, true);
  ASSERT_EQ(b.status, kOk);
  for (const auto& s : b.steps) EXPECT_EQ(slurp(s.report_path), first[s.report_path]) << s.report_path;
  EXPECT_NE(first.at((t.path / "out/lift-syzygy.txt").string()).find("H0 = 1/3*x0 + 2*x1"), std::string::npos);
}

TEST(Pipeline, RefusesToOverwrite) {
  TempDir t;
  fs::create_directories(t.path / "out");
  write_file((t.path / "out/ledger.txt").string(), "keep me\n");
  auto r = run_pipeline(parse_manifest("step split\ntotal = 7\nlefschetz = 7\nstep ledger\nreport = out/ledger.txt\n"),
                        RunOptions{kDemo, t.path, false});
  EXPECT_EQ(r.status, kError);
  EXPECT_EQ(*r.failed_step, 2u);
  EXPECT_TRUE(r.steps.empty());  // checked before anything runs
  EXPECT_EQ(slurp(t.path / "out/ledger.txt"), "keep me\n");
}

TEST(Pipeline, NegativeControlStopsAtFailingStep) {
  TempDir t;
  auto r = run_demo("negative.manifest", t.path);
  EXPECT_EQ(r.status, kFail);
  EXPECT_EQ(*r.failed_step, 2u);
  ASSERT_EQ(r.steps.size(), 2u);
  EXPECT_NE(r.steps[1].output.find("verdict: fail"), std::string::npos);
  EXPECT_FALSE(fs::exists(t.path / "out/neg-never.txt"));
  EXPECT_NE(r.summary().find("failure at step 2"), std::string::npos);
}

TEST(Pipeline, MissingInputFailsAtItsStep) {
  TempDir t;
  auto r = run_pipeline(parse_manifest("step ledger\nstep hilbert\ninput = data/nope.ideal\n"), RunOptions{kDemo, t.path, false});
  EXPECT_EQ(r.status, kError);
  EXPECT_EQ(*r.failed_step, 2u);
  EXPECT_NE(r.error.find("missing input"), std::string::npos);
}

TEST(Pipeline, GlobalSeedReachesSteps) {
  TempDir t;
  auto text = "seed = 9\nprime = 7\nstep verify-fpp\ninput = data/twisted_cubic.ideal\ndim = 1\nexpected = 1 3\nminors = 18\n";
  auto r = run_pipeline(parse_manifest(text), RunOptions{kDemo, t.path, false});
  ASSERT_EQ(r.steps.size(), 1u);
  EXPECT_EQ(r.status, kOk) << r.steps[0].output;
  EXPECT_NE(r.steps[0].output.find("seed: 9"), std::string::npos);
  EXPECT_NE(r.steps[0].output.find("probe 1: seed 9"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  auto conic = (kDemo / "data/conic_f5.ideal").string();
  auto nodal = (kDemo / "data/nodal_cubic.ideal").string();
  EXPECT_EQ(run({"verify-fpp", conic, "--mod", "5", "--dim", "1", "--expected", "1", "2"}), kOk);
  EXPECT_EQ(run({"verify-fpp", nodal, "--mod", "7", "--dim", "1", "--expected", "0", "3"}), kFail);
  EXPECT_EQ(run({"verify-fpp", nodal, "--mod", "7", "--dim", "1"}), kFail);  // not the FPP Hilbert polynomial
  EXPECT_EQ(run({"verify-fpp", nodal, "--mod", "7"}), kError);  // a plane curve has no codimension-0 minors
  EXPECT_EQ(run({"verify-fpp", nodal}), kError);               // --mod missing
  EXPECT_EQ(run({"split", "--total", "7", "--lefschetz", "100"}), kError);
  EXPECT_EQ(run({"char-table", "--group", "g648", "--dixon-prime", "13"}), kError);
  EXPECT_EQ(run({"nonsense"}), kError);
  std::string help;
  EXPECT_EQ(run({"--help"}, &help), kOk);
  EXPECT_NE(help.find("search-cuts"), std::string::npos);
}

TEST(Cli, SearchCutsReportsTangents) {
  std::string out;
  EXPECT_EQ(run({"search-cuts", (kDemo / "data/conic_f5.ideal").string(), "--mod", "5"}, &out), kOk);
  EXPECT_NE(out.find("examined: 31"), std::string::npos);
  EXPECT_NE(out.find("singular cuts: 6"), std::string::npos);
  EXPECT_EQ(run({"search-cuts", (kDemo / "data/conic_f5.ideal").string(), "--mod", "5", "--budget", "2"}, &out), kFail);
  EXPECT_NE(out.find("partial"), std::string::npos);
}

TEST(Cli, DigitsFromEnvironment) {
  const char* old = std::getenv("FPPKIT_DIGITS");
  std::string saved = old ? old : "";
  std::string out;
  ::setenv("FPPKIT_DIGITS", "30", 1);
  EXPECT_EQ(run({"recognize", "--float", "0.75", "--deg", "1"}, &out), kOk);
  EXPECT_NE(out.find("digits: 30"), std::string::npos);
  EXPECT_NE(out.find("minpoly: 4*x - 3"), std::string::npos);
  EXPECT_EQ(run({"recognize", "--float", "0.75", "--deg", "1", "--digits", "40"}, &out), kOk);
  EXPECT_NE(out.find("digits: 40"), std::string::npos);
  ::setenv("FPPKIT_DIGITS", "many", 1);
  EXPECT_EQ(run({"recognize", "--float", "0.75", "--deg", "1"}, &out), kError);
  if (old) ::setenv("FPPKIT_DIGITS", saved.c_str(), 1);
  else ::unsetenv("FPPKIT_DIGITS");
}

TEST(Cli, CharTableWritesReadableCsv) {
  TempDir t;
  auto csv = (t.path / "q8.csv").string();
  std::string out;
  EXPECT_EQ(run({"char-table", "--group", "q8", "--out", csv}, &out), kOk);
  EXPECT_NE(out.find("classes: 5"), std::string::npos);
  auto Q = named_group("q8");
  auto T = grouprep::load_table_csv(csv, Q);
  EXPECT_EQ(T.size(), 5u);
  EXPECT_TRUE(grouprep::check_orthogonality(T));
  // decompose71 refuses anything but G648
  EXPECT_EQ(run({"decompose71", "--table", csv}), kError);
}

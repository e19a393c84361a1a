#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "report.hpp"
#include "suites.hpp"

using namespace hklab::tools;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("hklab-") + info->test_suite_name() + "-" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

fs::path write_ini(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "run.ini";
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void expect_invalid(RunConfig c, const std::string& what) {
  EXPECT_THROW(validate(c), ConfigError) << what;
}

}  // namespace

TEST(Grid, ParsesListsAndLogRanges) {
  EXPECT_EQ(parse_grid("1, 2,4"), (std::vector<double>{1, 2, 4}));
  const auto g = parse_grid("log10:1:2:0.5");
  ASSERT_EQ(g.size(), 3u);
  EXPECT_DOUBLE_EQ(g[0], 10.0);
  EXPECT_NEAR(g[1], std::sqrt(1000.0), 1e-12);
  EXPECT_DOUBLE_EQ(g[2], 100.0);
  EXPECT_EQ(parse_grid("log10:1:4:0.5"), RunConfig{}.beta_t);
  EXPECT_THROW(parse_grid(""), ConfigError);
  EXPECT_THROW(parse_grid("1, x"), ConfigError);
  EXPECT_THROW(parse_grid("log10:1:4"), ConfigError);
  EXPECT_THROW(parse_grid("log10:4:1:0.5"), ConfigError);
}

TEST(Config, DefaultsAreValid) {
  const RunConfig c;
  EXPECT_NO_THROW(validate(c));
  EXPECT_EQ(c.samples, 1024u);
  EXPECT_EQ(c.hermite_size, 256);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(suite_names().size(), 7u);
}

TEST(Config, LoadsIniOnTopOfBase) {
  TempDir dir;
  const auto path = write_ini(dir.path(),
                              "[grid]\nhalf_width = 24\nsamples = 512\n"
                              "[hermite]\nsize = 64\n"
                              "[t_grid]\noperator = 1, 2\nbeta = log10:1:3:0.5\n"
                              "[tolerances]\nalpha = 1e-6\n"
                              "[output]\ndir = reports\n"
                              "[run]\nseed = 7\nparallel = 2\n");
  RunConfig base;
  base.s_grid = {0.0, 1.0};
  const RunConfig c = load_config(path, base);
  EXPECT_EQ(c.half_width, 24.0);
  EXPECT_EQ(c.samples, 512u);
  EXPECT_EQ(c.hermite_size, 64);
  EXPECT_EQ(c.operator_t, (std::vector<double>{1, 2}));
  EXPECT_EQ(c.beta_t.size(), 5u);
  EXPECT_EQ(c.tol.alpha, 1e-6);
  EXPECT_EQ(c.tol.kernel, 1e-8);
  EXPECT_EQ(c.out_dir, fs::path("reports"));
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.parallel, 2);
  EXPECT_EQ(c.s_grid, (std::vector<double>{0.0, 1.0}));
}

TEST(Config, RejectsUnknownAndMisplacedKeys) {
  TempDir dir;
  EXPECT_THROW(load_config(write_ini(dir.path(), "[grid]\nwidth = 3\n")), ConfigError);
  EXPECT_THROW(load_config(write_ini(dir.path(), "seed = 3\n")), ConfigError);
  EXPECT_THROW(load_config(write_ini(dir.path(), "[run]\nseed = many\n")), ConfigError);
  EXPECT_THROW(load_config(dir.path() / "missing.ini"), ConfigError);
}

TEST(Config, ValidationRules) {
  RunConfig c;
  c.samples = 1023;
  expect_invalid(c, "odd N");
  c = {};
  c.half_width = 0.0;
  expect_invalid(c, "L = 0");
  c = {};
  c.hermite_size = 300;
  expect_invalid(c, "M > N/4");
  c = {};
  c.hermite_size = 10;
  expect_invalid(c, "M too small");
  c = {};
  c.operator_t = {0.5, 1.0};
  expect_invalid(c, "t < 1");
  c = {};
  c.operator_t = {2.0, 1.0};
  expect_invalid(c, "decreasing t");
  c = {};
  c.defect_t = {1, 2, 4, 8};
  expect_invalid(c, "short defect grid");
  c = {};
  c.s_grid = {0.0, 1.5};
  expect_invalid(c, "s > 1");
  c = {};
  c.tol.gamma = 0.0;
  expect_invalid(c, "zero tolerance");
  c = {};
  c.parallel = 0;
  expect_invalid(c, "no workers");
  c = {};
  c.suites = {"nope"};
  expect_invalid(c, "unknown suite");
}

TEST(Report, CsvSchemaAndQuoting) {
  SuiteResult r{"demo"};
  r.below("c1", "a, b", "x=\"1\"", 1e-13, 1e-12);
  r.at_least("c2", "a", "p", 0.5, 0.9);
  r.measured("c3", "a", "p", 3.0);
  EXPECT_FALSE(r.passed());
  const std::string csv = checks_csv(r.checks);
  std::istringstream lines(csv);
  std::string header, row1, row2, row3;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  std::getline(lines, row3);
  EXPECT_EQ(header, "suite,check,paper_anchor,parameter,value,threshold,verdict");
  EXPECT_EQ(row1, "demo,c1,\"a, b\",\"x=\"\"1\"\"\",1e-13,<=1e-12,pass");
  EXPECT_EQ(row2, "demo,c2,a,p,0.5,>=0.9,fail");
  EXPECT_EQ(row3, "demo,c3,a,p,3,,report");
}

TEST(Report, SummaryEscapesPipes) {
  SuiteResult r{"demo"};
  r.below("c1", "||x|| <= 1", "p", 0.5, 1.0);
  const std::string md = summary_markdown({r});
  EXPECT_NE(md.find("\\|\\|x\\|\\| <= 1"), std::string::npos) << md;
}

TEST(RunSuite, InvalidConfigExitsWithTwo) {
  TempDir dir;
  RunConfig c;
  c.out_dir = dir.path();
  c.samples = 1001;
  EXPECT_EQ(run_suite("properness", c), 2);
  c = {};
  c.out_dir = dir.path();
  EXPECT_EQ(run_suite("nonsense", c), 2);
}

TEST(RunSuite, CheapSuitesAreDeterministic) {
  TempDir dir;
  RunConfig c;
  c.out_dir = dir.path() / "a";
  ASSERT_EQ(run_suite("properness", c), 0);
  ASSERT_EQ(run_suite("tensor", c), 0);
  c.out_dir = dir.path() / "b";
  ASSERT_EQ(run_suite("properness", c), 0);
  ASSERT_EQ(run_suite("tensor", c), 0);
  for (const char* name : {"properness.csv", "tensor.csv"}) {
    const std::string a = slurp(dir.path() / "a" / name);
    EXPECT_FALSE(a.empty()) << name;
    EXPECT_EQ(a, slurp(dir.path() / "b" / name)) << name;
    EXPECT_EQ(a.rfind("suite,check,paper_anchor,parameter,value,threshold,verdict\n", 0), 0u);
  }
  EXPECT_TRUE(fs::exists(dir.path() / "a" / "summary.md"));
}

TEST(RunSuite, SeedChangesTheSamples) {
  TempDir dir;
  RunConfig c;
  c.out_dir = dir.path() / "a";
  ASSERT_EQ(run_suite("tensor", c), 0);
  c.out_dir = dir.path() / "b";
  c.seed = 43;
  ASSERT_EQ(run_suite("tensor", c), 0);
  EXPECT_NE(slurp(dir.path() / "a" / "tensor.csv"), slurp(dir.path() / "b" / "tensor.csv"));
}

TEST(Config, ShippedDefaultMatchesBuiltIns) {
  const RunConfig d;
  const RunConfig c = load_config(fs::path(HKLAB_SOURCE_DIR) / "configs" / "default.ini");
  EXPECT_EQ(c.half_width, d.half_width);
  EXPECT_EQ(c.samples, d.samples);
  EXPECT_EQ(c.hermite_size, d.hermite_size);
  EXPECT_EQ(c.operator_t, d.operator_t);
  EXPECT_EQ(c.defect_t, d.defect_t);
  EXPECT_EQ(c.beta_t, d.beta_t);
  EXPECT_EQ(c.s_grid, d.s_grid);
  EXPECT_EQ(c.tol.alpha, d.tol.alpha);
  EXPECT_EQ(c.tol.beta_sigma, d.tol.beta_sigma);
  EXPECT_EQ(c.tol.reduced_norm, d.tol.reduced_norm);
  EXPECT_EQ(c.out_dir, d.out_dir);
  EXPECT_EQ(c.seed, d.seed);
  EXPECT_EQ(c.parallel, d.parallel);
}

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fplap/cli/config.hpp"
#include "fplap/cli/dispatch.hpp"

using namespace fplap;
namespace fs = std::filesystem;

namespace {

const char* kMinimalEval = R"(
[operator]
n = 1
s = 0.5
p = 2.0

[grid]
h = 0.25
origin = -1.0
counts = 9

[eval]
input = FIELD
)";

fs::path temp_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("fplap_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST(ParseConfig, MinimalEval) {
  std::string text = kMinimalEval;
  text.replace(text.find("FIELD"), 5, "u.csv");
  RunConfig cfg = parse_config(text);
  EXPECT_EQ(cfg.params.n, 1);
  EXPECT_DOUBLE_EQ(cfg.params.s, 0.5);
  EXPECT_TRUE(cfg.has_grid);
  EXPECT_EQ(cfg.grid.counts[0], 9);
  EXPECT_EQ(cfg.eval_input, "u.csv");
  EXPECT_FALSE(cfg.config_hash.empty());
}

TEST(ParseConfig, SemanticErrors) {
  try {
    parse_config("[operator]\nn = 1\ns = 1.5\np = 2.0\n");
    FAIL() << "expected a semantic error";
  } catch (const invalid_argument_error& e) {
    EXPECT_NE(std::string(e.what()).find("s must lie in (0,1)"), std::string::npos);
  }
  try {
    parse_config("[operator]\nn = 1\ns = 0.5\np = 1.5\n");
    FAIL() << "expected a semantic error";
  } catch (const invalid_argument_error& e) {
    EXPECT_NE(std::string(e.what()).find("p must be >= 2"), std::string::npos);
  }
}

TEST(ParseConfig, SyntaxErrorsCarryLineAndColumn) {
  try {
    parse_config("[operator]\nn = 1\nwhatever = 3\n");
    FAIL() << "expected a config error";
  } catch (const config_error& e) {
    EXPECT_EQ(e.line, 3);
    EXPECT_EQ(e.column, 1);
    EXPECT_NE(std::string(e.what()).find("whatever"), std::string::npos);
  }
  EXPECT_THROW(parse_config("[nope]\n"), config_error);
  EXPECT_THROW(parse_config("key = 1\n"), config_error);       // before any section
  EXPECT_THROW(parse_config("[grid]\nh 0.5\n"), config_error);  // missing '='
  try {
    parse_config("[verify]\nsuites = monotonicity, bogus_suite\n");
    FAIL() << "expected a config error";
  } catch (const config_error& e) {
    EXPECT_NE(std::string(e.what()).find("bogus_suite"), std::string::npos);
  }
}

TEST(Dispatch, EvalConstantFieldGivesZeros) {
  fs::path dir = temp_dir("eval");
  Grid g{.dim = 1, .origin = {-1.0, 0.0}, .h = 0.25, .counts = {9, 1}};
  Field u(g, ExteriorRule::constant(0.5), 0.5);
  write_field_csv((dir / "u.csv").string(), u);

  std::string text = kMinimalEval;
  text.replace(text.find("FIELD"), 5, (dir / "u.csv").string());
  RunConfig cfg = parse_config(text);
  cfg.command = RunConfig::Command::eval;
  cfg.out_dir = (dir / "out").string();
  EXPECT_EQ(dispatch(cfg), 0);

  Field lu = read_field_csv((dir / "out" / "field_eval.csv").string());
  for (std::size_t i = 0; i < lu.size(); ++i) EXPECT_EQ(lu[i], 0.0);
  EXPECT_TRUE(fs::exists(dir / "out" / "run_manifest.json"));
}

TEST(Dispatch, MissingInputIsAnError) {
  std::string text = kMinimalEval;
  text.replace(text.find("FIELD"), 5, "/does/not/exist.csv");
  RunConfig cfg = parse_config(text);
  cfg.command = RunConfig::Command::eval;
  EXPECT_THROW(dispatch(cfg), invalid_argument_error);
}

TEST(Dispatch, SolveNonConvergencePropagates) {
  fs::path dir = temp_dir("solve");
  std::string text = R"(
[operator]
n = 1
s = 0.5
p = 2.0

[grid]
h = 0.1
origin = 0.05
counts = 100

[domain]
kind = half_space
axis = 0
level = 0.0

[exterior]
kind = axis_step
axis = 0
threshold = 0.0
below = 0.0
above = 0.999

[nonlinearity]
name = allen_cahn

[solver]
tol = 1e-6
max_iters = 1
)";
  RunConfig cfg = parse_config(text);
  cfg.command = RunConfig::Command::solve;
  cfg.out_dir = (dir / "out").string();
  EXPECT_THROW(dispatch(cfg), non_convergence_error);
}

TEST(Dispatch, SolveWritesParsableArtifacts) {
  fs::path dir = temp_dir("solve_ok");
  std::string text = R"(
[operator]
n = 1
s = 0.5
p = 2.0

[grid]
h = 0.1
origin = 0.05
counts = 200

[domain]
kind = half_space
axis = 0
level = 0.0

[exterior]
kind = axis_step
axis = 0
threshold = 0.0
below = 0.0
above = 0.999999

[nonlinearity]
name = allen_cahn

[solver]
tol = 1e-6
max_iters = 100000
)";
  RunConfig cfg = parse_config(text);
  cfg.command = RunConfig::Command::solve;
  cfg.out_dir = (dir / "out").string();
  EXPECT_EQ(dispatch(cfg), 0);

  // Every artifact named in the report exists and the field parses back.
  json rep = json::parse(slurp(dir / "out" / "report.json"));
  for (const char* key : {"field", "residuals"}) {
    fs::path artifact = dir / "out" / rep[key].get<std::string>();
    EXPECT_TRUE(fs::exists(artifact)) << artifact;
  }
  Field u = read_field_csv((dir / "out" / rep["field"].get<std::string>()).string());
  EXPECT_EQ(u.size(), 200u);
  EXPECT_TRUE(rep["invariants"]["strictly_positive"].get<bool>());
  EXPECT_TRUE(rep["invariants"]["strictly_below_mu"].get<bool>());
  EXPECT_TRUE(rep["invariants"]["residual_tail_monotone"].get<bool>());
}

TEST(Dispatch, VerifyDeterministicReports) {
  fs::path dir = temp_dir("verify");
  std::string text = R"(
[verify]
suites = g_inequality
g_pairs = 2000

[run]
seed = 9
)";
  RunConfig cfg = parse_config(text);
  cfg.command = RunConfig::Command::verify;
  cfg.out_dir = (dir / "a").string();
  EXPECT_EQ(dispatch(cfg), 0);
  cfg.out_dir = (dir / "b").string();
  EXPECT_EQ(dispatch(cfg), 0);
  EXPECT_EQ(slurp(dir / "a" / "report.json"), slurp(dir / "b" / "report.json"));
  EXPECT_NE(slurp(dir / "a" / "report.json").find(cfg.config_hash), std::string::npos);
}

TEST(CliBinary, EndToEnd) {
  fs::path dir = temp_dir("cli");
  {
    std::ofstream os(dir / "verify.cfg");
    os << "[verify]\nsuites = g_inequality\ng_pairs = 2000\n";
  }
  std::string cmd = std::string(FPLAP_CLI_PATH) + " verify --config " +
                    (dir / "verify.cfg").string() + " --out " + (dir / "out").string() +
                    " --seed 4 > /dev/null 2>&1";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "report.json"));

  // Default verify: an empty config runs the stock Allen-Cahn half-line
  // instance with every 1D suite; all of them must pass (exit 0).
  {
    std::ofstream os(dir / "default.cfg");
    os << "# default verification run\n";
  }
  std::string full = std::string(FPLAP_CLI_PATH) + " verify --config " +
                     (dir / "default.cfg").string() + " --out " + (dir / "full").string() +
                     " > /dev/null 2>&1";
  EXPECT_EQ(std::system(full.c_str()), 0);
  EXPECT_TRUE(fs::exists(dir / "full" / "report.json"));

  // Unknown suite: config error, exit code 2.
  {
    std::ofstream os(dir / "bad.cfg");
    os << "[verify]\nsuites = nope\n";
  }
  std::string bad = std::string(FPLAP_CLI_PATH) + " verify --config " + (dir / "bad.cfg").string() +
                    " --out " + (dir / "out2").string() + " > /dev/null 2>&1";
  int rc = std::system(bad.c_str());
  EXPECT_EQ(WEXITSTATUS(rc), 2);
  EXPECT_TRUE(fs::exists(dir / "out2" / "diagnostic.json"));
}

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fuzzcalc/alpha_csv.hpp"
#include "fuzzcalc/error.hpp"
#include "fuzzcalc/parser.hpp"

namespace {

namespace fs = std::filesystem;
using fuzzcalc::cli::kDomainError;
using fuzzcalc::cli::kOk;
using fuzzcalc::cli::kUsageError;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "fuzzcalc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = fuzzcalc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string without_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line, r;
  while (std::getline(in, line)) {
    if (!line.starts_with("#")) r += line + "\n";
  }
  return r;
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("fuzzcalc_cli_test_" + name); }

const std::string kProblem = std::string(FUZZCALC_DATA_DIR) + "/fully_fuzzy_ivp.txt";

TEST(Cli, WorkedIvpFromProblemFile) {
  const auto r = run({"solve-ivp", "--file", kProblem});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "triplet (2 d.p.): (2.49, 3.08, 3.71)")) << r.out;
  EXPECT_TRUE(contains(r.out, "alpha,lower,upper\n0,2.496851"));
  EXPECT_TRUE(contains(r.out, "\n1,3.08366")) << r.out;
  EXPECT_EQ(r.err, "");
}

TEST(Cli, InlineIvpMatchesFile) {
  const auto inline_run = run({"solve-ivp", "--rhs", "x^2 + y^2", "--x0", "T(0.7,1,1.2)", "--y0", "T(2.1,2.3,2.5)",
                               "--h", "T(0.07,0.1,0.12)"});
  ASSERT_EQ(inline_run.code, kOk) << inline_run.err;
  const auto file_run = run({"solve-ivp", "--file", kProblem});
  EXPECT_EQ(without_comments(inline_run.out), without_comments(file_run.out));
  // Inline flags override file values.
  const auto two = run({"solve-ivp", "--file", kProblem, "--steps", "2"});
  ASSERT_EQ(two.code, kOk);
  EXPECT_TRUE(contains(two.out, "step 2:"));
}

TEST(Cli, ProblemFileErrors) {
  const auto path = temp_file("bad_problem.txt");
  {
    std::ofstream f(path);
    f << "command = solve-ivp\nrhs = y\nx0 = 0\ny0 = 1\nh = 0.1\nfrobnicate = 3\n";
  }
  EXPECT_EQ(run({"solve-ivp", "--file", path.string()}).code, kUsageError);
  {
    std::ofstream f(path);
    f << "command = eval\n";
  }
  EXPECT_EQ(run({"solve-ivp", "--file", path.string()}).code, kUsageError);
  {
    std::ofstream f(path);
    f << "# crisp exponential\nrhs = y\nx0 = 0\ny0 = 1\nh = 0.1\norder = 4\nsteps = 10\n";
  }
  const auto ok = run({"solve-ivp", "--file", path.string()});
  EXPECT_EQ(ok.code, kOk) << ok.err;
  EXPECT_TRUE(contains(ok.out, "(2.71"));
  fs::remove(path);
  EXPECT_EQ(run({"solve-ivp", "--file", path.string()}).code, kDomainError);
  EXPECT_EQ(run({"solve-ivp", "--rhs", "y", "--x0", "0", "--y0", "1"}).code, kUsageError);
  EXPECT_EQ(run({"solve-ivp", "--file", kProblem, "--order", "5"}).code, kDomainError);
}

TEST(Cli, DeriveSquare) {
  const auto r = run({"derive", "--expr", "x^2", "--bind", "x=T(1,2,3)"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "symbolic derivative: (2 * x)"));
  EXPECT_TRUE(contains(r.out, "triplet (2 d.p.): (2.00, 4.00, 6.00)"));
  const auto nd = run({"derive", "--expr", "x^2", "--bind", "x=T(-1,0,1)"});
  EXPECT_EQ(nd.code, kDomainError);
  EXPECT_TRUE(contains(nd.err, "NotDifferentiable"));
  EXPECT_EQ(run({"derive", "--expr", "x^2"}).code, kUsageError);
}

TEST(Cli, EvalTable) {
  const auto r = run({"eval", "--expr", "x^2", "--bind", "x=T(1,2,3)", "--alphas", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "alpha,lower,upper\n0,1,9\n0.5,2.25,6.25\n1,4,4\n"));
  const auto lit = run({"eval", "--expr", "T(2.1,2.3,2.5)", "--alphas", "3"});
  EXPECT_TRUE(contains(lit.out, "\n0.5,2.2,2.4\n")) << lit.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, kUsageError);
  EXPECT_EQ(run({"bogus"}).code, kUsageError);
  EXPECT_EQ(run({"--help"}).code, kOk);
  EXPECT_EQ(run({"eval"}).code, kUsageError);
  EXPECT_EQ(run({"eval", "--expr", "x +"}).code, kUsageError);
  EXPECT_EQ(run({"eval", "--expr", "log(x)"}).code, kUsageError);
  EXPECT_EQ(run({"eval", "--expr", "x"}).code, kDomainError);
  EXPECT_EQ(run({"eval", "--expr", "x", "--bind", "x"}).code, kUsageError);
  EXPECT_EQ(run({"eval", "--expr", "x", "--bind", "x=T(3,2,1)"}).code, kDomainError);
  const auto div = run({"eval", "--expr", "1/x", "--bind", "x=T(-1,0,1)"});
  EXPECT_EQ(div.code, kDomainError);
  EXPECT_TRUE(contains(div.err, "DivisorStraddlesZero"));
}

TEST(Cli, SeriesRuleAndTaylor) {
  const auto r = run({"series", "--coeff-rule", "n/T(4,5,6)^(n-1)", "--center", "T(-3,-2,-1)"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "triplet: (4, 5, 6)"));
  EXPECT_TRUE(contains(r.out, "triplet: (-9, -7, -5)"));
  const auto fq = run({"series", "--coeff-rule", "n/T(4,5,6)^(n-1)", "--radius-mode", "four-quotient"});
  EXPECT_EQ(fq.code, kDomainError);
  EXPECT_TRUE(contains(fq.err, "NoLimit"));
  const auto t = run({"series", "--taylor-of", "exp(x)", "--center", "T(-1,0,1)", "--order", "17"});
  ASSERT_EQ(t.code, kOk) << t.err;
  EXPECT_TRUE(contains(t.out, "a_2: (0.18393972058572117, 0.5, 1.3591409142295225)"));
  EXPECT_EQ(run({"series", "--taylor-of", "exp(x)"}).code, kUsageError);
  EXPECT_EQ(run({"series", "--taylor-of", "exp(x)", "--coeff-rule", "n", "--center", "0"}).code, kUsageError);
  const auto ps = run({"series", "--taylor-of", "exp(x)", "--center", "0", "--order", "14", "--at", "0.5",
                        "--terms", "15"});
  ASSERT_EQ(ps.code, kOk) << ps.err;
  EXPECT_TRUE(contains(ps.out, "1.6487212")) << ps.out;
  EXPECT_EQ(run({"series", "--taylor-of", "exp(x)", "--center", "0", "--at", "0.5", "--terms", "15"}).code,
            kDomainError);
}

TEST(Cli, OutFileRoundTripsAndIsDeterministic) {
  const auto a = temp_file("a.csv");
  const auto b = temp_file("b.csv");
  ASSERT_EQ(run({"solve-ivp", "--file", kProblem, "--out", a.string()}).code, kOk);
  ASSERT_EQ(run({"solve-ivp", "--file", kProblem, "--out", b.string()}).code, kOk);
  const std::string ta = slurp(a);
  EXPECT_EQ(without_comments(ta), without_comments(slurp(b)));
  EXPECT_TRUE(ta.starts_with("# "));
  const auto y = fuzzcalc::read_alpha_csv(a.string());
  EXPECT_EQ(y.size(), 101u);
  EXPECT_NEAR(y.lower()[0], 2.496851, 1e-12);
  fs::remove(a);
  fs::remove(b);
  EXPECT_EQ(run({"eval", "--expr", "1", "--out", (temp_file("missing") / "x.csv").string()}).code, kDomainError);
}

TEST(Cli, RandomExpressionsNeverCrash) {
  std::mt19937_64 rng(2024);
  const std::string alphabet = "xy0123456789.+-*/^() T,esincoxpfat\t$#";
  std::uniform_int_distribution<int> len(0, 24), byte(1, 255), pick(0, int(alphabet.size()) - 1), coin(0, 1);
  for (int i = 0; i < 600; ++i) {
    std::string expr;
    const int n = len(rng);
    const bool raw = coin(rng);
    for (int k = 0; k < n; ++k) expr += raw ? char(byte(rng)) : alphabet[pick(rng)];
    const auto r = run({"eval", "--expr", expr, "--bind", "x=T(1,2,3)", "--bind", "y=T(-1,0,1)", "--alphas", "5"});
    ASSERT_TRUE(r.code == kOk || r.code == kDomainError || r.code == kUsageError) << expr;
    bool parses = true;
    try {
      fuzzcalc::parse_expr(expr, fuzzcalc::AlphaGrid::uniform(5));
    } catch (const fuzzcalc::SyntaxError&) {
      parses = false;
    } catch (const fuzzcalc::Error& e) {
      parses = e.kind() != fuzzcalc::ErrorKind::UnknownFunction;
    }
    if (!parses) {
      EXPECT_EQ(r.code, kUsageError) << expr;
    }
    if (r.code == kOk) {
      EXPECT_EQ(r.err, "");
    } else {
      EXPECT_FALSE(r.err.empty());
    }
  }
}

}  // namespace

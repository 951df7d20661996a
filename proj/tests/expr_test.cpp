#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "fuzzcalc/error.hpp"
#include "fuzzcalc/eval.hpp"
#include "fuzzcalc/parser.hpp"
#include "test_support.hpp"

namespace fuzzcalc {
namespace {

using testing::expect_envelopes;

Expr P(const char* text) { return parse_expr(text); }

TEST(Parser, PrecedenceAndAssociativity) {
  EXPECT_EQ(P("1 + 2 * x"), Expr::binary(NodeKind::Add, Expr::crisp(1), Expr::binary(NodeKind::Mul, Expr::crisp(2), Expr::var("x"))));
  // '-' is left associative: (a - b) - c.
  EXPECT_EQ(P("a - b - c"),
            Expr::binary(NodeKind::GhSub, Expr::binary(NodeKind::GhSub, Expr::var("a"), Expr::var("b")), Expr::var("c")));
  // '^' binds tighter than unary minus.
  EXPECT_EQ(P("-x^2"), Expr::unary(NodeKind::Neg, Expr::pow_int(Expr::var("x"), 2)));
  EXPECT_EQ(P("(x + 1)^3"), Expr::pow_int(Expr::binary(NodeKind::Add, Expr::var("x"), Expr::crisp(1)), 3));
}

TEST(Parser, BinaryMinusIsGhDifference) {
  EXPECT_EQ(P("x - y").kind(), NodeKind::GhSub);
}

TEST(Parser, TriangularLiteral) {
  const Expr e = P("T(1, 2.5, 3e0)");
  ASSERT_EQ(e.kind(), NodeKind::FuzzyConst);
  EXPECT_EQ(*e.fuzzy_label(), (TriangularSpec{1, 2.5, 3}));
  EXPECT_EQ(hausdorff_distance(e.fuzzy_value(), make_triangular({1, 2.5, 3})), 0.0);
  EXPECT_EQ(P("T(-3,-2,-1)").fuzzy_label()->d, -3.0);
}

TEST(Parser, FunctionsAndNumbers) {
  EXPECT_EQ(P("exp(sin(cos(x)))").kind(), NodeKind::Exp);
  EXPECT_EQ(P(".5").crisp_value(), 0.5);
  EXPECT_EQ(P("1.5e-3").crisp_value(), 1.5e-3);
}

TEST(Parser, Errors) {
  try {
    P("x + * 2");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(P(""), SyntaxError);
  EXPECT_THROW(P("(x"), SyntaxError);
  EXPECT_THROW(P("x)"), SyntaxError);
  EXPECT_THROW(P("x^y"), SyntaxError);
  EXPECT_THROW(P("x^2^3"), SyntaxError);
  EXPECT_THROW(P("x^-1"), SyntaxError);
  EXPECT_THROW(P("T(1,2)"), SyntaxError);
  EXPECT_THROW(P("2 $ 3"), SyntaxError);
  try {
    P("log(x)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownFunction);
  }
  try {
    P("T(3,2,1)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedTriplet);
  }
}

TEST(Parser, FactOnlyInRules) {
  try {
    P("fact(3)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownFunction);
  }
  EXPECT_EQ(parse_coefficient_rule("1/fact(n)").child(1).kind(), NodeKind::Factorial);
  EXPECT_EQ(parse_coefficient_rule("n/T(4,5,6)^(n-1)").child(1).kind(), NodeKind::PowExpr);
  EXPECT_EQ(parse_coefficient_rule("0.5^n").kind(), NodeKind::PowExpr);
}

TEST(Parser, DeepNestingIsRejectedNotACrash) {
  EXPECT_THROW(P(std::string(100000, '(').c_str()), SyntaxError);
  EXPECT_THROW(P((std::string(100000, '-') + "x").c_str()), SyntaxError);
}

TEST(Parser, LiteralParsing) {
  EXPECT_EQ(hausdorff_distance(parse_fuzzy_literal(" T(1,2,3) "), make_triangular({1, 2, 3})), 0.0);
  EXPECT_EQ(hausdorff_distance(parse_fuzzy_literal("-2.5"), singleton(-2.5)), 0.0);
  EXPECT_THROW(parse_fuzzy_literal("x"), SyntaxError);
  EXPECT_THROW(parse_fuzzy_literal("1 + 2"), SyntaxError);
}

TEST(ToString, RoundTrips) {
  for (const char* text : {"x^2 + y^2", "-x^3 - T(1,2,3) * (x + 1)^2", "exp(sin(x)) / cos(2 * x)", "-(x - 1)",
                           "(-2)^3 * x"}) {
    const Expr e = P(text);
    EXPECT_EQ(P(e.to_string().c_str()), e) << text << " -> " << e.to_string();
  }
  const Expr r = parse_coefficient_rule("n / T(4,5,6)^(n - 1)");
  EXPECT_EQ(parse_coefficient_rule(r.to_string()), r) << r.to_string();
}

TEST(Differentiate, PowerRule) {
  EXPECT_EQ(differentiate(P("x^2"), "x"), P("2 * x"));
  EXPECT_EQ(differentiate(P("3 * x^3"), "x"), P("9 * x^2"));
  EXPECT_EQ(differentiate(P("x"), "x"), Expr::crisp(1));
  EXPECT_EQ(differentiate(P("T(1,2,3)"), "x"), Expr::crisp(0));
  EXPECT_EQ(differentiate(P("y^2"), "x"), Expr::crisp(0));
}

TEST(Differentiate, TotalDerivativeShape) {
  EXPECT_EQ(differentiate(P("x^2 + y^2"), "y"), P("2 * y"));
}

TEST(Differentiate, ChainRules) {
  EXPECT_EQ(differentiate(P("exp(x)"), "x"), P("exp(x)"));
  EXPECT_EQ(differentiate(P("sin(x)"), "x"), P("cos(x)"));
  EXPECT_EQ(differentiate(P("cos(x)"), "x"), P("-sin(x)"));
  EXPECT_EQ(differentiate(P("sin(2 * x)"), "x").to_string(), "(2 * cos(2 * x))");
}

// Crisp oracle: at singleton inputs the derivative tree evaluates to the
// central finite difference of f.
TEST(Differentiate, MatchesFiniteDifferencesOnCrispPoints) {
  const char* fs[] = {"x^3 - 2 * x", "exp(sin(x)) * x", "x / (1 + x^2)", "cos(x)^2 + sin(x)^2", "-x^4 / 3"};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (const char* text : fs) {
    const Expr f = P(text);
    const Expr df = differentiate(f, "x");
    for (int k = 0; k < 5; ++k) {
      const double x = u(rng);
      const double h = 1e-5;
      auto at = [&](const Expr& e, double v) {
        Env env;
        env.bind("x", singleton(v));
        return eval(e, env).lower()[0];
      };
      // gH '-' of singletons is ordinary subtraction, so crisp values agree.
      const double fd = (at(f, x + h) - at(f, x - h)) / (2 * h);
      EXPECT_NEAR(at(df, x), fd, 1e-6 * (1 + std::abs(fd))) << text << " at " << x;
    }
  }
}

TEST(Eval, ArithmeticAndBindings) {
  Env env;
  env.bind("x", make_triangular({1, 2, 3}));
  expect_envelopes(eval(P("T(1,2,3) + T(1,2,3)"), env), [](double t) { return 2 + 2 * t; },
                   [](double t) { return 6 - 2 * t; }, 1e-15);
  expect_envelopes(eval(P("2 * x"), env), [](double t) { return 2 + 2 * t; }, [](double t) { return 6 - 2 * t; }, 1e-15);
  expect_envelopes(eval(P("-x"), env), [](double t) { return -3 + t; }, [](double t) { return -1 - t; }, 1e-15);
  expect_envelopes(eval(P("x - x"), env), [](double) { return 0.0; }, [](double) { return 0.0; }, 0.0);
}

TEST(Eval, Errors) {
  Env env;
  try {
    eval(P("x + 1"), env);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnboundVariable);
  }
  EXPECT_THROW(env.bind("x", singleton(1, AlphaGrid::uniform(3))), Error);
  env.bind("x", make_triangular({-1, 0, 1}));
  try {
    eval(P("1 / x"), env);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisorStraddlesZero);
  }
  Env coarse(AlphaGrid::uniform(3));
  try {
    eval(P("T(1,2,3)"), coarse);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GridMismatch);
  }
  EXPECT_NO_THROW(eval(parse_expr("T(1,2,3)", AlphaGrid::uniform(3)), coarse));
}

TEST(Eval, ExpIsMonotone) {
  Env env;
  env.bind("x", make_triangular({-1, 0, 1}));
  expect_envelopes(eval(P("exp(x)"), env), [](double t) { return std::exp(t - 1); },
                   [](double t) { return std::exp(1 - t); }, 1e-15);
}

TEST(Eval, SinRangeIncludesInteriorExtrema) {
  // Endpoint evaluation would give [sin 1, sin 2] at alpha 0 and miss the peak at pi/2.
  Env env;
  env.bind("x", make_triangular({1, 1.2, 2}));
  const auto r = eval(P("sin(x)"), env);
  EXPECT_EQ(r.upper()[0], 1.0);
  EXPECT_DOUBLE_EQ(r.lower()[0], std::sin(1.0));
  const auto c = eval(P("cos(x)"), env);
  EXPECT_DOUBLE_EQ(c.upper()[0], std::cos(1.0));
}

TEST(Eval, RangeOracleForSinCos) {
  // Dense sampling oracle for the exact range over random intervals.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lo(-10, 10), w(0, 7);
  for (int k = 0; k < 500; ++k) {
    const double a = lo(rng);
    const Interval x{a, a + w(rng)};
    for (auto [range, f] : {std::pair{&sin_range, static_cast<double (*)(double)>(std::sin)},
                            std::pair{&cos_range, static_cast<double (*)(double)>(std::cos)}}) {
      const Interval r = range(x);
      double smin = INFINITY, smax = -INFINITY;
      for (int j = 0; j <= 4000; ++j) {
        const double v = f(x.lo + (x.hi - x.lo) * j / 4000.0);
        smin = std::min(smin, v);
        smax = std::max(smax, v);
      }
      EXPECT_LE(r.lo, smin + 1e-15);
      EXPECT_GE(r.hi, smax - 1e-15);
      EXPECT_NEAR(r.lo, smin, 2e-6);
      EXPECT_NEAR(r.hi, smax, 2e-6);
    }
  }
}

TEST(Eval, CoefficientRule) {
  const Expr rule = parse_coefficient_rule("n / T(4,5,6)^(n-1)");
  Env env;
  env.bind("n", singleton(3));
  // 3 / [4+a, 6-a]^2
  expect_envelopes(eval(rule, env), [](double t) { return 3 / ((6 - t) * (6 - t)); },
                   [](double t) { return 3 / ((4 + t) * (4 + t)); }, 1e-15);
  env.bind("n", singleton(5));
  EXPECT_EQ(eval(parse_coefficient_rule("fact(n)"), env).lower()[0], 120.0);
  env.bind("n", singleton(0));
  expect_envelopes(eval(parse_coefficient_rule("T(4,5,6)^(n-1)"), env), [](double t) { return 1 / (6 - t); },
                   [](double t) { return 1 / (4 + t); }, 1e-15);
}

}  // namespace
}  // namespace fuzzcalc

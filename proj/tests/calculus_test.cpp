#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fuzzcalc/calculus.hpp"
#include "fuzzcalc/error.hpp"
#include "fuzzcalc/parser.hpp"
#include "test_support.hpp"

namespace fuzzcalc {
namespace {

using testing::max_envelope_error;

DerivativeEstimate D(const char* f, const TriangularSpec& at, const LimitSchedule& s = {}) {
  return mh_derivative(parse_expr(f), "x", make_triangular(at), Env(), s);
}

TEST(MhDerivative, Square) {
  const auto d = D("x^2", {1, 2, 3});
  EXPECT_TRUE(d.converged);
  EXPECT_LE(d.gap, 1e-7);
  EXPECT_LT(max_envelope_error(d.value, [](double a) { return 2 * (1 + a); }, [](double a) { return 2 * (3 - a); }),
            1e-6);
  EXPECT_GT(d.iterations, 0);
  EXPECT_GT(d.h_final, 0.0);
}

TEST(MhDerivative, ScaledCube) {
  const auto d = D("3 * x^3", {1, 2, 3});
  EXPECT_LT(max_envelope_error(d.value, [](double a) { return 9 * (1 + a) * (1 + a); },
                               [](double a) { return 9 * (3 - a) * (3 - a); }),
            1e-5);
}

TEST(MhDerivative, Constants) {
  const auto d = D("T(1,2,3)", {1, 2, 3});
  EXPECT_EQ(hausdorff_distance(d.value, singleton(0)), 0.0);
  const auto c = D("5", {1, 2, 3});
  EXPECT_EQ(hausdorff_distance(c.value, singleton(0)), 0.0);
}

TEST(MhDerivative, NotDifferentiableAcrossZero) {
  // x^2 over a support straddling 0: the one-sided quotients disagree at low levels.
  try {
    D("x^2", {-1, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDifferentiable);
  }
  const auto est = estimate_mh_derivative(parse_expr("x^2"), "x", make_triangular({-1, 0, 1}), Env());
  EXPECT_FALSE(est.converged);
  EXPECT_GT(est.gap, 1e-7);
}

TEST(MhDerivative, ElementaryFunctions) {
  // Increasing on the support: lower envelope maps to lower envelope.
  const auto e = D("exp(x)", {0.1, 0.2, 0.3});
  EXPECT_LT(max_envelope_error(e.value, [](double a) { return std::exp(0.1 + 0.1 * a); },
                               [](double a) { return std::exp(0.3 - 0.1 * a); }),
            1e-6);
  const auto s = D("sin(x)", {0.1, 0.2, 0.3});
  // cos is decreasing there, so the envelopes swap.
  EXPECT_LT(max_envelope_error(s.value, [](double a) { return std::cos(0.3 - 0.1 * a); },
                               [](double a) { return std::cos(0.1 + 0.1 * a); }),
            1e-6);
  const auto c = D("cos(x)", {0.1, 0.2, 0.3});
  EXPECT_LT(max_envelope_error(c.value, [](double a) { return -std::sin(0.3 - 0.1 * a); },
                               [](double a) { return -std::sin(0.1 + 0.1 * a); }),
            1e-6);
}

TEST(MhDerivative, SymbolicAgreementOnPositiveSupports) {
  const char* fs[] = {"x^2", "3 * x^3", "exp(x)", "x^2 + 2 * x", "exp(x) * x", "x^4 + T(1,2,3) * x"};
  std::mt19937_64 rng(11);
  for (const char* text : fs) {
    const Expr f = parse_expr(text);
    const Expr df = differentiate(f, "x");
    for (int k = 0; k < 4; ++k) {
      const auto x0 = make_triangular(testing::random_positive_triplet(rng));
      const auto est = mh_derivative(f, "x", x0, Env());
      Env env;
      env.bind("x", x0);
      const double d = hausdorff_distance(est.value, eval(df, env));
      const double scale = 1 + support(est.value).hi;
      EXPECT_LE(d, 10 * 1e-7 * scale) << text;
    }
  }
}

TEST(MhDerivative, Linearity) {
  const Expr f = parse_expr("x^3");
  const Expr g = parse_expr("exp(x)");
  const Expr h = parse_expr("2 * x^3 + 0.5 * exp(x)");
  const auto x0 = make_triangular({0.5, 1, 1.5});
  const auto df = mh_derivative(f, "x", x0, Env()).value;
  const auto dg = mh_derivative(g, "x", x0, Env()).value;
  const auto dh = mh_derivative(h, "x", x0, Env()).value;
  const auto expect = add(scalar_mul(2, df), scalar_mul(0.5, dg));
  EXPECT_LE(hausdorff_distance(dh, expect), 10 * 1e-7 * (1 + support(dh).hi));
}

TEST(MhDerivative, CoreMatchesCrispDerivative) {
  const auto d = D("sin(x) * x^2", {0.4, 0.9, 1.3});
  const double x = 0.9;
  const double crisp = std::cos(x) * x * x + 2 * x * std::sin(x);
  EXPECT_NEAR(d.value.lower().back(), crisp, 1e-6);
  EXPECT_NEAR(d.value.upper().back(), crisp, 1e-6);
}

TEST(MhDerivative, UsesOtherBindings) {
  Env env;
  env.bind("a", make_triangular({1, 2, 3}));
  const auto d = mh_derivative(parse_expr("a * x"), "x", make_triangular({1, 2, 3}), env);
  EXPECT_LT(max_envelope_error(d.value, [](double a) { return 1 + a; }, [](double a) { return 3 - a; }), 1e-6);
}

TEST(MhDerivative, ScheduleValidation) {
  LimitSchedule s;
  s.shrink = 1.0;
  EXPECT_THROW(D("x^2", {1, 2, 3}, s), Error);
  s = {};
  s.tol = 0;
  EXPECT_THROW(D("x^2", {1, 2, 3}, s), Error);
  s = {};
  s.h0 = -1;
  EXPECT_THROW(D("x^2", {1, 2, 3}, s), Error);
  s = {};
  s.max_iters = 0;
  EXPECT_THROW(D("x^2", {1, 2, 3}, s), Error);
  s = {};
  s.h0 = 0.5;
  EXPECT_TRUE(D("x^2", {1, 2, 3}, s).converged);
}

TEST(Shift, MovesBothEnvelopes) {
  const auto s = shift(make_triangular({1, 2, 3}), 0.5);
  EXPECT_EQ(hausdorff_distance(s, make_triangular({1.5, 2.5, 3.5})), 0.0);
}

TEST(ContinuityProbe, Examples) {
  const std::vector<double> deltas{1, 0.1, 0.01, 0.001};
  const auto x0 = make_triangular({1, 2, 3});
  // Shift s moves the cut by |2 x s + s^2| <= 6 s + s^2: 0.0601 < 0.1 but 0.61 > 0.1.
  EXPECT_EQ(continuity_probe(parse_expr("x^2"), "x", x0, Env(), 0.1, deltas), 0.01);
  EXPECT_EQ(continuity_probe(parse_expr("x"), "x", x0, Env(), 0.1, deltas), 0.1);
  const auto e = continuity_probe(parse_expr("exp(x)"), "x", make_triangular({-1, 0, 1}), Env(), 0.01, deltas);
  ASSERT_TRUE(e.has_value());
  EXPECT_GT(*e, 0.0);
  EXPECT_FALSE(continuity_probe(parse_expr("x^2"), "x", x0, Env(), 1e-9, deltas).has_value());
}

}  // namespace
}  // namespace fuzzcalc

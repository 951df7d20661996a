#include "fuzzcalc/ivp.hpp"

#include <string>

#include "fuzzcalc/error.hpp"

namespace fuzzcalc {

namespace {

void validate(const IvpProblem& p) {
  if (p.order < 1 || p.order > kMaxTaylorOrder) {
    throw Error(ErrorKind::InvalidArgument,
                "order must be between 1 and " + std::to_string(kMaxTaylorOrder));
  }
  if (p.steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be at least 1");
}

void check_step(const FuzzyNumber& h) {
  require_proper(h, "taylor_step");
  if (support(h).lo < 0.0) throw Error(ErrorKind::InvalidArgument, "step h must have nonnegative support");
}

}  // namespace

std::vector<Expr> total_derivatives(const Expr& rhs, int order) {
  if (order < 1 || order > kMaxTaylorOrder) {
    throw Error(ErrorKind::InvalidArgument,
                "order must be between 1 and " + std::to_string(kMaxTaylorOrder));
  }
  std::vector<Expr> d{rhs};
  for (int k = 1; k < order; ++k) {
    const Expr& prev = d.back();
    d.push_back(build::sum(differentiate(prev, "x"),
                           build::product(differentiate(prev, "y"), rhs)));
  }
  return d;
}

TaylorStep taylor_step(const FuzzyNumber& x, const FuzzyNumber& y, const FuzzyNumber& h,
                       const std::vector<Expr>& derivatives) {
  check_step(h);
  require_proper(x, "taylor_step");
  require_proper(y, "taylor_step");
  Env env(x.grid());
  env.bind("x", x).bind("y", y);

  TaylorStep out{add(x, h), y, 0.0};
  const FuzzyNumber zero = singleton(0.0, x.grid());
  double factorial = 1.0;
  for (std::size_t k = 1; k <= derivatives.size(); ++k) {
    factorial *= static_cast<double>(k);
    const FuzzyNumber weight = scalar_mul(1.0 / factorial, pow_int(h, static_cast<unsigned>(k)));
    const FuzzyNumber term = mul(weight, eval(derivatives[k - 1], env));
    out.y = add(out.y, term);
    out.truncation = hausdorff_distance(term, zero);
  }
  return out;
}

TaylorStep taylor_step(const FuzzyNumber& x, const FuzzyNumber& y, const IvpProblem& problem) {
  validate(problem);
  return taylor_step(x, y, problem.h, total_derivatives(problem.rhs, problem.order));
}

IvpSolution solve(const IvpProblem& problem) {
  validate(problem);
  const std::vector<Expr> tower = total_derivatives(problem.rhs, problem.order);
  IvpSolution sol;
  sol.trajectory.reserve(static_cast<std::size_t>(problem.steps) + 1);
  sol.trajectory.push_back({problem.x0, problem.y0});
  for (int i = 0; i < problem.steps; ++i) {
    const IvpPoint& cur = sol.trajectory.back();
    try {
      TaylorStep next = taylor_step(cur.x, cur.y, problem.h, tower);
      sol.trajectory.push_back({std::move(next.x), std::move(next.y)});
      sol.truncation.push_back(next.truncation);
    } catch (const Error& e) {
      throw Error(e.kind(), "step " + std::to_string(i + 1) + ": " + e.detail());
    }
  }
  return sol;
}

}  // namespace fuzzcalc

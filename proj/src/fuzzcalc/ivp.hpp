#pragma once

#include <vector>

#include "fuzzcalc/eval.hpp"

namespace fuzzcalc {

inline constexpr int kMaxTaylorOrder = 4;

/// y' = F(x, y), y(x0) = y0, advanced with the fuzzy step h.
struct IvpProblem {
  Expr rhs = Expr::crisp(0);  // in the variables x and y
  FuzzyNumber x0;
  FuzzyNumber y0;
  FuzzyNumber h;
  int order = 2;
  int steps = 1;
};

struct IvpPoint {
  FuzzyNumber x;
  FuzzyNumber y;
};

struct IvpSolution {
  std::vector<IvpPoint> trajectory;  // steps + 1 points, initial point first
  std::vector<double> truncation;    // per step: Hausdorff norm of the last added term
};

/// [D^1, ..., D^order] with D^1 = F and D^(k+1) = dD^k/dx + dD^k/dy * F.
/// Throws InvalidArgument unless 1 <= order <= kMaxTaylorOrder.
std::vector<Expr> total_derivatives(const Expr& rhs, int order);

struct TaylorStep {
  FuzzyNumber x;
  FuzzyNumber y;
  double truncation = 0.0;
};

/// y (+) sum_k (h^k / k!) (x) D^k(x, y), with x advanced to x (+) h.
TaylorStep taylor_step(const FuzzyNumber& x, const FuzzyNumber& y, const FuzzyNumber& h,
                       const std::vector<Expr>& derivatives);

/// Convenience overload that builds the derivative tower from the problem.
TaylorStep taylor_step(const FuzzyNumber& x, const FuzzyNumber& y, const IvpProblem& problem);

/// Runs problem.steps Taylor steps. Errors are re-thrown with the step index.
IvpSolution solve(const IvpProblem& problem);

}  // namespace fuzzcalc

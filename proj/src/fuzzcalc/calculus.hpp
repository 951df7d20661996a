#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "fuzzcalc/eval.hpp"

namespace fuzzcalc {

/// Discretization of h -> 0+: h_k = h0 * shrink^k.
struct LimitSchedule {
  std::optional<double> h0;  // default: 2^-3 * (1 + |support midpoint of x0|)
  double shrink = 0.5;
  int max_iters = 40;
  double tol = 1e-7;
};

struct DerivativeEstimate {
  FuzzyNumber value;        // right extrapolant
  FuzzyNumber right_value;  // same as value; kept for symmetry with left_value
  FuzzyNumber left_value;
  double h_final = 0.0;
  double gap = 0.0;  // distance between the one-sided extrapolants
  bool converged = false;
  int iterations = 0;
};

/// Modified Hukuhara derivative of f with respect to `var` at x0.
///
/// Both one-sided gH difference quotients are formed with a crisp h that
/// shifts both envelopes of x0, each is Richardson-extrapolated per envelope
/// sample, and the estimate is accepted once the two extrapolants agree and
/// successive right extrapolants agree, both within sched.tol.
///
/// Returns the last estimate with converged = false when the tolerance is not
/// reached; throws ImproperOperand if the quotients stay non-nested.
DerivativeEstimate estimate_mh_derivative(const Expr& f, std::string_view var,
                                          const FuzzyNumber& x0, const Env& env,
                                          const LimitSchedule& sched = {});

/// As estimate_mh_derivative, but throws NotDifferentiable unless converged.
DerivativeEstimate mh_derivative(const Expr& f, std::string_view var, const FuzzyNumber& x0,
                                 const Env& env, const LimitSchedule& sched = {});

/// Largest trial delta such that every crisp shift s of x0 with |s| < delta
/// (sampled) keeps d(f(x0 + s), f(x0)) < eps. nullopt if no trial works.
std::optional<double> continuity_probe(const Expr& f, std::string_view var, const FuzzyNumber& x0,
                                       const Env& env, double eps,
                                       std::span<const double> trial_deltas);

/// x0 with both envelopes shifted by the crisp amount h.
FuzzyNumber shift(const FuzzyNumber& x0, double h);

}  // namespace fuzzcalc

#include "fuzzcalc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fuzzcalc/error.hpp"

namespace fuzzcalc {

namespace {

// Raw level-wise envelopes; may be non-nested while the limit is being formed.
struct Envelopes {
  std::vector<double> lo;
  std::vector<double> hi;
  // Per level: true when the lower endpoint came from the lower-envelope
  // difference. Used to detect min/max branch switches between iterations.
  std::vector<bool> branch;
};

Envelopes gh_quotient(const FuzzyNumber& a, const FuzzyNumber& b, double h) {
  const std::size_t n = a.size();
  Envelopes q{std::vector<double>(n), std::vector<double>(n), std::vector<bool>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double dl = a.lower()[i] - b.lower()[i];
    const double du = a.upper()[i] - b.upper()[i];
    q.branch[i] = dl <= du;
    q.lo[i] = std::min(dl, du) / h;
    q.hi[i] = std::max(dl, du) / h;
  }
  return q;
}

// (current - s * previous) / (1 - s): removes the O(h) term of a one-sided quotient.
Envelopes richardson(const Envelopes& current, const Envelopes& previous, double s) {
  Envelopes r = current;
  for (std::size_t i = 0; i < r.lo.size(); ++i) {
    r.lo[i] = (current.lo[i] - s * previous.lo[i]) / (1.0 - s);
    r.hi[i] = (current.hi[i] - s * previous.hi[i]) / (1.0 - s);
    if (r.lo[i] > r.hi[i]) std::swap(r.lo[i], r.hi[i]);
  }
  return r;
}

double raw_distance(const Envelopes& a, const Envelopes& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    d = std::max({d, std::abs(a.lo[i] - b.lo[i]), std::abs(a.hi[i] - b.hi[i])});
  }
  return d;
}

// Nested up to `slack`; small violations are clipped away.
bool make_nested(Envelopes& e, double slack) {
  for (std::size_t i = 1; i < e.lo.size(); ++i) {
    if (e.lo[i - 1] - e.lo[i] > slack || e.hi[i] - e.hi[i - 1] > slack) return false;
  }
  for (std::size_t i = 1; i < e.lo.size(); ++i) {
    e.lo[i] = std::max(e.lo[i], e.lo[i - 1]);
    e.hi[i] = std::min(e.hi[i], e.hi[i - 1]);
    if (e.lo[i] > e.hi[i]) e.lo[i] = e.hi[i] = 0.5 * (e.lo[i] + e.hi[i]);
  }
  return true;
}

FuzzyNumber to_number(Envelopes e, const AlphaGrid& grid, double slack) {
  if (!make_nested(e, slack)) {
    throw Error(ErrorKind::ImproperOperand,
                "gH difference quotients are not nested; the mH-derivative does not exist here");
  }
  return FuzzyNumber::unchecked(grid, std::move(e.lo), std::move(e.hi), true);
}

}  // namespace

FuzzyNumber shift(const FuzzyNumber& x0, double h) {
  std::vector<double> lo(x0.lower().begin(), x0.lower().end());
  std::vector<double> hi(x0.upper().begin(), x0.upper().end());
  for (double& v : lo) v += h;
  for (double& v : hi) v += h;
  return FuzzyNumber::unchecked(x0.grid(), std::move(lo), std::move(hi), x0.proper());
}

DerivativeEstimate estimate_mh_derivative(const Expr& f, std::string_view var,
                                          const FuzzyNumber& x0, const Env& env,
                                          const LimitSchedule& sched) {
  require_proper(x0, "mh_derivative");
  if (!(sched.shrink > 0.0 && sched.shrink < 1.0) || sched.max_iters < 1 || !(sched.tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "limit schedule needs shrink in (0,1), max_iters >= 1, tol > 0");
  }
  const double h0 = sched.h0.value_or(0.125 * (1.0 + std::abs(support(x0).midpoint())));
  if (!(h0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "h0 must be positive");

  Env local = env;
  const std::string name(var);
  auto f_at = [&](double h) {
    local.bind(name, shift(x0, h));
    return eval(f, local);
  };
  const FuzzyNumber f0 = f_at(0.0);

  Envelopes prev_right;
  Envelopes prev_left;
  bool have_prev = false;
  Envelopes ext_right;
  Envelopes ext_left;
  bool have_ext = false;

  DerivativeEstimate est;
  double h = h0;
  double last_step = std::numeric_limits<double>::infinity();
  for (int k = 0; k < sched.max_iters; ++k, h *= sched.shrink) {
    Envelopes right = gh_quotient(f_at(h), f0, h);
    Envelopes left = gh_quotient(f0, f_at(-h), h);

    if (have_prev && right.branch == prev_right.branch && left.branch == prev_left.branch) {
      Envelopes r = richardson(right, prev_right, sched.shrink);
      Envelopes l = richardson(left, prev_left, sched.shrink);
      if (have_ext) {
        last_step = raw_distance(r, ext_right);
        est.gap = raw_distance(r, l);
      }
      const bool check = have_ext;
      ext_right = std::move(r);
      ext_left = std::move(l);
      have_ext = true;
      est.iterations = k + 1;
      est.h_final = h;
      if (check && est.gap <= sched.tol && last_step <= sched.tol) {
        est.converged = true;
        break;
      }
    } else {
      // Branch switch (or first iteration): restart extrapolation from here.
      have_ext = false;
    }
    prev_right = std::move(right);
    prev_left = std::move(left);
    have_prev = true;
  }

  if (!have_ext) {
    ext_right = prev_right;
    ext_left = prev_left;
    est.h_final = h;
    est.gap = raw_distance(ext_right, ext_left);
    est.iterations = sched.max_iters;
  }

  // Non-nestedness below the convergence tolerance is numerical noise.
  const double slack = std::max(sched.tol, 64.0 * std::numeric_limits<double>::epsilon());
  est.right_value = to_number(ext_right, x0.grid(), slack);
  est.left_value = to_number(ext_left, x0.grid(), slack);
  est.value = est.right_value;
  return est;
}

DerivativeEstimate mh_derivative(const Expr& f, std::string_view var, const FuzzyNumber& x0,
                                 const Env& env, const LimitSchedule& sched) {
  DerivativeEstimate est = estimate_mh_derivative(f, var, x0, env, sched);
  if (!est.converged) {
    throw Error(ErrorKind::NotDifferentiable,
                "one-sided gH quotients did not converge to a common limit (gap " +
                    std::to_string(est.gap) + " after " + std::to_string(est.iterations) +
                    " iterations)");
  }
  return est;
}

std::optional<double> continuity_probe(const Expr& f, std::string_view var, const FuzzyNumber& x0,
                                       const Env& env, double eps,
                                       std::span<const double> trial_deltas) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  require_proper(x0, "continuity_probe");

  constexpr int kSamplesPerSide = 16;
  Env local = env;
  const std::string name(var);
  local.bind(name, x0);
  const FuzzyNumber f0 = eval(f, local);

  std::vector<double> deltas(trial_deltas.begin(), trial_deltas.end());
  std::ranges::sort(deltas, std::greater<>());
  for (double delta : deltas) {
    if (!(delta > 0.0)) continue;
    bool ok = true;
    for (int j = 1; j <= kSamplesPerSide && ok; ++j) {
      const double s = delta * j / (kSamplesPerSide + 1);
      for (double shift_by : {s, -s}) {
        local.bind(name, shift(x0, shift_by));
        if (!(hausdorff_distance(eval(f, local), f0) < eps)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return delta;
  }
  return std::nullopt;
}

}  // namespace fuzzcalc

#include "fuzzcalc/eval.hpp"

#include <cmath>
#include <numbers>

#include "fuzzcalc/error.hpp"

namespace fuzzcalc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Whether offset + 2*pi*k lies in [lo, hi] for some integer k.
bool hits_periodic_point(Interval x, double offset) {
  const double k = std::ceil((x.lo - offset) / kTwoPi);
  return offset + kTwoPi * k <= x.hi;
}

template <class F>
FuzzyNumber map_levels(const FuzzyNumber& a, F range) {
  require_proper(a, "eval");
  std::vector<double> lo(a.size());
  std::vector<double> hi(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Interval r = range(a.cut(i));
    lo[i] = r.lo;
    hi[i] = r.hi;
  }
  return FuzzyNumber::unchecked(a.grid(), std::move(lo), std::move(hi), true);
}

// Integer value of a crisp singleton, or InvalidArgument.
long long crisp_integer(const FuzzyNumber& v, const char* what) {
  const double x = v.lower()[0];
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.lower()[i] != x || v.upper()[i] != x) {
      throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be crisp");
    }
  }
  if (!std::isfinite(x) || x != std::round(x) || std::abs(x) > 1e6) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be an integer");
  }
  return static_cast<long long>(x);
}

FuzzyNumber eval_node(const Expr& e, const Env& env) {
  switch (e.kind()) {
    case NodeKind::FuzzyConst: {
      const FuzzyNumber& v = e.fuzzy_value();
      if (!(v.grid() == env.grid())) {
        throw Error(ErrorKind::GridMismatch, "fuzzy constant is not on the evaluation grid");
      }
      return v;
    }
    case NodeKind::CrispConst: return singleton(e.crisp_value(), env.grid());
    case NodeKind::Var: {
      const FuzzyNumber* v = env.find(e.name());
      if (v == nullptr) throw Error(ErrorKind::UnboundVariable, "'" + e.name() + "' is not bound");
      require_proper(*v, "eval");
      return *v;
    }
    case NodeKind::Add: return add(eval_node(e.child(0), env), eval_node(e.child(1), env));
    case NodeKind::GhSub: return gh_difference(eval_node(e.child(0), env), eval_node(e.child(1), env));
    case NodeKind::Mul: {
      if (e.child(0).is_crisp_const()) return scalar_mul(e.child(0).crisp_value(), eval_node(e.child(1), env));
      if (e.child(1).is_crisp_const()) return scalar_mul(e.child(1).crisp_value(), eval_node(e.child(0), env));
      return mul(eval_node(e.child(0), env), eval_node(e.child(1), env));
    }
    case NodeKind::Div: return div(eval_node(e.child(0), env), eval_node(e.child(1), env));
    case NodeKind::PowInt: return pow_int(eval_node(e.child(0), env), e.exponent());
    case NodeKind::Neg: return scalar_mul(-1.0, eval_node(e.child(0), env));
    case NodeKind::Exp: return map_levels(eval_node(e.child(0), env), exp_range);
    case NodeKind::Sin: return map_levels(eval_node(e.child(0), env), sin_range);
    case NodeKind::Cos: return map_levels(eval_node(e.child(0), env), cos_range);
    case NodeKind::PowExpr: {
      const FuzzyNumber base = eval_node(e.child(0), env);
      const long long k = crisp_integer(eval_node(e.child(1), env), "exponent");
      const FuzzyNumber p = pow_int(base, static_cast<unsigned>(k < 0 ? -k : k));
      return k < 0 ? div(singleton(1.0, env.grid()), p) : p;
    }
    case NodeKind::Factorial: {
      const long long k = crisp_integer(eval_node(e.child(0), env), "factorial argument");
      if (k < 0) throw Error(ErrorKind::InvalidArgument, "factorial of a negative integer");
      return singleton(std::tgamma(static_cast<double>(k) + 1.0), env.grid());
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown expression node");
}

}  // namespace

Env& Env::bind(std::string name, FuzzyNumber value) {
  if (!(value.grid() == grid_)) {
    throw Error(ErrorKind::GridMismatch, "binding '" + name + "' is not on the environment grid");
  }
  bindings_.insert_or_assign(std::move(name), std::move(value));
  return *this;
}

const FuzzyNumber* Env::find(std::string_view name) const {
  const auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

FuzzyNumber eval(const Expr& e, const Env& env) { return eval_node(e, env); }

Interval exp_range(Interval x) { return {std::exp(x.lo), std::exp(x.hi)}; }

Interval sin_range(Interval x) {
  if (x.width() >= kTwoPi) return {-1.0, 1.0};
  const double a = std::sin(x.lo);
  const double b = std::sin(x.hi);
  Interval r = hull(a, b);
  if (hits_periodic_point(x, 0.5 * std::numbers::pi)) r.hi = 1.0;
  if (hits_periodic_point(x, -0.5 * std::numbers::pi)) r.lo = -1.0;
  return r;
}

Interval cos_range(Interval x) {
  if (x.width() >= kTwoPi) return {-1.0, 1.0};
  const double a = std::cos(x.lo);
  const double b = std::cos(x.hi);
  Interval r = hull(a, b);
  if (hits_periodic_point(x, 0.0)) r.hi = 1.0;
  if (hits_periodic_point(x, std::numbers::pi)) r.lo = -1.0;
  return r;
}

}  // namespace fuzzcalc

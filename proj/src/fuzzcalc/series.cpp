#include "fuzzcalc/series.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "fuzzcalc/error.hpp"
#include "fuzzcalc/number_format.hpp"

namespace fuzzcalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLimitRelTol = 1e-6;
constexpr const char* kIndexVar = "n";

bool agree(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= kLimitRelTol * std::max(std::abs(a), std::abs(b));
}

// |num / den| with x/0 = +inf and 0/0 undefined (NaN).
double abs_quotient(double num, double den) {
  if (den == 0.0) return num == 0.0 ? std::numeric_limits<double>::quiet_NaN() : kInf;
  return std::abs(num / den);
}

enum class Trend { Value, Undefined, None };

struct Limit {
  Trend trend = Trend::None;
  double value = 0.0;
};

// Declares lim q(n) from q1 = q(n1) and q2 = q(n2), n1 < n2. Besides plain
// agreement, q ~ C/n is declared 0 and q ~ C*n is declared +inf.
Limit declare_limit(double q1, std::size_t n1, double q2, std::size_t n2) {
  const bool u1 = std::isnan(q1);
  const bool u2 = std::isnan(q2);
  if (u1 && u2) return {Trend::Undefined, 0.0};
  if (u1 || u2) return {Trend::None, 0.0};
  if (std::isinf(q1) && std::isinf(q2)) return {Trend::Value, kInf};
  if (q1 == q2 || agree(q1, q2)) return {Trend::Value, q2};
  const double m1 = static_cast<double>(n1 + 1);
  const double m2 = static_cast<double>(n2 + 1);
  if (q2 < q1 && agree(q1 * m1, q2 * m2)) return {Trend::Value, 0.0};
  if (q2 > q1 && agree(q1 / m1, q2 / m2)) return {Trend::Value, kInf};
  return {Trend::None, 0.0};
}

const char* const kComboNames[4] = {"lower/lower", "lower/upper", "upper/lower", "upper/upper"};

double endpoint(const FuzzyNumber& a, std::size_t level, int which) {
  return which == 0 ? a.lower()[level] : a.upper()[level];
}

// The four |num_end / den_end| quotient limits at one level. `forward` swaps
// the roles: |a_{n+1} / a_n| instead of |a_n / a_{n+1}|.
std::array<Limit, 4> level_limits(const std::array<FuzzyNumber, 4>& a, std::size_t n1,
                                  std::size_t n2, std::size_t level, bool forward,
                                  const std::string& where) {
  // a = {a_{n1}, a_{n1+1}, a_{n2}, a_{n2+1}}
  std::array<Limit, 4> out;
  for (int c = 0; c < 4; ++c) {
    const int e_n = c / 2;   // endpoint of a_n
    const int e_n1 = c % 2;  // endpoint of a_{n+1}
    double q1;
    double q2;
    if (forward) {
      q1 = abs_quotient(endpoint(a[1], level, e_n1), endpoint(a[0], level, e_n));
      q2 = abs_quotient(endpoint(a[3], level, e_n1), endpoint(a[2], level, e_n));
    } else {
      q1 = abs_quotient(endpoint(a[0], level, e_n), endpoint(a[1], level, e_n1));
      q2 = abs_quotient(endpoint(a[2], level, e_n), endpoint(a[3], level, e_n1));
    }
    out[c] = declare_limit(q1, n1, q2, n2);
    if (out[c].trend == Trend::None) {
      throw Error(ErrorKind::NoLimit, std::string(kComboNames[c]) + " quotient " + where +
                                          ": probes disagree (" + std::to_string(q1) + " at n=" +
                                          std::to_string(n1) + ", " + std::to_string(q2) +
                                          " at n=" + std::to_string(n2) + ")");
    }
  }
  return out;
}

std::array<FuzzyNumber, 4> probe_coefficients(const FuzzyPowerSeries& s, std::size_t n_probe) {
  if (n_probe < 2) throw Error(ErrorKind::InvalidArgument, "n_probe must be at least 2");
  if (s.size() && *s.size() < n_probe + 2) {
    throw Error(ErrorKind::InvalidArgument, "n_probe = " + std::to_string(n_probe) + " needs " +
                                                std::to_string(n_probe + 2) + " coefficients, have " +
                                                std::to_string(*s.size()));
  }
  const std::size_t n1 = n_probe / 2;
  return {s.coefficient(n1), s.coefficient(n1 + 1), s.coefficient(n_probe),
          s.coefficient(n_probe + 1)};
}

double reciprocal(double r) {
  if (r == 0.0) return kInf;
  if (std::isinf(r)) return 0.0;
  return 1.0 / r;
}

void fill_ratio_values(RadiusResult& res) {
  res.l_lower = reciprocal(res.radius.upper()[0]);
  res.l_upper = reciprocal(res.radius.lower()[0]);
}

FuzzyNumber infinite_marker(const AlphaGrid& grid) {
  return FuzzyNumber::unchecked(grid, std::vector<double>(grid.size(), kInf),
                                std::vector<double>(grid.size(), kInf), true);
}

// --- symbolic ratio ---------------------------------------------------------

struct FuzzyFactor {
  FuzzyNumber base;
  long long p = 0;  // exponent p*n + q
  long long q = 1;
  int side = 1;     // +1 numerator, -1 denominator
};

struct RuleShape {
  double crisp_ratio = 1.0;  // contribution of crisp geometric factors to a_n / a_{n+1}
  int factorial_degree = 0;
  std::vector<FuzzyFactor> fuzzy;
};

[[noreturn]] void not_simplifiable(const std::string& why) {
  throw Error(ErrorKind::NotSimplifiable, why);
}

bool is_polynomial_in_index(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::CrispConst: return true;
    case NodeKind::Var: return e.name() == kIndexVar;
    case NodeKind::Add:
    case NodeKind::GhSub:
    case NodeKind::Mul:
    case NodeKind::Div:
      return is_polynomial_in_index(e.child(0)) && is_polynomial_in_index(e.child(1));
    case NodeKind::Neg:
    case NodeKind::PowInt: return is_polynomial_in_index(e.child(0));
    default: return false;
  }
}

// Exponent p*n + q of an integer-affine expression in n.
std::pair<long long, long long> affine_in_index(const Expr& e, const AlphaGrid& grid) {
  if (!is_polynomial_in_index(e)) not_simplifiable("exponent '" + e.to_string() + "' is not affine in n");
  std::array<double, 3> v{};
  for (int k = 0; k < 3; ++k) {
    Env env(grid);
    env.bind(kIndexVar, singleton(k, grid));
    v[k] = eval(e, env).lower()[0];
  }
  const double p = v[1] - v[0];
  const double q = v[0];
  if (v[2] - v[1] != p || p != std::round(p) || q != std::round(q)) {
    not_simplifiable("exponent '" + e.to_string() + "' is not an integer affine function of n");
  }
  return {static_cast<long long>(p), static_cast<long long>(q)};
}

void analyze(const Expr& e, int side, const AlphaGrid& grid, RuleShape& shape) {
  switch (e.kind()) {
    case NodeKind::Mul:
      analyze(e.child(0), side, grid, shape);
      analyze(e.child(1), side, grid, shape);
      return;
    case NodeKind::Div:
      analyze(e.child(0), side, grid, shape);
      analyze(e.child(1), -side, grid, shape);
      return;
    case NodeKind::Neg: analyze(e.child(0), side, grid, shape); return;
    case NodeKind::CrispConst:
      if (e.crisp_value() == 0.0) not_simplifiable("zero factor in coefficient rule");
      return;  // cancels in a_n / a_{n+1}
    case NodeKind::FuzzyConst: shape.fuzzy.push_back({e.fuzzy_value(), 0, 1, side}); return;
    case NodeKind::PowInt: {
      const Expr& base = e.child(0);
      if (base.kind() == NodeKind::FuzzyConst) {
        shape.fuzzy.push_back({base.fuzzy_value(), 0, static_cast<long long>(e.exponent()), side});
        return;
      }
      if (is_polynomial_in_index(base)) return;
      not_simplifiable("unsupported power base '" + base.to_string() + "'");
    }
    case NodeKind::PowExpr: {
      const Expr& base = e.child(0);
      const auto [p, q] = affine_in_index(e.child(1), grid);
      if (base.kind() == NodeKind::FuzzyConst) {
        shape.fuzzy.push_back({base.fuzzy_value(), p, q, side});
        return;
      }
      if (base.is_crisp_const()) {
        const double b = std::abs(base.crisp_value());
        if (b == 0.0) not_simplifiable("zero power base in coefficient rule");
        shape.crisp_ratio *= std::pow(b, static_cast<double>(-side * p));
        return;
      }
      if (p == 0 && is_polynomial_in_index(base)) return;
      not_simplifiable("unsupported power '" + e.to_string() + "'");
    }
    case NodeKind::Factorial: {
      const auto [p, q] = affine_in_index(e.child(0), grid);
      if (p == 0) return;
      if (p != 1) not_simplifiable("factorial argument must be n + const");
      shape.factorial_degree += side;
      return;
    }
    default:
      if (is_polynomial_in_index(e)) return;  // rational factors tend to 1
      not_simplifiable("unsupported term '" + e.to_string() + "' in coefficient rule");
  }
}

}  // namespace

// --- FuzzyPowerSeries --------------------------------------------------------

FuzzyPowerSeries::FuzzyPowerSeries(FuzzyNumber center, std::vector<FuzzyNumber> coeffs,
                                   std::optional<Expr> rule)
    : center_(std::move(center)), coeffs_(std::move(coeffs)), rule_(std::move(rule)) {}

FuzzyPowerSeries FuzzyPowerSeries::with_coefficients(FuzzyNumber center,
                                                     std::vector<FuzzyNumber> coeffs) {
  if (coeffs.empty()) throw Error(ErrorKind::InvalidArgument, "coefficient list is empty");
  for (const FuzzyNumber& a : coeffs) require_same_grid(center, a, "power series");
  return FuzzyPowerSeries(std::move(center), std::move(coeffs), std::nullopt);
}

FuzzyPowerSeries FuzzyPowerSeries::with_rule(FuzzyNumber center, Expr rule) {
  return FuzzyPowerSeries(std::move(center), {}, std::move(rule));
}

std::optional<std::size_t> FuzzyPowerSeries::size() const noexcept {
  if (rule_) return std::nullopt;
  return coeffs_.size();
}

FuzzyNumber FuzzyPowerSeries::coefficient(std::size_t n) const {
  if (!rule_) {
    if (n >= coeffs_.size()) {
      throw Error(ErrorKind::InvalidArgument, "coefficient index " + std::to_string(n) +
                                                  " out of range (have " +
                                                  std::to_string(coeffs_.size()) + ")");
    }
    return coeffs_[n];
  }
  Env env(grid());
  env.bind(kIndexVar, singleton(static_cast<double>(n), grid()));
  return eval(*rule_, env);
}

// --- operations --------------------------------------------------------------

FuzzyNumber abs(const FuzzyNumber& a) {
  std::vector<double> lo(a.size());
  std::vector<double> hi(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Interval c = a.cut(i);
    if (c.lo >= 0.0) {
      lo[i] = c.lo;
      hi[i] = c.hi;
    } else if (c.hi <= 0.0) {
      lo[i] = -c.hi;
      hi[i] = -c.lo;
    } else {
      lo[i] = 0.0;
      hi[i] = std::max(-c.lo, c.hi);
    }
  }
  const bool proper = a.proper() && is_nested(lo, hi);
  return FuzzyNumber::unchecked(a.grid(), std::move(lo), std::move(hi), proper);
}

FuzzyNumber partial_sum(const FuzzyPowerSeries& s, const FuzzyNumber& x, std::size_t n_terms) {
  if (n_terms == 0) throw Error(ErrorKind::InvalidArgument, "n_terms must be at least 1");
  require_proper(x, "partial_sum");
  require_proper(s.center(), "partial_sum");
  require_same_grid(x, s.center(), "partial_sum");
  const FuzzyNumber base = gh_difference(x, s.center());
  if (!base.proper()) {
    throw Error(ErrorKind::ImproperOperand, "partial_sum: x gH-minus center is not a fuzzy number");
  }
  FuzzyNumber sum = s.coefficient(0);
  FuzzyNumber power = singleton(1.0, x.grid());
  for (std::size_t k = 1; k < n_terms; ++k) {
    power = mul(power, base);
    sum = add(sum, mul(s.coefficient(k), power));
  }
  return sum;
}

RadiusResult radius_four_quotient(const FuzzyPowerSeries& s, std::size_t n_probe) {
  const auto a = probe_coefficients(s, n_probe);
  const std::size_t n1 = n_probe / 2;
  const std::size_t levels = s.grid().size();
  std::vector<double> lo(levels);
  std::vector<double> hi(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    const auto lim = level_limits(a, n1, n_probe, i, false, "at alpha=" + format_double(s.grid()[i]));
    lo[i] = kInf;
    hi[i] = -kInf;
    for (const Limit& l : lim) {
      if (l.trend != Trend::Value) continue;
      lo[i] = std::min(lo[i], l.value);
      hi[i] = std::max(hi[i], l.value);
    }
    if (lo[i] > hi[i]) {
      throw Error(ErrorKind::NoLimit, "every quotient is 0/0 at alpha=" + format_double(s.grid()[i]));
    }
  }
  RadiusResult res;
  res.mode = RadiusMode::FourQuotient;
  res.n_used = n_probe;
  res.infinite = std::ranges::all_of(lo, [](double v) { return std::isinf(v); });
  const bool proper = is_nested(lo, hi);
  res.radius = FuzzyNumber::unchecked(s.grid(), std::move(lo), std::move(hi), proper);
  fill_ratio_values(res);
  return res;
}

RadiusResult radius_symbolic_ratio(const FuzzyPowerSeries& s) {
  if (!s.rule()) throw Error(ErrorKind::NotSimplifiable, "symbolic radius needs a coefficient rule");
  const AlphaGrid& grid = s.grid();
  RuleShape shape;
  analyze(*s.rule(), 1, grid, shape);

  RadiusResult res;
  res.mode = RadiusMode::SymbolicRatio;
  if (shape.factorial_degree > 0) {
    res.radius = singleton(0.0, grid);
  } else if (shape.factorial_degree < 0) {
    res.radius = infinite_marker(grid);
    res.infinite = true;
  } else {
    FuzzyNumber r = singleton(shape.crisp_ratio, grid);
    for (const FuzzyFactor& f : shape.fuzzy) {
      if (!(f.base.grid() == grid)) throw Error(ErrorKind::GridMismatch, "fuzzy factor is not on the series grid");
      if (f.p == 0) {
        // n-independent factor: a_n / a_{n+1} keeps c / c under interval division.
        if (f.q == 0) continue;
        const FuzzyNumber c = pow_int(f.base, static_cast<unsigned>(std::llabs(f.q)));
        if (support(c).contains(0.0)) not_simplifiable("fuzzy factor contains 0");
        r = mul(r, div(c, c));
        continue;
      }
      // c^(s(p n + q)) / c^(s(p (n+1) + q)) = c^(-s p)
      const long long m = -f.side * f.p;
      const FuzzyNumber c = pow_int(f.base, static_cast<unsigned>(std::llabs(m)));
      if (m > 0) {
        r = mul(r, c);
      } else {
        if (support(c).contains(0.0)) not_simplifiable("fuzzy power base contains 0");
        r = div(r, c);
      }
    }
    res.radius = abs(r);
    res.infinite = std::ranges::all_of(res.radius.lower(), [](double v) { return std::isinf(v); });
  }
  fill_ratio_values(res);
  return res;
}

RatioTestResult ratio_test(const FuzzyPowerSeries& s, std::size_t n_probe) {
  const auto a = probe_coefficients(s, n_probe);
  const auto lim = level_limits(a, n_probe / 2, n_probe, 0, true, "at alpha=0");
  RatioTestResult res;
  res.l_lower = kInf;
  res.l_upper = -kInf;
  for (const Limit& l : lim) {
    if (l.trend != Trend::Value) continue;
    res.l_lower = std::min(res.l_lower, l.value);
    res.l_upper = std::max(res.l_upper, l.value);
  }
  if (res.l_lower > res.l_upper) throw Error(ErrorKind::NoLimit, "every forward quotient is 0/0 at alpha=0");
  res.converges = res.l_lower < 1.0 && res.l_upper < 1.0;
  res.infinite_radius = res.l_upper == 0.0;
  return res;
}

ConvergenceBounds convergence_interval(const FuzzyNumber& center, const FuzzyNumber& radius) {
  require_proper(center, "convergence_interval");
  require_proper(radius, "convergence_interval");
  require_same_grid(center, radius, "convergence_interval");
  const std::size_t n = center.size();
  std::vector<double> lo_l(n), lo_u(n), hi_l(n), hi_u(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Interval c = center.cut(i);
    const Interval r = radius.cut(i);
    if (r.lo < 0.0) throw Error(ErrorKind::InvalidArgument, "radius must be nonnegative");
    const Interval b_lo = hull(c.lo - r.hi, c.hi - r.lo);
    const Interval b_hi = hull(c.hi + r.lo, c.lo + r.hi);
    lo_l[i] = b_lo.lo;
    lo_u[i] = b_lo.hi;
    hi_l[i] = b_hi.lo;
    hi_u[i] = b_hi.hi;
  }
  const bool lo_proper = is_nested(lo_l, lo_u);
  const bool hi_proper = is_nested(hi_l, hi_u);
  return {FuzzyNumber::unchecked(center.grid(), std::move(lo_l), std::move(lo_u), lo_proper),
          FuzzyNumber::unchecked(center.grid(), std::move(hi_l), std::move(hi_u), hi_proper)};
}

FuzzyPowerSeries taylor_series_of(const Expr& f, std::string_view var, const FuzzyNumber& x0,
                                  std::size_t order, const Env& env) {
  require_proper(x0, "taylor_series_of");
  Env local = env;
  local.bind(std::string(var), x0);
  std::vector<FuzzyNumber> coeffs;
  coeffs.reserve(order + 1);
  Expr d = f;
  double factorial = 1.0;
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) {
      d = differentiate(d, var);
      factorial *= static_cast<double>(k);
    }
    coeffs.push_back(scalar_mul(1.0 / factorial, eval(d, local)));
  }
  return FuzzyPowerSeries::with_coefficients(x0, std::move(coeffs));
}

}  // namespace fuzzcalc

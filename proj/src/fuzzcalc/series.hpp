#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "fuzzcalc/eval.hpp"

namespace fuzzcalc {

/// Sum over n of a_n (x) (x - x0)^n, with '-' the gH-difference.
///
/// Coefficients are either an explicit list a_0..a_N or a rule: an
/// expression in the index variable `n` (see parse_coefficient_rule).
class FuzzyPowerSeries {
 public:
  static FuzzyPowerSeries with_coefficients(FuzzyNumber center, std::vector<FuzzyNumber> coeffs);
  static FuzzyPowerSeries with_rule(FuzzyNumber center, Expr rule);

  const FuzzyNumber& center() const noexcept { return center_; }
  const AlphaGrid& grid() const noexcept { return center_.grid(); }

  /// Explicit coefficient count; nullopt for rule-based series.
  std::optional<std::size_t> size() const noexcept;
  const std::optional<Expr>& rule() const noexcept { return rule_; }

  /// a_n. Throws InvalidArgument past the end of an explicit list.
  FuzzyNumber coefficient(std::size_t n) const;

 private:
  FuzzyPowerSeries(FuzzyNumber center, std::vector<FuzzyNumber> coeffs, std::optional<Expr> rule);

  FuzzyNumber center_;
  std::vector<FuzzyNumber> coeffs_;
  std::optional<Expr> rule_;
};

enum class RadiusMode { FourQuotient, SymbolicRatio };

struct RadiusResult {
  /// Level-wise radius. May hold +inf entries; `infinite` marks the case where
  /// every entry is +inf.
  FuzzyNumber radius;
  RadiusMode mode = RadiusMode::FourQuotient;
  bool infinite = false;
  /// Ratio-test values at alpha = 0: min and max of the forward quotient
  /// limits |a_{n+1}/a_n|, i.e. 1/R_upper(0) and 1/R_lower(0).
  double l_lower = 0.0;
  double l_upper = 0.0;
  std::size_t n_used = 0;
};

struct RatioTestResult {
  bool converges = false;
  bool infinite_radius = false;  // both limits are 0
  double l_lower = 0.0;
  double l_upper = 0.0;
};

/// a_0 (+) a_1 (x) (x - x0) (+) ... with n_terms terms.
FuzzyNumber partial_sum(const FuzzyPowerSeries& s, const FuzzyNumber& x, std::size_t n_terms);

/// Per level: min / max over the four endpoint quotients |a_n / a_{n+1}|,
/// with each limit declared from probes at n_probe / 2 and n_probe.
/// Throws NoLimit when a quotient sequence has no detectable limit.
RadiusResult radius_four_quotient(const FuzzyPowerSeries& s, std::size_t n_probe = 64);

/// Radius from the structure of a coefficient rule: shared fuzzy powers
/// c^(p n + q) cancel to c^p, n-independent fuzzy factors give c / c,
/// polynomial factors tend to 1, factorials send the radius to 0 or +inf.
/// Throws NotSimplifiable for rules outside that structure.
RadiusResult radius_symbolic_ratio(const FuzzyPowerSeries& s);

/// Four forward quotients |a_{n+1} / a_n| at the alpha = 0 endpoints;
/// converges when both the min and max limits are < 1.
RatioTestResult ratio_test(const FuzzyPowerSeries& s, std::size_t n_probe = 64);

struct ConvergenceBounds {
  FuzzyNumber lower;  // convergence requires lower < x
  FuzzyNumber upper;  // ... and x < upper, level-wise
};

/// Level-wise bounds [c_lo - R_hi, c_hi - R_lo] < x < [c_hi + R_lo, c_lo + R_hi]
/// (each normalized to min/max).
ConvergenceBounds convergence_interval(const FuzzyNumber& center, const FuzzyNumber& radius);

/// Coefficients a_k = f^(k)(x0) / k!, k = 0..order, centered at x0.
FuzzyPowerSeries taylor_series_of(const Expr& f, std::string_view var, const FuzzyNumber& x0,
                                  std::size_t order, const Env& env);

/// Level-wise absolute value.
FuzzyNumber abs(const FuzzyNumber& a);

}  // namespace fuzzcalc

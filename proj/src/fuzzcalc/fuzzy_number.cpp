#include "fuzzcalc/fuzzy_number.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fuzzcalc/error.hpp"
#include "fuzzcalc/number_format.hpp"

namespace fuzzcalc {

namespace {

std::shared_ptr<const std::vector<double>> uniform_levels(std::size_t n) {
  std::vector<double> levels(n);
  for (std::size_t i = 0; i < n; ++i) {
    levels[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  }
  levels.back() = 1.0;
  return std::make_shared<const std::vector<double>>(std::move(levels));
}

const std::shared_ptr<const std::vector<double>>& default_levels() {
  static const auto levels = uniform_levels(kDefaultResolution);
  return levels;
}

// Applies `op` to the alpha-cuts of a and b level by level. Interval
// operations used here are inclusion monotone under round-to-nearest, so
// nested inputs give nested outputs.
template <class Op>
FuzzyNumber levelwise(const FuzzyNumber& a, const FuzzyNumber& b, const char* name, Op op) {
  require_same_grid(a, b, name);
  require_proper(a, name);
  require_proper(b, name);
  const std::size_t n = a.size();
  std::vector<double> lo(n);
  std::vector<double> hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Interval r = op(a.cut(i), b.cut(i));
    lo[i] = r.lo;
    hi[i] = r.hi;
  }
  return FuzzyNumber::unchecked(a.grid(), std::move(lo), std::move(hi), true);
}

template <class Op>
FuzzyNumber levelwise(const FuzzyNumber& a, const char* name, Op op) {
  require_proper(a, name);
  const std::size_t n = a.size();
  std::vector<double> lo(n);
  std::vector<double> hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Interval r = op(a.cut(i));
    lo[i] = r.lo;
    hi[i] = r.hi;
  }
  return FuzzyNumber::unchecked(a.grid(), std::move(lo), std::move(hi), true);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// AlphaGrid

AlphaGrid::AlphaGrid() : levels_(default_levels()) {}

AlphaGrid::AlphaGrid(std::shared_ptr<const std::vector<double>> levels) : levels_(std::move(levels)) {}

AlphaGrid AlphaGrid::uniform(std::size_t resolution) {
  if (resolution < 2) {
    throw Error(ErrorKind::InvalidGrid, "grid resolution must be at least 2, got " +
                                            std::to_string(resolution));
  }
  if (resolution == kDefaultResolution) return AlphaGrid();
  return AlphaGrid(uniform_levels(resolution));
}

AlphaGrid AlphaGrid::from_levels(std::vector<double> levels) {
  if (levels.size() < 2) throw Error(ErrorKind::InvalidGrid, "grid needs at least two levels");
  if (levels.front() != 0.0 || levels.back() != 1.0) {
    throw Error(ErrorKind::InvalidGrid, "grid must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i - 1] < levels[i])) {
      throw Error(ErrorKind::InvalidGrid, "grid levels must be strictly increasing");
    }
  }
  return AlphaGrid(std::make_shared<const std::vector<double>>(std::move(levels)));
}

bool operator==(const AlphaGrid& a, const AlphaGrid& b) noexcept {
  return a.levels_ == b.levels_ || *a.levels_ == *b.levels_;
}

// ---------------------------------------------------------------------------
// FuzzyNumber

FuzzyNumber::FuzzyNumber() : FuzzyNumber(singleton(0.0)) {}

FuzzyNumber::FuzzyNumber(AlphaGrid grid, std::vector<double> lower, std::vector<double> upper,
                         bool proper)
    : grid_(std::move(grid)), lower_(std::move(lower)), upper_(std::move(upper)), proper_(proper) {}

FuzzyNumber FuzzyNumber::unchecked(AlphaGrid grid, std::vector<double> lower,
                                   std::vector<double> upper, bool proper) {
  return FuzzyNumber(std::move(grid), std::move(lower), std::move(upper), proper);
}

bool is_nested(std::span<const double> lower, std::span<const double> upper) noexcept {
  for (std::size_t i = 1; i < lower.size(); ++i) {
    if (lower[i] < lower[i - 1] || upper[i] > upper[i - 1]) return false;
  }
  return true;
}

void require_proper(const FuzzyNumber& a, const char* op) {
  if (!a.proper()) {
    throw Error(ErrorKind::ImproperOperand,
                std::string(op) + " received an improper (non-nested) operand");
  }
}

void require_same_grid(const FuzzyNumber& a, const FuzzyNumber& b, const char* op) {
  if (!(a.grid() == b.grid())) {
    throw Error(ErrorKind::GridMismatch, std::string(op) + " operands live on different alpha grids");
  }
}

FuzzyNumber make_triangular(const TriangularSpec& spec, const AlphaGrid& grid) {
  const auto [d, e, f] = spec;
  if (!(d <= e && e <= f) || !std::isfinite(d) || !std::isfinite(f)) {
    throw Error(ErrorKind::MalformedTriplet, "triangular number needs d <= e <= f, got (" +
                                                 std::to_string(d) + ", " + std::to_string(e) +
                                                 ", " + std::to_string(f) + ")");
  }
  const std::size_t n = grid.size();
  std::vector<double> lo(n);
  std::vector<double> hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = grid[i];
    lo[i] = std::min(d + (e - d) * a, e);
    hi[i] = std::max(f - (f - e) * a, e);
  }
  lo.front() = d;
  hi.front() = f;
  lo.back() = e;
  hi.back() = e;
  return FuzzyNumber::unchecked(grid, std::move(lo), std::move(hi), true);
}

FuzzyNumber from_alpha_grid(std::span<const double> lower, std::span<const double> upper,
                            const AlphaGrid& grid) {
  if (lower.size() != grid.size() || upper.size() != grid.size()) {
    throw Error(ErrorKind::InvalidArgument, "envelope lengths (" + std::to_string(lower.size()) +
                                                ", " + std::to_string(upper.size()) +
                                                ") do not match grid size " +
                                                std::to_string(grid.size()));
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i])) {
      throw Error(ErrorKind::InvalidArgument, "envelope contains NaN at level " + std::to_string(i));
    }
    if (lower[i] > upper[i]) {
      throw Error(ErrorKind::Crossed, "lower > upper at alpha = " + std::to_string(grid[i]));
    }
  }
  for (std::size_t i = 1; i < lower.size(); ++i) {
    if (lower[i] < lower[i - 1] || upper[i] > upper[i - 1]) {
      throw Error(ErrorKind::NotNested, "alpha-cuts are not nested at alpha = " +
                                            std::to_string(grid[i]));
    }
  }
  return FuzzyNumber::unchecked(grid, {lower.begin(), lower.end()}, {upper.begin(), upper.end()},
                                true);
}

FuzzyNumber singleton(double value, const AlphaGrid& grid) {
  return FuzzyNumber::unchecked(grid, std::vector<double>(grid.size(), value),
                                std::vector<double>(grid.size(), value), true);
}

FuzzyNumber add(const FuzzyNumber& a, const FuzzyNumber& b) {
  return levelwise(a, b, "add", [](Interval x, Interval y) { return x + y; });
}

FuzzyNumber scalar_mul(double k, const FuzzyNumber& a) {
  return levelwise(a, "scalar_mul", [k](Interval x) { return scale(k, x); });
}

FuzzyNumber mul(const FuzzyNumber& a, const FuzzyNumber& b) {
  return levelwise(a, b, "mul", [](Interval x, Interval y) { return x * y; });
}

FuzzyNumber pow_int(const FuzzyNumber& a, unsigned n) {
  require_proper(a, "pow_int");
  if (n == 0) return singleton(1.0, a.grid());
  FuzzyNumber result = a;
  for (unsigned k = 1; k < n; ++k) result = mul(result, a);
  return result;
}

FuzzyNumber div(const FuzzyNumber& a, const FuzzyNumber& b) {
  require_same_grid(a, b, "div");
  require_proper(b, "div");
  const Interval s = support(b);
  if (s.lo <= 0.0 && s.hi >= 0.0) {
    throw Error(ErrorKind::DivisorStraddlesZero,
                "divisor support [" + format_double(s.lo) + ", " + format_double(s.hi) +
                    "] contains zero");
  }
  return levelwise(a, b, "div", [](Interval x, Interval y) {
    return x * hull(1.0 / y.lo, 1.0 / y.hi);
  });
}

FuzzyNumber gh_difference(const FuzzyNumber& a, const FuzzyNumber& b) {
  require_same_grid(a, b, "gh_difference");
  require_proper(a, "gh_difference");
  require_proper(b, "gh_difference");
  const std::size_t n = a.size();
  std::vector<double> lo(n);
  std::vector<double> hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Interval r = gh_minus(a.cut(i), b.cut(i));
    lo[i] = r.lo;
    hi[i] = r.hi;
  }
  if (is_nested(lo, hi)) {
    return FuzzyNumber::unchecked(a.grid(), std::move(lo), std::move(hi), true);
  }

  // Nestedness violations at the rounding-error scale of the operands are
  // repaired; anything larger is a genuinely improper result.
  const double scale = std::max({max_abs(a.lower()), max_abs(a.upper()), max_abs(b.lower()),
                                 max_abs(b.upper()), std::numeric_limits<double>::min()});
  const double tol = 16.0 * std::numeric_limits<double>::epsilon() * scale;
  for (std::size_t i = 1; i < n; ++i) {
    if (lo[i - 1] - lo[i] > tol || hi[i] - hi[i - 1] > tol) {
      return FuzzyNumber::unchecked(a.grid(), std::move(lo), std::move(hi), false);
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    lo[i] = std::max(lo[i], lo[i - 1]);
    hi[i] = std::min(hi[i], hi[i - 1]);
    if (lo[i] > hi[i]) lo[i] = hi[i] = 0.5 * (lo[i] + hi[i]);
  }
  return FuzzyNumber::unchecked(a.grid(), std::move(lo), std::move(hi), true);
}

double hausdorff_distance(const FuzzyNumber& a, const FuzzyNumber& b) {
  require_same_grid(a, b, "hausdorff_distance");
  require_proper(a, "hausdorff_distance");
  require_proper(b, "hausdorff_distance");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max({d, std::abs(a.lower()[i] - b.lower()[i]), std::abs(a.upper()[i] - b.upper()[i])});
  }
  return d;
}

Interval support(const FuzzyNumber& a) { return a.cut(0); }

Interval core(const FuzzyNumber& a) { return a.cut(a.size() - 1); }

TriangularSpec defuzz_triplet(const FuzzyNumber& a) {
  const Interval s = support(a);
  return {s.lo, core(a).midpoint(), s.hi};
}

FuzzyNumber resample(const FuzzyNumber& a, const AlphaGrid& grid) {
  if (a.grid() == grid) return a;
  const auto src = a.grid().levels();
  const std::size_t n = grid.size();
  std::vector<double> lo(n);
  std::vector<double> hi(n);
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid[i];
    while (j + 2 < src.size() && src[j + 1] < t) ++j;
    const double w = (t - src[j]) / (src[j + 1] - src[j]);
    lo[i] = a.lower()[j] + w * (a.lower()[j + 1] - a.lower()[j]);
    hi[i] = a.upper()[j] + w * (a.upper()[j + 1] - a.upper()[j]);
  }
  return FuzzyNumber::unchecked(grid, std::move(lo), std::move(hi), a.proper());
}

}  // namespace fuzzcalc

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "fuzzcalc/interval.hpp"

namespace fuzzcalc {

inline constexpr std::size_t kDefaultResolution = 101;

/// Ordered membership levels 0 = a_0 < a_1 < ... < a_{n-1} = 1.
///
/// Copies share the level storage, so passing grids around by value is cheap.
/// Two grids compare equal when their levels are identical.
class AlphaGrid {
 public:
  /// Uniform grid with kDefaultResolution levels.
  AlphaGrid();

  /// Uniform grid i/(n-1), i = 0..n-1. Throws InvalidGrid for n < 2.
  static AlphaGrid uniform(std::size_t resolution);

  /// Arbitrary levels; throws InvalidGrid unless strictly increasing from 0 to 1.
  static AlphaGrid from_levels(std::vector<double> levels);

  std::span<const double> levels() const noexcept { return *levels_; }
  std::size_t size() const noexcept { return levels_->size(); }
  double operator[](std::size_t i) const noexcept { return (*levels_)[i]; }

  friend bool operator==(const AlphaGrid& a, const AlphaGrid& b) noexcept;

 private:
  explicit AlphaGrid(std::shared_ptr<const std::vector<double>> levels);

  std::shared_ptr<const std::vector<double>> levels_;
};

struct TriangularSpec {
  double d = 0.0;
  double e = 0.0;
  double f = 0.0;

  friend constexpr bool operator==(const TriangularSpec&, const TriangularSpec&) = default;
};

/// A fuzzy number stored as its alpha-cut envelopes sampled on an AlphaGrid.
///
/// lower(i) <= upper(i) always holds. A number is *proper* when the envelopes
/// are also nested (lower non-decreasing, upper non-increasing in alpha).
/// Only gh_difference can produce an improper value; every other operation
/// rejects one with ImproperOperand.
class FuzzyNumber {
 public:
  /// Singleton zero on the default grid.
  FuzzyNumber();

  const AlphaGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return lower_.size(); }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }
  Interval cut(std::size_t i) const noexcept { return {lower_[i], upper_[i]}; }
  bool proper() const noexcept { return proper_; }

  /// Builds a number from envelopes that the caller has already validated.
  /// Used by operations whose results are proper by construction.
  static FuzzyNumber unchecked(AlphaGrid grid, std::vector<double> lower,
                               std::vector<double> upper, bool proper);

 private:
  FuzzyNumber(AlphaGrid grid, std::vector<double> lower, std::vector<double> upper, bool proper);

  AlphaGrid grid_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  bool proper_ = true;
};

FuzzyNumber make_triangular(const TriangularSpec& spec, const AlphaGrid& grid = AlphaGrid());

/// Validating constructor. Throws NotNested / Crossed / InvalidArgument.
FuzzyNumber from_alpha_grid(std::span<const double> lower, std::span<const double> upper,
                            const AlphaGrid& grid);

FuzzyNumber singleton(double value, const AlphaGrid& grid = AlphaGrid());

FuzzyNumber add(const FuzzyNumber& a, const FuzzyNumber& b);
FuzzyNumber scalar_mul(double k, const FuzzyNumber& a);
FuzzyNumber mul(const FuzzyNumber& a, const FuzzyNumber& b);
FuzzyNumber pow_int(const FuzzyNumber& a, unsigned n);
FuzzyNumber div(const FuzzyNumber& a, const FuzzyNumber& b);
FuzzyNumber gh_difference(const FuzzyNumber& a, const FuzzyNumber& b);

/// sup over grid levels of max(|lower difference|, |upper difference|).
double hausdorff_distance(const FuzzyNumber& a, const FuzzyNumber& b);

Interval support(const FuzzyNumber& a);
Interval core(const FuzzyNumber& a);

/// (lower(0), core midpoint, upper(0)).
TriangularSpec defuzz_triplet(const FuzzyNumber& a);

/// Re-samples the envelopes onto another grid by linear interpolation in alpha.
FuzzyNumber resample(const FuzzyNumber& a, const AlphaGrid& grid);

/// True when the envelopes are nested (ignores the stored flag).
bool is_nested(std::span<const double> lower, std::span<const double> upper) noexcept;

// Precondition helpers shared by the other modules.
void require_proper(const FuzzyNumber& a, const char* op);
void require_same_grid(const FuzzyNumber& a, const FuzzyNumber& b, const char* op);

}  // namespace fuzzcalc

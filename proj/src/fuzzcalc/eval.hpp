#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "fuzzcalc/expr.hpp"

namespace fuzzcalc {

/// Variable bindings for eval(). All bound numbers live on `grid`.
class Env {
 public:
  explicit Env(AlphaGrid grid = AlphaGrid()) : grid_(std::move(grid)) {}

  /// Binds (or rebinds) a variable; throws GridMismatch if value is on another grid.
  Env& bind(std::string name, FuzzyNumber value);

  const AlphaGrid& grid() const noexcept { return grid_; }
  const FuzzyNumber* find(std::string_view name) const;
  const std::map<std::string, FuzzyNumber, std::less<>>& bindings() const noexcept { return bindings_; }

 private:
  AlphaGrid grid_;
  std::map<std::string, FuzzyNumber, std::less<>> bindings_;
};

/// Extension-principle evaluation. Arithmetic nodes delegate to the fuzzy
/// number operations; exp/sin/cos give the exact range of the function over
/// each alpha-cut.
FuzzyNumber eval(const Expr& e, const Env& env);

/// Exact range of the elementary functions over a closed interval.
Interval exp_range(Interval x);
Interval sin_range(Interval x);
Interval cos_range(Interval x);

}  // namespace fuzzcalc

#pragma once

#include <string_view>

#include "fuzzcalc/expr.hpp"

namespace fuzzcalc {

/// Grammar (whitespace insignificant):
///
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' uint)?
///   atom   := number | 'T(' num ',' num ',' num ')' | ident
///           | ident '(' expr ')' | '(' expr ')'
///
/// Functions: exp, sin, cos. Binary '-' is the gH-difference. Triangular
/// literals are materialized on `grid`.
///
/// Throws SyntaxError (with position) or Error(UnknownFunction).
Expr parse_expr(std::string_view text, const AlphaGrid& grid = AlphaGrid());

/// Same grammar extended for power-series coefficient rules in the index
/// variable `n`: the exponent after '^' may be `n` or a parenthesized
/// expression, and `fact(...)` is available. Example: "n / T(4,5,6)^(n-1)".
Expr parse_coefficient_rule(std::string_view text, const AlphaGrid& grid = AlphaGrid());

/// Parses a binding value: "T(d,e,f)" or a crisp decimal number.
FuzzyNumber parse_fuzzy_literal(std::string_view text, const AlphaGrid& grid = AlphaGrid());

}  // namespace fuzzcalc

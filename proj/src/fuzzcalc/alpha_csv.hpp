#pragma once

#include <span>
#include <string>
#include <string_view>

#include "fuzzcalc/fuzzy_number.hpp"

namespace fuzzcalc {

/// `alpha,lower,upper` table, one row per grid level in ascending alpha,
/// shortest round-trip decimals, LF line endings. Each metadata entry is
/// written before the header as a `# ` comment line.
std::string format_alpha_csv(const FuzzyNumber& a, std::span<const std::string> metadata = {});

/// Writes format_alpha_csv to `path`. Throws IoError on failure.
void write_alpha_csv(const FuzzyNumber& a, const std::string& path,
                     std::span<const std::string> metadata = {});

/// Inverse of format_alpha_csv. The alpha column becomes the grid (the shared
/// default grid when the levels match it). Comment and blank lines are skipped.
FuzzyNumber parse_alpha_csv(std::string_view text);
FuzzyNumber read_alpha_csv(const std::string& path);

}  // namespace fuzzcalc

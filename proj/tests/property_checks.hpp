#pragma once

// Randomized property checks over proper triangular pairs. Each check returns
// an empty string on success or a description of the first failure.

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "fuzzcalc/alpha_csv.hpp"
#include "fuzzcalc/fuzzy_number.hpp"

namespace fuzzcalc::testing {

inline constexpr std::uint64_t kPropertySeed = 0x5eed'f022'ca1cULL;

struct RandomPair {
  TriangularSpec a;
  TriangularSpec b;
};

inline TriangularSpec draw_triplet(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  double v[3] = {u(rng), u(rng), u(rng)};
  std::sort(v, v + 3);
  return {v[0], v[1], v[2]};
}

// Brute-force oracle: every sampled x in A's cut and y in B's cut must land in
// the result cut, and the result endpoints must be attained by some sample
// (the samples include the cut endpoints).
template <class Op>
std::string check_containment(const FuzzyNumber& a, const FuzzyNumber& b, const FuzzyNumber& r, Op op,
                              const char* name) {
  constexpr int kSamples = 7;
  for (std::size_t i = 0; i < r.size(); i += 5) {
    const Interval x = a.cut(i);
    const Interval y = b.cut(i);
    const Interval z = r.cut(i);
    const double scale = 1.0 + std::max({std::abs(z.lo), std::abs(z.hi)});
    const double tol = 1e-12 * scale;
    double seen_lo = INFINITY;
    double seen_hi = -INFINITY;
    for (int p = 0; p < kSamples; ++p) {
      for (int q = 0; q < kSamples; ++q) {
        const double xs = x.lo + (x.hi - x.lo) * p / (kSamples - 1);
        const double ys = y.lo + (y.hi - y.lo) * q / (kSamples - 1);
        const double v = op(xs, ys);
        seen_lo = std::min(seen_lo, v);
        seen_hi = std::max(seen_hi, v);
        if (v < z.lo - tol || v > z.hi + tol) {
          std::ostringstream os;
          os << name << ": sample " << v << " outside [" << z.lo << ", " << z.hi << "] at level " << i;
          return os.str();
        }
      }
    }
    if (std::abs(seen_lo - z.lo) > tol || std::abs(seen_hi - z.hi) > tol) {
      std::ostringstream os;
      os << name << ": result [" << z.lo << ", " << z.hi << "] is not tight (samples [" << seen_lo << ", "
         << seen_hi << "]) at level " << i;
      return os.str();
    }
  }
  return {};
}

inline std::string check_nested(const FuzzyNumber& r, const char* name) {
  if (!r.proper() || !is_nested(r.lower(), r.upper())) return std::string(name) + ": result not nested";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r.lower()[i] > r.upper()[i]) return std::string(name) + ": lower > upper";
  }
  return {};
}

inline std::string check_arithmetic(const FuzzyNumber& a, const FuzzyNumber& b) {
  std::string f;
  const auto s = add(a, b);
  if (!(f = check_containment(a, b, s, [](double x, double y) { return x + y; }, "add")).empty()) return f;
  if (!(f = check_nested(s, "add")).empty()) return f;
  const auto m = mul(a, b);
  if (!(f = check_containment(a, b, m, [](double x, double y) { return x * y; }, "mul")).empty()) return f;
  if (!(f = check_nested(m, "mul")).empty()) return f;
  const auto k = scalar_mul(-1.75, a);
  if (!(f = check_nested(k, "scalar_mul")).empty()) return f;
  if (support(b).lo > 0.0 || support(b).hi < 0.0) {
    const auto d = div(a, b);
    if (!(f = check_containment(a, b, d, [](double x, double y) { return x / y; }, "div")).empty()) return f;
    if (!(f = check_nested(d, "div")).empty()) return f;
  }
  return {};
}

inline std::string check_gh_inverse(const FuzzyNumber& a, const FuzzyNumber& b) {
  const auto r = gh_difference(add(a, b), b);
  if (!r.proper()) return "(A+B) gH- B is improper";
  const double scale = 1.0 + std::max(std::abs(support(a).lo), std::abs(support(a).hi)) +
                       std::max(std::abs(support(b).lo), std::abs(support(b).hi));
  const double d = hausdorff_distance(r, a);
  if (d > 1e-13 * scale) {
    std::ostringstream os;
    os << "(A+B) gH- B differs from A by " << d;
    return os.str();
  }
  return {};
}

inline std::string check_metric(const FuzzyNumber& a, const FuzzyNumber& b, const FuzzyNumber& c, double k) {
  const double eps = 1e-12;
  const double ab = hausdorff_distance(a, b);
  const double ba = hausdorff_distance(b, a);
  const double ac = hausdorff_distance(a, c);
  const double cb = hausdorff_distance(c, b);
  std::ostringstream os;
  if (hausdorff_distance(a, a) != 0.0) return "d(A,A) != 0";
  if (ab != ba) return "d(A,B) != d(B,A)";
  if (ab < 0.0) return "negative distance";
  if (ab == 0.0 && (a.lower()[0] != b.lower()[0] || a.upper()[0] != b.upper()[0])) return "d = 0 for distinct numbers";
  if (ab > ac + cb + eps * (1 + ab)) {
    os << "triangle inequality: " << ab << " > " << ac << " + " << cb;
    return os.str();
  }
  const double shifted = hausdorff_distance(add(a, c), add(b, c));
  if (std::abs(shifted - ab) > eps * (1 + ab + std::abs(support(c).hi) + std::abs(support(c).lo))) {
    os << "translation invariance: " << shifted << " vs " << ab;
    return os.str();
  }
  const double scaled = hausdorff_distance(scalar_mul(k, a), scalar_mul(k, b));
  if (std::abs(scaled - std::abs(k) * ab) > eps * (1 + std::abs(k) * ab)) {
    os << "|k| scaling: " << scaled << " vs " << std::abs(k) * ab;
    return os.str();
  }
  const double sub = hausdorff_distance(add(a, b), add(c, b));
  if (sub > ac + eps * (1 + ac)) return "sub-additivity of addition";
  return {};
}

inline std::string check_csv_round_trip(const FuzzyNumber& a) {
  const auto back = parse_alpha_csv(format_alpha_csv(a));
  if (!(back.grid() == a.grid())) return "CSV round trip changed the grid";
  const double d = hausdorff_distance(back, a);
  if (d > 1e-9) {
    std::ostringstream os;
    os << "CSV round trip distance " << d;
    return os.str();
  }
  return {};
}

struct PropertyReport {
  int pairs = 0;
  int failures = 0;
  std::string first_failure;
};

// Runs every property on `n` random pairs. Ranges mix signs so that every
// branch of the four-product and gH formulas is exercised.
inline PropertyReport run_property_suite(int n, std::uint64_t seed = kPropertySeed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> kdist(-4.0, 4.0);
  PropertyReport rep;
  for (int i = 0; i < n; ++i) {
    const TriangularSpec ta = draw_triplet(rng, -10, 10);
    const TriangularSpec tb = draw_triplet(rng, -10, 10);
    const TriangularSpec tc = draw_triplet(rng, -10, 10);
    const auto a = make_triangular(ta);
    const auto b = make_triangular(tb);
    const auto c = make_triangular(tc);
    std::string f = check_arithmetic(a, b);
    if (f.empty()) f = check_gh_inverse(a, b);
    if (f.empty()) f = check_metric(a, b, c, kdist(rng));
    if (f.empty()) f = check_csv_round_trip(mul(a, b));
    ++rep.pairs;
    if (!f.empty()) {
      ++rep.failures;
      if (rep.first_failure.empty()) {
        std::ostringstream os;
        os << "pair " << i << " A=(" << ta.d << "," << ta.e << "," << ta.f << ") B=(" << tb.d << "," << tb.e << ","
           << tb.f << "): " << f;
        rep.first_failure = os.str();
      }
    }
  }
  return rep;
}

}  // namespace fuzzcalc::testing

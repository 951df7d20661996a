#include "fuzzcalc/fuzzcalc.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "fuzzcalc/alpha_csv.hpp"
#include "fuzzcalc/calculus.hpp"
#include "fuzzcalc/error.hpp"
#include "fuzzcalc/ivp.hpp"
#include "fuzzcalc/parser.hpp"
#include "fuzzcalc/series.hpp"

struct fc_grid {
  fuzzcalc::AlphaGrid g;
};
struct fc_number {
  fuzzcalc::FuzzyNumber v;
};
struct fc_expr {
  fuzzcalc::Expr e;
};
struct fc_env {
  fuzzcalc::Env env;
};
struct fc_series {
  fuzzcalc::FuzzyPowerSeries s;
};
struct fc_ivp_solution {
  fuzzcalc::IvpSolution sol;
};

namespace {

using fuzzcalc::Error;
using fuzzcalc::ErrorKind;

thread_local std::string last_error;

fc_status to_status(ErrorKind k) {
  switch (k) {
    case ErrorKind::MalformedTriplet: return FC_MALFORMED_TRIPLET;
    case ErrorKind::NotNested: return FC_NOT_NESTED;
    case ErrorKind::Crossed: return FC_CROSSED;
    case ErrorKind::GridMismatch: return FC_GRID_MISMATCH;
    case ErrorKind::InvalidGrid: return FC_INVALID_GRID;
    case ErrorKind::ImproperOperand: return FC_IMPROPER_OPERAND;
    case ErrorKind::DivisorStraddlesZero: return FC_DIVISOR_STRADDLES_ZERO;
    case ErrorKind::SyntaxError: return FC_SYNTAX_ERROR;
    case ErrorKind::UnknownFunction: return FC_UNKNOWN_FUNCTION;
    case ErrorKind::UnboundVariable: return FC_UNBOUND_VARIABLE;
    case ErrorKind::NotDifferentiable: return FC_NOT_DIFFERENTIABLE;
    case ErrorKind::NoLimit: return FC_NO_LIMIT;
    case ErrorKind::NotSimplifiable: return FC_NOT_SIMPLIFIABLE;
    case ErrorKind::InvalidArgument: return FC_INVALID_ARGUMENT;
    case ErrorKind::Io: return FC_IO_ERROR;
  }
  return FC_INTERNAL_ERROR;
}

// Runs `body`, translating exceptions into a status and the thread-local message.
template <class F>
fc_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return FC_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FC_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FC_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown exception";
    return FC_INTERNAL_ERROR;
  }
}

template <class... Ptrs>
void need(const Ptrs*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw Error(ErrorKind::InvalidArgument, "null argument");
}

fuzzcalc::AlphaGrid grid_of(const fc_grid* g) { return g ? g->g : fuzzcalc::AlphaGrid(); }

fc_number* wrap(fuzzcalc::FuzzyNumber v) { return new fc_number{std::move(v)}; }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> metadata_lines(const char* const* metadata, size_t n) {
  std::vector<std::string> lines;
  if (n > 0) need(metadata);
  for (size_t i = 0; i < n; ++i) {
    need(metadata[i]);
    lines.emplace_back(metadata[i]);
  }
  return lines;
}

template <class Op>
fc_status binary(const fc_number* a, const fc_number* b, fc_number** out, Op op) {
  return guard([&] {
    need(a, b, out);
    *out = wrap(op(a->v, b->v));
  });
}

}  // namespace

extern "C" {

const char* fc_version(void) { return "0.1.0"; }

const char* fc_status_name(fc_status status) {
  switch (status) {
    case FC_OK: return "Ok";
    case FC_OUT_OF_MEMORY: return "OutOfMemory";
    case FC_INTERNAL_ERROR: return "InternalError";
    default: break;
  }
  if (status > FC_OK && status <= FC_IO_ERROR) {
    return fuzzcalc::error_name(static_cast<ErrorKind>(status - 1)).data();
  }
  return "UnknownStatus";
}

const char* fc_last_error(void) { return last_error.c_str(); }

void fc_string_free(char* s) { std::free(s); }

// ---- grids

fc_status fc_grid_uniform(size_t resolution, fc_grid** out) {
  return guard([&] {
    need(out);
    *out = new fc_grid{fuzzcalc::AlphaGrid::uniform(resolution)};
  });
}

fc_status fc_grid_from_levels(const double* levels, size_t n, fc_grid** out) {
  return guard([&] {
    need(out);
    if (n > 0) need(levels);
    *out = new fc_grid{fuzzcalc::AlphaGrid::from_levels(std::vector<double>(levels, levels + n))};
  });
}

size_t fc_grid_size(const fc_grid* g) { return g ? g->g.size() : 0; }
const double* fc_grid_levels(const fc_grid* g) { return g ? g->g.levels().data() : nullptr; }
void fc_grid_free(fc_grid* g) { delete g; }

// ---- numbers

fc_status fc_number_triangular(double d, double e, double f, const fc_grid* g, fc_number** out) {
  return guard([&] {
    need(out);
    *out = wrap(fuzzcalc::make_triangular({d, e, f}, grid_of(g)));
  });
}

fc_status fc_number_singleton(double value, const fc_grid* g, fc_number** out) {
  return guard([&] {
    need(out);
    if (!std::isfinite(value)) throw Error(ErrorKind::InvalidArgument, "value must be finite");
    *out = wrap(fuzzcalc::singleton(value, grid_of(g)));
  });
}

fc_status fc_number_from_alpha_grid(const double* lower, const double* upper, size_t n,
                                    const fc_grid* g, fc_number** out) {
  return guard([&] {
    need(lower, upper, out);
    *out = wrap(fuzzcalc::from_alpha_grid({lower, n}, {upper, n}, grid_of(g)));
  });
}

fc_status fc_number_parse(const char* text, const fc_grid* g, fc_number** out) {
  return guard([&] {
    need(text, out);
    *out = wrap(fuzzcalc::parse_fuzzy_literal(text, grid_of(g)));
  });
}

fc_number* fc_number_clone(const fc_number* a) {
  if (a == nullptr) return nullptr;
  try {
    return new fc_number{a->v};
  } catch (...) {
    return nullptr;
  }
}

void fc_number_free(fc_number* a) { delete a; }

size_t fc_number_size(const fc_number* a) { return a ? a->v.size() : 0; }
const double* fc_number_lower(const fc_number* a) { return a ? a->v.lower().data() : nullptr; }
const double* fc_number_upper(const fc_number* a) { return a ? a->v.upper().data() : nullptr; }
int fc_number_is_proper(const fc_number* a) { return a && a->v.proper() ? 1 : 0; }

fc_status fc_number_grid(const fc_number* a, fc_grid** out) {
  return guard([&] {
    need(a, out);
    *out = new fc_grid{a->v.grid()};
  });
}

fc_status fc_add(const fc_number* a, const fc_number* b, fc_number** out) {
  return binary(a, b, out, [](const auto& x, const auto& y) { return fuzzcalc::add(x, y); });
}

fc_status fc_mul(const fc_number* a, const fc_number* b, fc_number** out) {
  return binary(a, b, out, [](const auto& x, const auto& y) { return fuzzcalc::mul(x, y); });
}

fc_status fc_div(const fc_number* a, const fc_number* b, fc_number** out) {
  return binary(a, b, out, [](const auto& x, const auto& y) { return fuzzcalc::div(x, y); });
}

fc_status fc_gh_difference(const fc_number* a, const fc_number* b, fc_number** out) {
  return binary(a, b, out, [](const auto& x, const auto& y) { return fuzzcalc::gh_difference(x, y); });
}

fc_status fc_scalar_mul(double k, const fc_number* a, fc_number** out) {
  return guard([&] {
    need(a, out);
    *out = wrap(fuzzcalc::scalar_mul(k, a->v));
  });
}

fc_status fc_pow_int(const fc_number* a, unsigned n, fc_number** out) {
  return guard([&] {
    need(a, out);
    *out = wrap(fuzzcalc::pow_int(a->v, n));
  });
}

fc_status fc_resample(const fc_number* a, const fc_grid* g, fc_number** out) {
  return guard([&] {
    need(a, out);
    *out = wrap(fuzzcalc::resample(a->v, grid_of(g)));
  });
}

fc_status fc_hausdorff(const fc_number* a, const fc_number* b, double* out) {
  return guard([&] {
    need(a, b, out);
    *out = fuzzcalc::hausdorff_distance(a->v, b->v);
  });
}

fc_status fc_support(const fc_number* a, double* lo, double* hi) {
  return guard([&] {
    need(a, lo, hi);
    const auto s = fuzzcalc::support(a->v);
    *lo = s.lo;
    *hi = s.hi;
  });
}

fc_status fc_core(const fc_number* a, double* lo, double* hi) {
  return guard([&] {
    need(a, lo, hi);
    const auto c = fuzzcalc::core(a->v);
    *lo = c.lo;
    *hi = c.hi;
  });
}

fc_status fc_triplet(const fc_number* a, double out[3]) {
  return guard([&] {
    need(a, out);
    const auto t = fuzzcalc::defuzz_triplet(a->v);
    out[0] = t.d;
    out[1] = t.e;
    out[2] = t.f;
  });
}

// ---- CSV

fc_status fc_csv_format(const fc_number* a, const char* const* metadata, size_t n_meta, char** out) {
  return guard([&] {
    need(a, out);
    *out = dup_string(fuzzcalc::format_alpha_csv(a->v, metadata_lines(metadata, n_meta)));
  });
}

fc_status fc_csv_write(const fc_number* a, const char* path, const char* const* metadata, size_t n_meta) {
  return guard([&] {
    need(a, path);
    fuzzcalc::write_alpha_csv(a->v, path, metadata_lines(metadata, n_meta));
  });
}

fc_status fc_csv_parse(const char* text, fc_number** out) {
  return guard([&] {
    need(text, out);
    *out = wrap(fuzzcalc::parse_alpha_csv(text));
  });
}

fc_status fc_csv_read(const char* path, fc_number** out) {
  return guard([&] {
    need(path, out);
    *out = wrap(fuzzcalc::read_alpha_csv(path));
  });
}

// ---- expressions

fc_status fc_expr_parse(const char* text, const fc_grid* g, fc_expr** out) {
  return guard([&] {
    need(text, out);
    *out = new fc_expr{fuzzcalc::parse_expr(text, grid_of(g))};
  });
}

fc_status fc_expr_parse_rule(const char* text, const fc_grid* g, fc_expr** out) {
  return guard([&] {
    need(text, out);
    *out = new fc_expr{fuzzcalc::parse_coefficient_rule(text, grid_of(g))};
  });
}

fc_status fc_expr_to_string(const fc_expr* e, char** out) {
  return guard([&] {
    need(e, out);
    *out = dup_string(e->e.to_string());
  });
}

fc_status fc_expr_differentiate(const fc_expr* e, const char* var, fc_expr** out) {
  return guard([&] {
    need(e, var, out);
    *out = new fc_expr{fuzzcalc::differentiate(e->e, var)};
  });
}

void fc_expr_free(fc_expr* e) { delete e; }

fc_status fc_env_new(const fc_grid* g, fc_env** out) {
  return guard([&] {
    need(out);
    *out = new fc_env{fuzzcalc::Env(grid_of(g))};
  });
}

fc_status fc_env_bind(fc_env* env, const char* name, const fc_number* value) {
  return guard([&] {
    need(env, name, value);
    env->env.bind(name, value->v);
  });
}

void fc_env_free(fc_env* env) { delete env; }

fc_status fc_eval(const fc_expr* e, const fc_env* env, fc_number** out) {
  return guard([&] {
    need(e, env, out);
    *out = wrap(fuzzcalc::eval(e->e, env->env));
  });
}

// ---- mH derivative

void fc_limit_schedule_default(fc_limit_schedule* s) {
  if (s == nullptr) return;
  const fuzzcalc::LimitSchedule d;
  s->h0 = 0.0;
  s->shrink = d.shrink;
  s->max_iters = d.max_iters;
  s->tol = d.tol;
}

fc_status fc_mh_derivative(const fc_expr* f, const char* var, const fc_number* x0, const fc_env* env,
                           const fc_limit_schedule* schedule, fc_number** out, fc_derivative_info* info) {
  return guard([&] {
    need(f, var, x0, env, out);
    fuzzcalc::LimitSchedule sched;
    if (schedule != nullptr) {
      if (schedule->h0 > 0.0) sched.h0 = schedule->h0;
      sched.shrink = schedule->shrink;
      sched.max_iters = schedule->max_iters;
      sched.tol = schedule->tol;
    }
    const auto est = fuzzcalc::estimate_mh_derivative(f->e, var, x0->v, env->env, sched);
    if (info != nullptr) *info = {est.gap, est.h_final, est.iterations, est.converged ? 1 : 0};
    if (!est.converged) {
      throw Error(ErrorKind::NotDifferentiable,
                  "one-sided gH quotients did not converge to a common limit (gap " +
                      std::to_string(est.gap) + ")");
    }
    *out = wrap(est.value);
  });
}

fc_status fc_continuity_probe(const fc_expr* f, const char* var, const fc_number* x0, const fc_env* env,
                              double eps, const double* deltas, size_t n_deltas, double* delta_out,
                              int* found) {
  return guard([&] {
    need(f, var, x0, env, delta_out, found);
    if (n_deltas > 0) need(deltas);
    const auto r = fuzzcalc::continuity_probe(f->e, var, x0->v, env->env, eps, {deltas, n_deltas});
    *found = r ? 1 : 0;
    *delta_out = r.value_or(0.0);
  });
}

// ---- series

fc_status fc_series_from_coefficients(const fc_number* center, const fc_number* const* coeffs, size_t n,
                                      fc_series** out) {
  return guard([&] {
    need(center, out);
    if (n > 0) need(coeffs);
    std::vector<fuzzcalc::FuzzyNumber> c;
    c.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      need(coeffs[i]);
      c.push_back(coeffs[i]->v);
    }
    *out = new fc_series{fuzzcalc::FuzzyPowerSeries::with_coefficients(center->v, std::move(c))};
  });
}

fc_status fc_series_from_rule(const fc_number* center, const fc_expr* rule, fc_series** out) {
  return guard([&] {
    need(center, rule, out);
    *out = new fc_series{fuzzcalc::FuzzyPowerSeries::with_rule(center->v, rule->e)};
  });
}

fc_status fc_series_taylor(const fc_expr* f, const char* var, const fc_number* x0, size_t order,
                           const fc_env* env, fc_series** out) {
  return guard([&] {
    need(f, var, x0, env, out);
    *out = new fc_series{fuzzcalc::taylor_series_of(f->e, var, x0->v, order, env->env)};
  });
}

void fc_series_free(fc_series* s) { delete s; }

size_t fc_series_size(const fc_series* s) { return s ? s->s.size().value_or(0) : 0; }

fc_status fc_series_center(const fc_series* s, fc_number** out) {
  return guard([&] {
    need(s, out);
    *out = wrap(s->s.center());
  });
}

fc_status fc_series_coefficient(const fc_series* s, size_t n, fc_number** out) {
  return guard([&] {
    need(s, out);
    *out = wrap(s->s.coefficient(n));
  });
}

fc_status fc_series_partial_sum(const fc_series* s, const fc_number* x, size_t n_terms, fc_number** out) {
  return guard([&] {
    need(s, x, out);
    *out = wrap(fuzzcalc::partial_sum(s->s, x->v, n_terms));
  });
}

fc_status fc_series_radius(const fc_series* s, fc_radius_mode mode, size_t n_probe, fc_number** radius,
                           fc_radius_info* info) {
  return guard([&] {
    need(s, radius);
    fuzzcalc::RadiusResult r;
    switch (mode) {
      case FC_RADIUS_FOUR_QUOTIENT: r = fuzzcalc::radius_four_quotient(s->s, n_probe); break;
      case FC_RADIUS_SYMBOLIC: r = fuzzcalc::radius_symbolic_ratio(s->s); break;
      default: throw Error(ErrorKind::InvalidArgument, "unknown radius mode");
    }
    if (info != nullptr) {
      *info = {r.mode == fuzzcalc::RadiusMode::SymbolicRatio ? FC_RADIUS_SYMBOLIC : FC_RADIUS_FOUR_QUOTIENT,
               r.infinite ? 1 : 0, r.l_lower, r.l_upper, r.n_used};
    }
    *radius = wrap(std::move(r.radius));
  });
}

fc_status fc_series_ratio_test(const fc_series* s, size_t n_probe, fc_ratio_test_result* out) {
  return guard([&] {
    need(s, out);
    const auto r = fuzzcalc::ratio_test(s->s, n_probe);
    *out = {r.converges ? 1 : 0, r.infinite_radius ? 1 : 0, r.l_lower, r.l_upper};
  });
}

fc_status fc_convergence_interval(const fc_number* center, const fc_number* radius, fc_number** lower,
                                  fc_number** upper) {
  return guard([&] {
    need(center, radius, lower, upper);
    auto b = fuzzcalc::convergence_interval(center->v, radius->v);
    fc_number* lo = wrap(std::move(b.lower));
    try {
      *upper = wrap(std::move(b.upper));
    } catch (...) {
      delete lo;
      throw;
    }
    *lower = lo;
  });
}

// ---- IVP

fc_status fc_ivp_solve(const fc_ivp_problem* problem, fc_ivp_solution** out) {
  return guard([&] {
    need(problem, out);
    need(problem->rhs, problem->x0, problem->y0, problem->h);
    fuzzcalc::IvpProblem p{problem->rhs->e, problem->x0->v, problem->y0->v, problem->h->v,
                           problem->order, problem->steps};
    *out = new fc_ivp_solution{fuzzcalc::solve(p)};
  });
}

size_t fc_ivp_solution_size(const fc_ivp_solution* s) { return s ? s->sol.trajectory.size() : 0; }

fc_status fc_ivp_solution_point(const fc_ivp_solution* s, size_t i, fc_number** x, fc_number** y) {
  return guard([&] {
    need(s);
    if (i >= s->sol.trajectory.size()) throw Error(ErrorKind::InvalidArgument, "point index out of range");
    fc_number* xs = x ? wrap(s->sol.trajectory[i].x) : nullptr;
    try {
      if (y) *y = wrap(s->sol.trajectory[i].y);
    } catch (...) {
      delete xs;
      throw;
    }
    if (x) *x = xs;
  });
}

double fc_ivp_solution_truncation(const fc_ivp_solution* s, size_t step) {
  if (s == nullptr || step == 0 || step > s->sol.truncation.size()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return s->sol.truncation[step - 1];
}

void fc_ivp_solution_free(fc_ivp_solution* s) { delete s; }

}  // extern "C"

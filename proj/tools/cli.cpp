#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzcalc/fuzzcalc.h"

namespace fuzzcalc::cli {

namespace {

// ---- handles

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Grid = std::unique_ptr<fc_grid, Deleter<fc_grid, fc_grid_free>>;
using Number = std::unique_ptr<fc_number, Deleter<fc_number, fc_number_free>>;
using ExprH = std::unique_ptr<fc_expr, Deleter<fc_expr, fc_expr_free>>;
using EnvH = std::unique_ptr<fc_env, Deleter<fc_env, fc_env_free>>;
using Series = std::unique_ptr<fc_series, Deleter<fc_series, fc_series_free>>;
using Solution = std::unique_ptr<fc_ivp_solution, Deleter<fc_ivp_solution, fc_ivp_solution_free>>;
using CString = std::unique_ptr<char, Deleter<char, fc_string_free>>;

struct LibraryError {
  fc_status status;
  std::string message;
};

struct UsageError {
  std::string message;
};

void check(fc_status s) {
  if (s != FC_OK) throw LibraryError{s, fc_last_error()};
}

// Calls fn(&raw) and takes ownership of the result.
template <class Handle, class F>
Handle take(F&& fn) {
  typename Handle::pointer raw = nullptr;
  check(fn(&raw));
  return Handle(raw);
}

// ---- formatting

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// Two decimals, cut toward zero rather than rounded. The small nudge keeps
// values such as 2.3 (stored as 2.2999...) from dropping a digit.
std::string two_decimals(double x) {
  if (!std::isfinite(x)) return num(x);
  const double scaled = std::trunc(x * 100.0 + (x < 0 ? -1e-9 : 1e-9));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", scaled / 100.0);
  return buf;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void summarize(std::ostream& out, const std::string& label, const fc_number* a) {
  double s_lo = 0, s_hi = 0, c_lo = 0, c_hi = 0, t[3] = {0, 0, 0};
  check(fc_support(a, &s_lo, &s_hi));
  check(fc_core(a, &c_lo, &c_hi));
  check(fc_triplet(a, t));
  out << label << ":\n"
      << "  support: [" << num(s_lo) << ", " << num(s_hi) << "]\n"
      << "  core: [" << num(c_lo) << ", " << num(c_hi) << "]\n"
      << "  triplet: (" << num(t[0]) << ", " << num(t[1]) << ", " << num(t[2]) << ")\n"
      << "  triplet (2 d.p.): (" << two_decimals(t[0]) << ", " << two_decimals(t[1]) << ", "
      << two_decimals(t[2]) << ")\n";
}

// Writes the alpha table to `path`, or to `out` when path is empty.
void emit_table(std::ostream& out, const fc_number* a, const std::vector<std::string>& meta,
                const std::string& path) {
  std::vector<const char*> lines;
  for (const auto& m : meta) lines.push_back(m.c_str());
  if (!path.empty()) {
    check(fc_csv_write(a, path.c_str(), lines.data(), lines.size()));
    out << "table written to " << path << "\n";
    return;
  }
  CString text = take<CString>([&](char** p) { return fc_csv_format(a, lines.data(), lines.size(), p); });
  out << "\n" << text.get();
}

// ---- shared inputs

struct Common {
  std::size_t alphas = 101;
  std::vector<std::string> binds;
  std::string out_path;
};

void add_common(CLI::App* cmd, Common& c, bool with_binds) {
  cmd->add_option("--alphas", c.alphas, "Number of alpha levels (uniform grid)")->check(CLI::Range(2, 1000000));
  if (with_binds) {
    cmd->add_option("--bind", c.binds, "Variable binding name=T(d,e,f) or name=value (repeatable)");
  }
  cmd->add_option("--out", c.out_path, "Write the alpha-cut CSV here instead of stdout");
}

Grid make_grid(std::size_t n) {
  return take<Grid>([&](fc_grid** g) { return fc_grid_uniform(n, g); });
}

Number parse_number(const std::string& text, const fc_grid* g) {
  return take<Number>([&](fc_number** p) { return fc_number_parse(text.c_str(), g, p); });
}

ExprH parse_expression(const std::string& text, const fc_grid* g) {
  return take<ExprH>([&](fc_expr** p) { return fc_expr_parse(text.c_str(), g, p); });
}

std::string expr_text(const fc_expr* e) {
  CString s = take<CString>([&](char** p) { return fc_expr_to_string(e, p); });
  return s.get();
}

// Binds every name=value pair; returns the bound values by name.
std::map<std::string, Number> bind_all(fc_env* env, const std::vector<std::string>& binds, const fc_grid* g) {
  std::map<std::string, Number> values;
  for (const std::string& b : binds) {
    const auto eq = b.find('=');
    if (eq == std::string::npos) throw UsageError{"binding '" + b + "' is not name=value"};
    const std::string name = trim(b.substr(0, eq));
    if (name.empty()) throw UsageError{"binding '" + b + "' has no name"};
    Number v = parse_number(trim(b.substr(eq + 1)), g);
    check(fc_env_bind(env, name.c_str(), v.get()));
    values.insert_or_assign(name, std::move(v));
  }
  return values;
}

std::vector<std::string> metadata(const std::string& command, const std::vector<std::string>& extra) {
  std::vector<std::string> m{"fuzzcalc " + command};
  m.insert(m.end(), extra.begin(), extra.end());
  return m;
}

// ---- eval

struct EvalArgs {
  Common common;
  std::string expr;
};

void run_eval(const EvalArgs& a, std::ostream& out) {
  Grid g = make_grid(a.common.alphas);
  EnvH env = take<EnvH>([&](fc_env** p) { return fc_env_new(g.get(), p); });
  bind_all(env.get(), a.common.binds, g.get());
  ExprH e = parse_expression(a.expr, g.get());
  Number r = take<Number>([&](fc_number** p) { return fc_eval(e.get(), env.get(), p); });

  out << "expression: " << expr_text(e.get()) << "\n";
  summarize(out, "value", r.get());
  std::vector<std::string> meta{"expr = " + a.expr};
  for (const auto& b : a.common.binds) meta.push_back("bind " + b);
  emit_table(out, r.get(), metadata("eval", meta), a.common.out_path);
}

// ---- derive

struct DeriveArgs {
  Common common;
  std::string expr;
  std::string var = "x";
  double tol = 1e-7;
};

void run_derive(const DeriveArgs& a, std::ostream& out) {
  Grid g = make_grid(a.common.alphas);
  EnvH env = take<EnvH>([&](fc_env** p) { return fc_env_new(g.get(), p); });
  auto values = bind_all(env.get(), a.common.binds, g.get());
  const auto x0 = values.find(a.var);
  if (x0 == values.end()) throw UsageError{"--bind " + a.var + "=... is required (the point x0)"};
  ExprH e = parse_expression(a.expr, g.get());
  ExprH d = take<ExprH>([&](fc_expr** p) { return fc_expr_differentiate(e.get(), a.var.c_str(), p); });

  fc_limit_schedule sched;
  fc_limit_schedule_default(&sched);
  sched.tol = a.tol;
  fc_derivative_info info{};
  Number r = take<Number>([&](fc_number** p) {
    return fc_mh_derivative(e.get(), a.var.c_str(), x0->second.get(), env.get(), &sched, p, &info);
  });

  out << "expression: " << expr_text(e.get()) << "\n"
      << "symbolic derivative: " << expr_text(d.get()) << "\n";
  summarize(out, "mH derivative", r.get());
  out << "diagnostics:\n"
      << "  convergence gap: " << num(info.gap) << "\n"
      << "  iterations: " << info.iterations << "\n"
      << "  final h: " << num(info.h_final) << "\n";
  std::vector<std::string> meta{"expr = " + a.expr, "var = " + a.var};
  for (const auto& b : a.common.binds) meta.push_back("bind " + b);
  emit_table(out, r.get(), metadata("derive", meta), a.common.out_path);
}

// ---- series

struct SeriesArgs {
  Common common;
  std::string taylor_of;
  std::string coeff_rule;
  std::string var = "x";
  std::string center;
  std::size_t order = 10;
  std::string radius_mode;
  std::size_t n_probe = 64;
  std::string at;
  std::size_t terms = 0;
};

void print_radius(std::ostream& out, const fc_number* r, const fc_radius_info& info) {
  out << "radius mode: " << (info.mode == FC_RADIUS_SYMBOLIC ? "symbolic" : "four-quotient") << "\n";
  if (info.mode == FC_RADIUS_FOUR_QUOTIENT) out << "  probe index: " << info.n_used << "\n";
  if (info.infinite) {
    out << "radius: infinite\n";
  } else {
    summarize(out, "radius", r);
    if (!fc_number_is_proper(r)) out << "  note: radius envelopes are not nested\n";
  }
  out << "  L_lower: " << num(info.l_lower) << "\n  L_upper: " << num(info.l_upper) << "\n";
}

void run_series(const SeriesArgs& a, std::ostream& out) {
  const bool taylor = !a.taylor_of.empty();
  if (taylor == !a.coeff_rule.empty()) throw UsageError{"give exactly one of --taylor-of or --coeff-rule"};
  if (!a.radius_mode.empty() && a.radius_mode != "four-quotient" && a.radius_mode != "symbolic") {
    throw UsageError{"--radius-mode must be four-quotient or symbolic"};
  }
  if (taylor && a.radius_mode == "symbolic") throw UsageError{"symbolic radius needs --coeff-rule"};
  if (taylor && a.center.empty()) throw UsageError{"--center is required with --taylor-of"};

  Grid g = make_grid(a.common.alphas);
  EnvH env = take<EnvH>([&](fc_env** p) { return fc_env_new(g.get(), p); });
  bind_all(env.get(), a.common.binds, g.get());
  Number center = a.center.empty() ? take<Number>([&](fc_number** p) { return fc_number_singleton(0.0, g.get(), p); })
                                   : parse_number(a.center, g.get());

  Series s;
  std::size_t probe = a.n_probe;
  std::vector<std::string> meta;
  if (taylor) {
    ExprH f = parse_expression(a.taylor_of, g.get());
    s = take<Series>([&](fc_series** p) {
      return fc_series_taylor(f.get(), a.var.c_str(), center.get(), a.order, env.get(), p);
    });
    // Probe indices that are multiples of 8 keep periodic (sin/cos) coefficient
    // patterns in phase between n/2 and n.
    probe = a.order >= 9 ? 8 * ((a.order - 1) / 8) : 0;
    out << "series: Taylor expansion of " << a.taylor_of << " in " << a.var << " about " << a.center
        << ", order " << a.order << "\n";
    for (std::size_t k = 0; k <= a.order; ++k) {
      Number c = take<Number>([&](fc_number** p) { return fc_series_coefficient(s.get(), k, p); });
      double t[3];
      check(fc_triplet(c.get(), t));
      out << "  a_" << k << ": (" << num(t[0]) << ", " << num(t[1]) << ", " << num(t[2]) << ")\n";
    }
    meta = {"taylor-of = " + a.taylor_of, "var = " + a.var, "center = " + a.center,
            "order = " + std::to_string(a.order)};
  } else {
    ExprH rule = take<ExprH>([&](fc_expr** p) { return fc_expr_parse_rule(a.coeff_rule.c_str(), g.get(), p); });
    s = take<Series>([&](fc_series** p) { return fc_series_from_rule(center.get(), rule.get(), p); });
    out << "series: coefficient rule a_n = " << expr_text(rule.get()) << "\n";
    meta = {"coeff-rule = " + a.coeff_rule};
    if (!a.center.empty()) meta.push_back("center = " + a.center);
  }

  // Radius: explicit mode, or symbolic for rules; Taylor series fall back to
  // the ratio test alone.
  Number radius;
  fc_radius_info info{};
  std::string mode = a.radius_mode;
  if (mode.empty() && !taylor) mode = "symbolic";
  if (!mode.empty()) {
    if (mode == "four-quotient" && probe == 0) throw UsageError{"four-quotient radius needs --order >= 9"};
    const fc_radius_mode m = mode == "symbolic" ? FC_RADIUS_SYMBOLIC : FC_RADIUS_FOUR_QUOTIENT;
    radius = take<Number>([&](fc_number** p) { return fc_series_radius(s.get(), m, probe, p, &info); });
    print_radius(out, radius.get(), info);
  }

  if (probe > 0) {
    fc_ratio_test_result rt{};
    const fc_status st = fc_series_ratio_test(s.get(), probe, &rt);
    if (st == FC_OK) {
      out << "ratio test (alpha = 0, probe index " << probe << "): "
          << (rt.converges ? "converges" : "not convergent")
          << (rt.infinite_radius ? " (infinite radius)" : "") << "\n"
          << "  L_lower: " << num(rt.l_lower) << "\n  L_upper: " << num(rt.l_upper) << "\n";
    } else if (st == FC_NO_LIMIT) {
      out << "ratio test: no limit detected (" << fc_last_error() << ")\n";
    } else {
      check(st);
    }
  }

  if (radius && !info.infinite && fc_number_is_proper(radius.get()) && fc_number_is_proper(center.get())) {
    Number lo;
    Number hi;
    fc_number* raw_lo = nullptr;
    fc_number* raw_hi = nullptr;
    check(fc_convergence_interval(center.get(), radius.get(), &raw_lo, &raw_hi));
    lo.reset(raw_lo);
    hi.reset(raw_hi);
    out << "convergence requires lower < x < upper, level-wise:\n";
    summarize(out, "lower bound", lo.get());
    summarize(out, "upper bound", hi.get());
  }

  // Table: partial sum at --at when given, else the radius.
  if (!a.at.empty()) {
    const std::size_t terms = a.terms > 0 ? a.terms : (taylor ? a.order + 1 : 10);
    Number x = parse_number(a.at, g.get());
    Number sum = take<Number>([&](fc_number** p) { return fc_series_partial_sum(s.get(), x.get(), terms, p); });
    summarize(out, "partial sum with " + std::to_string(terms) + " terms at " + a.at, sum.get());
    meta.push_back("partial sum at " + a.at + " with " + std::to_string(terms) + " terms");
    emit_table(out, sum.get(), metadata("series", meta), a.common.out_path);
  } else if (radius && fc_number_is_proper(radius.get())) {
    meta.push_back("radius (" + mode + ")");
    emit_table(out, radius.get(), metadata("series", meta), a.common.out_path);
  } else if (!a.common.out_path.empty()) {
    out << "no table written: no proper radius to tabulate (use --at for a partial sum)\n";
  }
}

// ---- solve-ivp

struct IvpArgs {
  Common common;
  std::string file;
  std::string rhs;
  std::string x0;
  std::string y0;
  std::string h;
  std::optional<int> order;
  std::optional<int> steps;
};

// key = value lines with '#' comments.
std::map<std::string, std::string> read_problem_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw LibraryError{FC_IO_ERROR, "IoError: cannot open '" + path + "'"};
  std::map<std::string, std::string> kv;
  static const char* const keys[] = {"command", "rhs", "x0", "y0", "h", "order", "steps", "alphas", "out"};
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError{path + ":" + std::to_string(line_no) + ": expected key = value"};
    }
    const std::string key = trim(line.substr(0, eq));
    if (std::find(std::begin(keys), std::end(keys), key) == std::end(keys)) {
      throw UsageError{path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'"};
    }
    kv[key] = trim(line.substr(eq + 1));
  }
  if (kv.count("command") && kv["command"] != "solve-ivp") {
    throw UsageError{path + ": command must be solve-ivp"};
  }
  return kv;
}

long parse_int(const std::string& text, const std::string& key) {
  long v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw UsageError{key + " must be an integer, got '" + text + "'"};
  }
  return v;
}

void run_solve_ivp(IvpArgs a, bool alphas_given, std::ostream& out) {
  if (!a.file.empty()) {
    auto kv = read_problem_file(a.file);
    auto fill = [&](std::string& field, const char* key) {
      if (field.empty() && kv.count(key)) field = kv[key];
    };
    fill(a.rhs, "rhs");
    fill(a.x0, "x0");
    fill(a.y0, "y0");
    fill(a.h, "h");
    fill(a.common.out_path, "out");
    if (!a.order && kv.count("order")) a.order = static_cast<int>(parse_int(kv["order"], "order"));
    if (!a.steps && kv.count("steps")) a.steps = static_cast<int>(parse_int(kv["steps"], "steps"));
    if (!alphas_given && kv.count("alphas")) {
      const long n = parse_int(kv["alphas"], "alphas");
      if (n < 2) throw UsageError{"alphas must be at least 2"};
      a.common.alphas = static_cast<std::size_t>(n);
    }
  }
  for (auto [field, key] : {std::pair{&a.rhs, "rhs"}, {&a.x0, "x0"}, {&a.y0, "y0"}, {&a.h, "h"}}) {
    if (field->empty()) throw UsageError{std::string("missing ") + key + " (flag --" + key + " or problem file)"};
  }

  Grid g = make_grid(a.common.alphas);
  ExprH rhs = parse_expression(a.rhs, g.get());
  Number x0 = parse_number(a.x0, g.get());
  Number y0 = parse_number(a.y0, g.get());
  Number h = parse_number(a.h, g.get());
  const fc_ivp_problem problem{rhs.get(), x0.get(), y0.get(), h.get(), a.order.value_or(2), a.steps.value_or(1)};
  Solution sol = take<Solution>([&](fc_ivp_solution** p) { return fc_ivp_solve(&problem, p); });

  out << "problem: y' = " << expr_text(rhs.get()) << ", y(" << a.x0 << ") = " << a.y0 << ", h = " << a.h
      << ", order " << problem.order << ", " << problem.steps << " step(s)\n";
  const std::size_t n = fc_ivp_solution_size(sol.get());
  Number last_y;
  for (std::size_t i = 1; i < n; ++i) {
    fc_number* rx = nullptr;
    fc_number* ry = nullptr;
    check(fc_ivp_solution_point(sol.get(), i, &rx, &ry));
    Number x(rx);
    last_y.reset(ry);
    double tx[3], ty[3];
    check(fc_triplet(x.get(), tx));
    check(fc_triplet(last_y.get(), ty));
    out << "step " << i << ": x = (" << num(tx[0]) << ", " << num(tx[1]) << ", " << num(tx[2]) << "), y = ("
        << num(ty[0]) << ", " << num(ty[1]) << ", " << num(ty[2]) << "), truncation term "
        << num(fc_ivp_solution_truncation(sol.get(), i)) << "\n";
  }
  summarize(out, "final y", last_y.get());
  out << "diagnostics:\n  truncation magnitude: " << num(fc_ivp_solution_truncation(sol.get(), n - 1)) << "\n";

  std::vector<std::string> meta{"rhs = " + a.rhs, "x0 = " + a.x0, "y0 = " + a.y0, "h = " + a.h,
                                "order = " + std::to_string(problem.order),
                                "steps = " + std::to_string(problem.steps)};
  emit_table(out, last_y.get(), metadata("solve-ivp", meta), a.common.out_path);
}

bool is_parse_status(fc_status s) { return s == FC_SYNTAX_ERROR || s == FC_UNKNOWN_FUNCTION; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy-number calculus: evaluation, mH derivatives, power series and fuzzy IVPs", "fuzzcalc"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an expression over fuzzy bindings");
  eval_cmd->add_option("--expr", eval_args.expr, "Expression")->required();
  add_common(eval_cmd, eval_args.common, true);

  DeriveArgs derive_args;
  auto* derive_cmd = app.add_subcommand("derive", "Numerical mH derivative at a fuzzy point");
  derive_cmd->add_option("--expr", derive_args.expr, "Expression")->required();
  derive_cmd->add_option("--var", derive_args.var, "Differentiation variable (bind it to the point)");
  derive_cmd->add_option("--tol", derive_args.tol, "Convergence tolerance")->check(CLI::PositiveNumber);
  add_common(derive_cmd, derive_args.common, true);

  SeriesArgs series_args;
  auto* series_cmd = app.add_subcommand("series", "Fuzzy power series: coefficients, radius, ratio test");
  series_cmd->add_option("--taylor-of", series_args.taylor_of, "Expand this expression as a Taylor series");
  series_cmd->add_option("--coeff-rule", series_args.coeff_rule, "Coefficient rule in n, e.g. n/T(4,5,6)^(n-1)");
  series_cmd->add_option("--var", series_args.var, "Expansion variable");
  series_cmd->add_option("--center", series_args.center, "Expansion point T(d,e,f) or a number");
  series_cmd->add_option("--order", series_args.order, "Highest Taylor coefficient")->check(CLI::Range(0, 40));
  series_cmd->add_option("--radius-mode", series_args.radius_mode, "four-quotient | symbolic");
  series_cmd->add_option("--n-probe", series_args.n_probe, "Probe index for rule series")->check(CLI::Range(2, 150));
  series_cmd->add_option("--at", series_args.at, "Also evaluate the partial sum at this point");
  series_cmd->add_option("--terms", series_args.terms, "Terms in the partial sum");
  add_common(series_cmd, series_args.common, true);

  IvpArgs ivp_args;
  int ivp_order = 0;
  int ivp_steps = 0;
  auto* ivp_cmd = app.add_subcommand("solve-ivp", "Taylor method for y' = F(x, y) with fuzzy data");
  ivp_cmd->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  ivp_cmd->add_option("--file", ivp_args.file, "Problem file (key = value lines)");
  ivp_cmd->add_option("--rhs", ivp_args.rhs, "Right-hand side F(x, y)");
  ivp_cmd->add_option("--x0", ivp_args.x0, "Initial point");
  ivp_cmd->add_option("--y0", ivp_args.y0, "Initial value");
  ivp_cmd->add_option("--h", ivp_args.h, "Fuzzy step");
  auto* order_opt = ivp_cmd->add_option("--order", ivp_order, "Taylor order (1-4, default 2)");
  auto* steps_opt = ivp_cmd->add_option("--steps", ivp_steps, "Number of steps (default 1)");
  add_common(ivp_cmd, ivp_args.common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*eval_cmd) run_eval(eval_args, out);
    if (*derive_cmd) run_derive(derive_args, out);
    if (*series_cmd) run_series(series_args, out);
    if (*ivp_cmd) {
      if (*order_opt) ivp_args.order = ivp_order;
      if (*steps_opt) ivp_args.steps = ivp_steps;
      const bool alphas_given = ivp_cmd->count("--alphas") > 0;
      run_solve_ivp(std::move(ivp_args), alphas_given, out);
    }
  } catch (const UsageError& e) {
    err << "fuzzcalc: usage: " << e.message << "\n";
    return kUsageError;
  } catch (const LibraryError& e) {
    err << "fuzzcalc: " << e.message << "\n";
    return is_parse_status(e.status) ? kUsageError : kDomainError;
  } catch (const std::exception& e) {
    err << "fuzzcalc: InternalError: " << e.what() << "\n";
    return kDomainError;
  }
  return kOk;
}

}  // namespace fuzzcalc::cli

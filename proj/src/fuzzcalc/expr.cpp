#include "fuzzcalc/expr.hpp"

#include <algorithm>
#include <cmath>

#include "fuzzcalc/error.hpp"
#include "fuzzcalc/number_format.hpp"

namespace fuzzcalc {

struct Expr::Node {
  NodeKind kind;
  std::vector<Expr> children;
  double crisp = 0.0;
  unsigned exponent = 0;
  std::string name;
  std::optional<FuzzyNumber> fuzzy;
  std::optional<TriangularSpec> label;
};

namespace {

bool is_binary(NodeKind k) {
  return k == NodeKind::Add || k == NodeKind::GhSub || k == NodeKind::Mul || k == NodeKind::Div ||
         k == NodeKind::PowExpr;
}

bool is_unary(NodeKind k) {
  return k == NodeKind::Neg || k == NodeKind::Exp || k == NodeKind::Sin || k == NodeKind::Cos ||
         k == NodeKind::Factorial;
}

std::string crisp_text(double v) {
  std::string s = format_double(v);
  return v < 0 ? "(" + s + ")" : s;
}

bool same_fuzzy(const FuzzyNumber& a, const FuzzyNumber& b) {
  return a.grid() == b.grid() && std::ranges::equal(a.lower(), b.lower()) &&
         std::ranges::equal(a.upper(), b.upper());
}

}  // namespace

Expr Expr::fuzzy(FuzzyNumber value, std::optional<TriangularSpec> label) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::FuzzyConst;
  n->fuzzy = std::move(value);
  n->label = label;
  return Expr(std::move(n));
}

Expr Expr::crisp(double value) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::CrispConst;
  n->crisp = value;
  return Expr(std::move(n));
}

Expr Expr::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Var;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::unary(NodeKind kind, Expr operand) {
  if (!is_unary(kind)) throw Error(ErrorKind::InvalidArgument, "node kind is not unary");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children.push_back(std::move(operand));
  return Expr(std::move(n));
}

Expr Expr::binary(NodeKind kind, Expr lhs, Expr rhs) {
  if (!is_binary(kind)) throw Error(ErrorKind::InvalidArgument, "node kind is not binary");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  return Expr(std::move(n));
}

Expr Expr::pow_int(Expr base, unsigned exponent) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::PowInt;
  n->exponent = exponent;
  n->children.push_back(std::move(base));
  return Expr(std::move(n));
}

NodeKind Expr::kind() const noexcept { return node_->kind; }
std::size_t Expr::arity() const noexcept { return node_->children.size(); }
const Expr& Expr::child(std::size_t i) const { return node_->children.at(i); }

double Expr::crisp_value() const {
  if (kind() != NodeKind::CrispConst) throw Error(ErrorKind::InvalidArgument, "not a crisp constant");
  return node_->crisp;
}

const FuzzyNumber& Expr::fuzzy_value() const {
  if (kind() != NodeKind::FuzzyConst) throw Error(ErrorKind::InvalidArgument, "not a fuzzy constant");
  return *node_->fuzzy;
}

const std::optional<TriangularSpec>& Expr::fuzzy_label() const { return node_->label; }

const std::string& Expr::name() const {
  if (kind() != NodeKind::Var) throw Error(ErrorKind::InvalidArgument, "not a variable");
  return node_->name;
}

unsigned Expr::exponent() const {
  if (kind() != NodeKind::PowInt) throw Error(ErrorKind::InvalidArgument, "not an integer power");
  return node_->exponent;
}

bool Expr::is_crisp(double v) const noexcept {
  return kind() == NodeKind::CrispConst && node_->crisp == v;
}

namespace {

// Binary, negation and negative-constant text is already parenthesized; a
// power base that is itself a power needs one more pair.
std::string power_base_text(const Expr& b) {
  const bool wrap = b.kind() == NodeKind::PowInt || b.kind() == NodeKind::PowExpr;
  return wrap ? "(" + b.to_string() + ")" : b.to_string();
}

// Call syntax supplies the parentheses, so drop the binary node's own pair.
std::string call_text(const char* fn, const Expr& arg) {
  std::string s = arg.to_string();
  if (is_binary(arg.kind()) && arg.kind() != NodeKind::PowExpr) s = s.substr(1, s.size() - 2);
  return std::string(fn) + "(" + s + ")";
}

}  // namespace

std::string Expr::to_string() const {
  const Node& n = *node_;
  switch (n.kind) {
    case NodeKind::CrispConst: return crisp_text(n.crisp);
    case NodeKind::Var: return n.name;
    case NodeKind::FuzzyConst: {
      if (n.label) {
        return "T(" + format_double(n.label->d) + "," + format_double(n.label->e) + "," +
               format_double(n.label->f) + ")";
      }
      const TriangularSpec t = defuzz_triplet(*n.fuzzy);
      return "F<" + format_double(t.d) + "," + format_double(t.e) + "," + format_double(t.f) + ">";
    }
    case NodeKind::Add: return "(" + n.children[0].to_string() + " + " + n.children[1].to_string() + ")";
    case NodeKind::GhSub: return "(" + n.children[0].to_string() + " - " + n.children[1].to_string() + ")";
    case NodeKind::Mul: return "(" + n.children[0].to_string() + " * " + n.children[1].to_string() + ")";
    case NodeKind::Div: return "(" + n.children[0].to_string() + " / " + n.children[1].to_string() + ")";
    case NodeKind::PowInt: return power_base_text(n.children[0]) + "^" + std::to_string(n.exponent);
    case NodeKind::PowExpr: {
      const Expr& k = n.children[1];
      const bool bare = k.kind() == NodeKind::Var || k.kind() == NodeKind::Neg ||
                        (is_binary(k.kind()) && k.kind() != NodeKind::PowExpr);
      return power_base_text(n.children[0]) + "^" + (bare ? k.to_string() : "(" + k.to_string() + ")");
    }
    case NodeKind::Neg: return "(-" + n.children[0].to_string() + ")";
    case NodeKind::Exp: return call_text("exp", n.children[0]);
    case NodeKind::Sin: return call_text("sin", n.children[0]);
    case NodeKind::Cos: return call_text("cos", n.children[0]);
    case NodeKind::Factorial: return call_text("fact", n.children[0]);
  }
  return "?";
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const Expr::Node& x = *a.node_;
  const Expr::Node& y = *b.node_;
  if (x.kind != y.kind || x.children.size() != y.children.size()) return false;
  switch (x.kind) {
    case NodeKind::CrispConst:
      if (x.crisp != y.crisp) return false;
      break;
    case NodeKind::Var:
      if (x.name != y.name) return false;
      break;
    case NodeKind::FuzzyConst:
      if (!same_fuzzy(*x.fuzzy, *y.fuzzy)) return false;
      break;
    case NodeKind::PowInt:
      if (x.exponent != y.exponent) return false;
      break;
    default: break;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace build {

Expr sum(Expr a, Expr b) {
  if (a.is_crisp_const() && b.is_crisp_const()) return Expr::crisp(a.crisp_value() + b.crisp_value());
  if (a.is_crisp(0.0)) return b;
  if (b.is_crisp(0.0)) return a;
  return Expr::binary(NodeKind::Add, std::move(a), std::move(b));
}

Expr gh_sub(Expr a, Expr b) {
  if (a.is_crisp_const() && b.is_crisp_const()) return Expr::crisp(a.crisp_value() - b.crisp_value());
  if (b.is_crisp(0.0)) return a;
  if (a.is_crisp(0.0)) return negate(std::move(b));
  return Expr::binary(NodeKind::GhSub, std::move(a), std::move(b));
}

Expr product(Expr a, Expr b) {
  if (b.is_crisp_const() && !a.is_crisp_const()) std::swap(a, b);
  if (a.is_crisp_const()) {
    const double c = a.crisp_value();
    if (b.is_crisp_const()) return Expr::crisp(c * b.crisp_value());
    if (c == 0.0) return Expr::crisp(0.0);
    if (c == 1.0) return b;
    if (b.kind() == NodeKind::Mul && b.child(0).is_crisp_const()) {
      return product(Expr::crisp(c * b.child(0).crisp_value()), b.child(1));
    }
    if (b.kind() == NodeKind::Neg) return product(Expr::crisp(-c), b.child(0));
  }
  return Expr::binary(NodeKind::Mul, std::move(a), std::move(b));
}

Expr quotient(Expr a, Expr b) {
  if (a.is_crisp_const() && b.is_crisp_const() && b.crisp_value() != 0.0) {
    return Expr::crisp(a.crisp_value() / b.crisp_value());
  }
  if (b.is_crisp(1.0)) return a;
  if (a.is_crisp(0.0)) return Expr::crisp(0.0);
  return Expr::binary(NodeKind::Div, std::move(a), std::move(b));
}

Expr power(Expr a, unsigned n) {
  if (n == 0) return Expr::crisp(1.0);
  if (n == 1) return a;
  if (a.is_crisp_const()) return Expr::crisp(std::pow(a.crisp_value(), static_cast<double>(n)));
  return Expr::pow_int(std::move(a), n);
}

Expr negate(Expr a) {
  if (a.is_crisp_const()) return Expr::crisp(-a.crisp_value());
  if (a.kind() == NodeKind::Neg) return a.child(0);
  if (a.kind() == NodeKind::Mul && a.child(0).is_crisp_const()) {
    return product(Expr::crisp(-a.child(0).crisp_value()), a.child(1));
  }
  return Expr::unary(NodeKind::Neg, std::move(a));
}

}  // namespace build

Expr differentiate(const Expr& e, std::string_view var) {
  using namespace build;
  switch (e.kind()) {
    case NodeKind::FuzzyConst:
    case NodeKind::CrispConst: return Expr::crisp(0.0);
    case NodeKind::Var: return Expr::crisp(e.name() == var ? 1.0 : 0.0);
    case NodeKind::Add: return sum(differentiate(e.child(0), var), differentiate(e.child(1), var));
    case NodeKind::GhSub: return gh_sub(differentiate(e.child(0), var), differentiate(e.child(1), var));
    case NodeKind::Mul: {
      const Expr& u = e.child(0);
      const Expr& v = e.child(1);
      return sum(product(differentiate(u, var), v), product(u, differentiate(v, var)));
    }
    case NodeKind::Div: {
      const Expr& u = e.child(0);
      const Expr& v = e.child(1);
      return quotient(gh_sub(product(differentiate(u, var), v), product(u, differentiate(v, var))),
                      power(v, 2));
    }
    case NodeKind::PowInt: {
      const unsigned n = e.exponent();
      if (n == 0) return Expr::crisp(0.0);
      const Expr& u = e.child(0);
      return product(Expr::crisp(static_cast<double>(n)),
                     product(power(u, n - 1), differentiate(u, var)));
    }
    case NodeKind::Neg: return negate(differentiate(e.child(0), var));
    case NodeKind::Exp: return product(e, differentiate(e.child(0), var));
    case NodeKind::Sin:
      return product(Expr::unary(NodeKind::Cos, e.child(0)), differentiate(e.child(0), var));
    case NodeKind::Cos:
      return product(negate(Expr::unary(NodeKind::Sin, e.child(0))), differentiate(e.child(0), var));
    case NodeKind::PowExpr:
    case NodeKind::Factorial:
      if (!depends_on(e, var)) return Expr::crisp(0.0);
      throw Error(ErrorKind::InvalidArgument,
                  "index-dependent powers and factorials cannot be differentiated");
  }
  return Expr::crisp(0.0);
}

bool depends_on(const Expr& e, std::string_view name) {
  if (e.kind() == NodeKind::Var) return e.name() == name;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    if (depends_on(e.child(i), name)) return true;
  }
  return false;
}

bool contains_gh_sub(const Expr& e) {
  if (e.kind() == NodeKind::GhSub) return true;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    if (contains_gh_sub(e.child(i))) return true;
  }
  return false;
}

}  // namespace fuzzcalc

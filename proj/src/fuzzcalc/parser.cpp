#include "fuzzcalc/parser.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "fuzzcalc/error.hpp"

namespace fuzzcalc {

namespace {

constexpr int kMaxDepth = 200;

class Parser {
 public:
  Parser(std::string_view text, const AlphaGrid& grid, bool rule_mode)
      : text_(text), grid_(grid), rule_mode_(rule_mode) {}

  Expr parse_all() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

  FuzzyNumber parse_literal() {
    skip_ws();
    FuzzyNumber value;
    if (peek_word("T") && next_non_ws_after(pos_ + 1) == '(') {
      value = triangular().fuzzy_value();
    } else {
      value = singleton(signed_number(), grid_);
    }
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters after literal");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  char next_non_ws_after(std::size_t p) const {
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p < text_.size() ? text_[p] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  bool peek_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    return end >= text_.size() || !is_ident_char(text_[end]);
  }

  static bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) p_.fail("expression nested too deeply");
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  Expr expr() {
    DepthGuard guard(*this);
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(NodeKind::Add, std::move(lhs), term());
      } else if (accept('-')) {
        lhs = Expr::binary(NodeKind::GhSub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(NodeKind::Mul, std::move(lhs), factor());
      } else if (accept('/')) {
        lhs = Expr::binary(NodeKind::Div, std::move(lhs), factor());
      } else {
        return lhs;
      }
    }
  }

  Expr factor() {
    DepthGuard guard(*this);
    if (accept('-')) return Expr::unary(NodeKind::Neg, factor());
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!accept('^')) return base;
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return Expr::pow_int(std::move(base), uint_literal());
    if (rule_mode_) {
      if (accept('(')) {
        Expr exponent = expr();
        expect(')');
        return Expr::binary(NodeKind::PowExpr, std::move(base), std::move(exponent));
      }
      if (peek_word("n")) {
        ++pos_;
        return Expr::binary(NodeKind::PowExpr, std::move(base), Expr::var("n"));
      }
      fail("expected an integer, 'n' or '(' after '^'");
    }
    fail("expected a non-negative integer exponent after '^'");
  }

  Expr atom() {
    const char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::crisp(number());
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      const std::string ident(text_.substr(start, pos_ - start));
      if (peek() != '(') return Expr::var(ident);
      if (ident == "T") {
        pos_ = start;
        return triangular();
      }
      NodeKind kind;
      if (ident == "exp") {
        kind = NodeKind::Exp;
      } else if (ident == "sin") {
        kind = NodeKind::Sin;
      } else if (ident == "cos") {
        kind = NodeKind::Cos;
      } else if (rule_mode_ && ident == "fact") {
        kind = NodeKind::Factorial;
      } else {
        throw Error(ErrorKind::UnknownFunction,
                    "'" + ident + "' at position " + std::to_string(start));
      }
      expect('(');
      Expr arg = expr();
      expect(')');
      return Expr::unary(kind, std::move(arg));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr triangular() {
    skip_ws();
    pos_ += 1;  // 'T'
    expect('(');
    const double d = signed_number();
    expect(',');
    const double e = signed_number();
    expect(',');
    const double f = signed_number();
    expect(')');
    const TriangularSpec spec{d, e, f};
    return Expr::fuzzy(make_triangular(spec, grid_), spec);
  }

  double signed_number() {
    const bool negative = accept('-');
    if (!negative) accept('+');
    const char c = peek();
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.') fail("expected a number");
    const double v = number();
    return negative ? -v : v;
  }

  double number() {
    skip_ws();
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) fail("malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        digits();
      }
    }
    double value = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return value;
  }

  unsigned uint_literal() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    unsigned value = 0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || value > 1024) {
      pos_ = start;
      fail("exponent must be an integer in [0, 1024]");
    }
    return value;
  }

  std::string_view text_;
  const AlphaGrid& grid_;
  bool rule_mode_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const AlphaGrid& grid) {
  return Parser(text, grid, false).parse_all();
}

Expr parse_coefficient_rule(std::string_view text, const AlphaGrid& grid) {
  return Parser(text, grid, true).parse_all();
}

FuzzyNumber parse_fuzzy_literal(std::string_view text, const AlphaGrid& grid) {
  return Parser(text, grid, false).parse_literal();
}

}  // namespace fuzzcalc

#include "fracam/algebra/parser.hpp"

#include <cctype>
#include <optional>

namespace fracam::algebra {

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : std::runtime_error("parse error at offset " + std::to_string(position) + ": " + message),
      kind_(kind),
      position_(position) {}

namespace {

bool has_momentum(const Expr& e) { return e.depends_on(Var::p1) || e.depends_on(Var::p2); }

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse() {
    Expr e = expression();
    skip_space();
    if (pos_ != src_.size()) {
      fail(ParseError::Kind::syntax, "unexpected '" + std::string(1, src_[pos_]) + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(ParseError::Kind kind, const std::string& message) const {
    throw ParseError(kind, pos_, message);
  }
  [[noreturn]] void fail_at(ParseError::Kind kind, std::size_t at, const std::string& message) const {
    throw ParseError(kind, at, message);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(ParseError::Kind::syntax, std::string("expected '") + c + "'");
    }
  }

  // expr := term { ('+' | '-') term }
  Expr expression() {
    Expr value = term();
    while (true) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  // term := unary { ('*' | '/') unary }
  Expr term() {
    Expr value = unary();
    while (true) {
      if (accept('*')) {
        value *= unary();
      } else if (accept('/')) {
        skip_space();
        const std::size_t at = pos_;
        value *= invert(unary(), at);
      } else {
        return value;
      }
    }
  }

  // unary := ('+' | '-') unary | power
  Expr unary() {
    if (accept('-')) {
      return -unary();
    }
    if (accept('+')) {
      return unary();
    }
    return power();
  }

  // power := primary [ '^' exponent ]
  Expr power() {
    skip_space();
    const std::size_t at = pos_;
    Expr base = primary();
    if (!accept('^')) {
      return base;
    }
    const Exponent e = exponent();
    if (e.denominator() != 1) {
      auto single = base.as_constant_monomial();
      if (!single || single->coeff != 1) {
        fail_at(ParseError::Kind::syntax, at, "fractional exponents apply to parameter symbols only");
      }
      Monomial mono;
      mono.params = single->mono.params.pow(e);
      return Expr::monomial(1, mono);
    }
    const int n = e.numerator();
    if (n >= 0) {
      return base.pow(n);
    }
    return invert(base.pow(-n), at);
  }

  // exponent := ['-'] integer | '(' ['-'] integer [ '/' integer ] ')'
  Exponent exponent() {
    const bool parenthesized = accept('(');
    const bool negative = accept('-');
    int num = integer();
    int den = 1;
    if (parenthesized) {
      if (accept('/')) {
        den = integer();
        if (den == 0) {
          fail(ParseError::Kind::syntax, "zero exponent denominator");
        }
      }
      expect(')');
    }
    return Exponent(negative ? -num : num, den);
  }

  int integer() {
    skip_space();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      value = value * 10 + (src_[pos_] - '0');
      if (value > 1000000) {
        fail(ParseError::Kind::syntax, "exponent too large");
      }
      ++pos_;
    }
    if (pos_ == start) {
      fail(ParseError::Kind::syntax, "expected an integer exponent");
    }
    return static_cast<int>(value);
  }

  // primary := number | identifier | '(' expr ')'
  Expr primary() {
    skip_space();
    if (pos_ >= src_.size()) {
      fail(ParseError::Kind::syntax, "unexpected end of input");
    }
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = expression();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return identifier();
    }
    fail(ParseError::Kind::syntax, "unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) {
        ++look;
      }
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          ++pos_;
        }
      }
    }
    try {
      return Expr(parse_decimal(src_.substr(start, pos_ - start)));
    } catch (const std::invalid_argument& e) {
      fail_at(ParseError::Kind::syntax, start, e.what());
    }
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "x1") return Expr::variable(Var::x1);
    if (name == "x2") return Expr::variable(Var::x2);
    if (name == "p1") return Expr::variable(Var::p1);
    if (name == "p2") return Expr::variable(Var::p2);
    if (name == "r2") return Expr::r2();
    if (auto p = param_from_name(name)) {
      return Expr::param(*p);
    }
    fail_at(ParseError::Kind::unknown_symbol, start, "unknown symbol '" + std::string(name) + "'");
  }

  // Divisors are limited to c * params * r^(2j) and c * params * r^(-2k).
  Expr invert(const Expr& divisor, std::size_t at) const {
    if (divisor.is_zero()) {
      fail_at(ParseError::Kind::division_by_zero, at, "division by zero");
    }
    if (divisor.size() == 1) {
      const Term t = divisor.term_list().front();
      if (t.mono.x == std::array<int, 2>{0, 0} && t.mono.p == std::array<int, 2>{0, 0}) {
        Monomial inv;
        inv.params = t.mono.params.inverse();
        return Expr::monomial(Rational(1) / t.coeff, inv) * Expr::r2().pow(t.mono.rpow);
      }
      fail_at(ParseError::Kind::negative_exponent, at, "x and p variables cannot appear with negative exponents");
    }
    if (!has_momentum(divisor)) {
      int max_degree = 0;
      for (const auto& [mono, coeff] : divisor.terms()) {
        max_degree = std::max(max_degree, mono.x[0] + mono.x[1]);
      }
      Expr reduced = divisor;
      for (int j = 1; j <= max_degree / 2; ++j) {
        reduced *= Expr::inverse_r2(1);
        if (auto t = reduced.as_constant_monomial()) {
          Monomial inv;
          inv.params = t->mono.params.inverse();
          inv.rpow = j;
          return Expr::monomial(Rational(1) / t->coeff, inv);
        }
      }
    }
    fail_at(ParseError::Kind::non_monomial_division, at,
            "division by a non-monomial expression '" + divisor.to_string() + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view src) { return Parser(src).parse(); }

}  // namespace fracam::algebra

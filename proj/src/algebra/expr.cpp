#include "fracam/algebra/expr.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fracam::algebra {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) {
      out += '*';
    }
    out += parts[i];
  }
  return out;
}

void append_power(std::vector<std::string>& out, const char* name, int e) {
  if (e == 1) {
    out.emplace_back(name);
  } else if (e > 1) {
    out.push_back(std::string(name) + "^" + std::to_string(e));
  }
}

// Renders |coeff| * mono; the sign is handled by the caller.
std::string render_term(const Rational& magnitude, const Monomial& mono) {
  std::vector<std::string> num;
  std::vector<std::string> den;
  const BigInt n = boost::multiprecision::numerator(magnitude);
  const BigInt d = boost::multiprecision::denominator(magnitude);
  if (n != 1) {
    num.push_back(n.str());
  }
  if (d != 1) {
    den.push_back(d.str());
  }
  mono.params.append_factors(num, den);
  append_power(num, "x1", mono.x[0]);
  append_power(num, "x2", mono.x[1]);
  append_power(num, "p1", mono.p[0]);
  append_power(num, "p2", mono.p[1]);
  append_power(den, "r2", mono.rpow);
  std::string out = num.empty() ? std::string("1") : join(num);
  if (den.size() == 1) {
    out += "/" + den.front();
  } else if (den.size() > 1) {
    out += "/(" + join(den) + ")";
  }
  return out;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.params = a.params * b.params;
  out.x = {a.x[0] + b.x[0], a.x[1] + b.x[1]};
  out.p = {a.p[0] + b.p[0], a.p[1] + b.p[1]};
  out.rpow = a.rpow + b.rpow;
  return out;
}

}  // namespace

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) {
    return a.degree() > b.degree();
  }
  if (a.x != b.x) {
    return a.x > b.x;
  }
  if (a.p != b.p) {
    return a.p > b.p;
  }
  if (a.rpow != b.rpow) {
    return a.rpow < b.rpow;
  }
  return a.params < b.params;
}

Expr::Expr(const Rational& value) {
  if (value != 0) {
    terms_.emplace(Monomial{}, value);
  }
}

Expr Expr::variable(Var v) {
  Monomial mono;
  switch (v) {
    case Var::x1: mono.x[0] = 1; break;
    case Var::x2: mono.x[1] = 1; break;
    case Var::p1: mono.p[0] = 1; break;
    case Var::p2: mono.p[1] = 1; break;
  }
  return monomial(1, mono);
}

Expr Expr::param(Param p, Exponent e) {
  Monomial mono;
  mono.params = ParamMonomial::of(p, e);
  return monomial(1, mono);
}

Expr Expr::monomial(const Rational& coeff, const Monomial& mono) {
  if (mono.x[0] < 0 || mono.x[1] < 0 || mono.p[0] < 0 || mono.p[1] < 0 || mono.rpow < 0) {
    throw std::domain_error("monomial exponents must be non-negative");
  }
  Expr out;
  out.accumulate(mono, coeff);
  return out;
}

Expr Expr::inverse_r2(int k) {
  Monomial mono;
  mono.rpow = k;
  return monomial(1, mono);
}

Expr Expr::r2() { return variable(Var::x1).pow(2) + variable(Var::x2).pow(2); }

void Expr::accumulate(Monomial mono, const Rational& coeff) {
  if (coeff == 0) {
    return;
  }
  // x1^2 r^-2 = 1 - x2^2 r^-2
  if (mono.rpow > 0 && mono.x[0] >= 2) {
    Monomial lowered = mono;
    lowered.x[0] -= 2;
    lowered.rpow -= 1;
    accumulate(lowered, coeff);
    mono.x[0] -= 2;
    mono.x[1] += 2;
    accumulate(mono, -coeff);
    return;
  }
  auto [it, inserted] = terms_.try_emplace(mono, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) {
      terms_.erase(it);
    }
  }
}

std::vector<Term> Expr::term_list() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [mono, coeff] : terms_) {
    out.push_back(Term{coeff, mono});
  }
  return out;
}

bool Expr::is_constant() const {
  for (const auto& [mono, coeff] : terms_) {
    if (!mono.is_constant()) {
      return false;
    }
  }
  return true;
}

std::optional<Term> Expr::as_constant_monomial() const {
  if (terms_.size() != 1 || !terms_.begin()->first.is_constant()) {
    return std::nullopt;
  }
  return Term{terms_.begin()->second, terms_.begin()->first};
}

std::optional<Rational> Expr::as_rational() const {
  if (terms_.empty()) {
    return Rational(0);
  }
  auto t = as_constant_monomial();
  if (!t || !t->mono.params.is_one()) {
    return std::nullopt;
  }
  return t->coeff;
}

bool Expr::depends_on(Var v) const {
  for (const auto& [mono, coeff] : terms_) {
    switch (v) {
      case Var::x1:
        if (mono.x[0] != 0 || mono.rpow != 0) return true;
        break;
      case Var::x2:
        if (mono.x[1] != 0 || mono.rpow != 0) return true;
        break;
      case Var::p1:
        if (mono.p[0] != 0) return true;
        break;
      case Var::p2:
        if (mono.p[1] != 0) return true;
        break;
    }
  }
  return false;
}

bool Expr::depends_on(Param p) const {
  for (const auto& [mono, coeff] : terms_) {
    if (mono.params.exponent(p) != 0) {
      return true;
    }
  }
  return false;
}

Expr& Expr::operator+=(const Expr& other) {
  for (const auto& [mono, coeff] : other.terms_) {
    accumulate(mono, coeff);
  }
  return *this;
}

Expr& Expr::operator-=(const Expr& other) {
  for (const auto& [mono, coeff] : other.terms_) {
    accumulate(mono, -coeff);
  }
  return *this;
}

Expr Expr::operator-() const {
  Expr out = *this;
  for (auto& [mono, coeff] : out.terms_) {
    coeff = -coeff;
  }
  return out;
}

Expr operator*(const Expr& a, const Expr& b) {
  Expr out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.accumulate(multiply(ma, mb), ca * cb);
    }
  }
  return out;
}

Expr& Expr::operator*=(const Expr& other) {
  *this = *this * other;
  return *this;
}

bool operator==(const Expr& a, const Expr& b) { return a.terms_ == b.terms_; }

Expr Expr::pow(int n) const {
  if (n < 0) {
    throw std::domain_error("Expr::pow requires a non-negative exponent");
  }
  Expr result(1);
  Expr factor = *this;
  while (n != 0) {
    if ((n & 1) != 0) {
      result *= factor;
    }
    n >>= 1;
    if (n != 0) {
      factor *= factor;
    }
  }
  return result;
}

Expr Expr::derivative(Var v) const {
  Expr out;
  const bool is_x = v == Var::x1 || v == Var::x2;
  const std::size_t i = (v == Var::x1 || v == Var::p1) ? 0 : 1;
  for (const auto& [mono, coeff] : terms_) {
    if (is_x) {
      if (mono.x[i] > 0) {
        Monomial d = mono;
        d.x[i] -= 1;
        out.accumulate(d, coeff * mono.x[i]);
      }
      if (mono.rpow > 0) {
        // d/dx_i r^-2k = -2k x_i r^-2(k+1)
        Monomial d = mono;
        d.x[i] += 1;
        d.rpow += 1;
        out.accumulate(d, coeff * (-2 * mono.rpow));
      }
    } else if (mono.p[i] > 0) {
      Monomial d = mono;
      d.p[i] -= 1;
      out.accumulate(d, coeff * mono.p[i]);
    }
  }
  return out;
}

Expr Expr::divided_by(const Expr& divisor) const {
  auto t = divisor.as_constant_monomial();
  if (!t) {
    throw std::domain_error("division by a non-monomial or non-constant expression: " + divisor.to_string());
  }
  Monomial inv;
  inv.params = t->mono.params.inverse();
  return *this * monomial(Rational(1) / t->coeff, inv);
}

Expr Expr::substitute(const std::map<Param, Expr>& values) const {
  Expr out;
  for (const auto& [mono, coeff] : terms_) {
    Monomial rest = mono;
    Expr factor(coeff);
    for (const auto& [param, value] : values) {
      const Exponent e = mono.params.exponent(param);
      if (e == 0) {
        continue;
      }
      if (!value.is_constant()) {
        throw std::domain_error("parameter values must be constant expressions");
      }
      rest.params.set_exponent(param, Exponent(0));
      if (e.denominator() == 1 && e > 0) {
        factor *= value.pow(e.numerator());
        continue;
      }
      auto single = value.as_constant_monomial();
      if (!single) {
        throw std::domain_error("cannot raise '" + value.to_string() + "' to a negative or fractional power");
      }
      if (e.denominator() != 1 && single->coeff != 1) {
        throw std::domain_error("fractional power of a non-unit coefficient in '" + value.to_string() + "'");
      }
      Monomial powered;
      powered.params = single->mono.params.pow(e);
      const Rational c = e.denominator() == 1 ? algebra::pow(single->coeff, e.numerator()) : Rational(1);
      factor *= monomial(c, powered);
    }
    Expr term;
    term.accumulate(rest, 1);
    out += factor * term;
  }
  return out;
}

Expr Expr::substitute_momenta(const Expr& p1, const Expr& p2) const {
  Expr out;
  for (const auto& [mono, coeff] : terms_) {
    Monomial rest = mono;
    rest.p = {0, 0};
    out += monomial(coeff, rest) * p1.pow(mono.p[0]) * p2.pow(mono.p[1]);
  }
  return out;
}

double Expr::evaluate(const std::map<Param, double>& values, const std::array<double, 4>& point) const {
  const double r2 = point[0] * point[0] + point[1] * point[1];
  double total = 0.0;
  for (const auto& [mono, coeff] : terms_) {
    double v = to_double(coeff);
    for (Param param : kAllParams) {
      const Exponent e = mono.params.exponent(param);
      if (e == 0) {
        continue;
      }
      double base = 0.0;
      if (auto it = values.find(param); it != values.end()) {
        base = it->second;
      } else if (param == Param::pi) {
        base = std::numbers::pi;
      } else {
        throw std::domain_error("no numeric value for parameter '" + std::string(param_name(param)) + "'");
      }
      v *= e.denominator() == 1 ? std::pow(base, e.numerator())
                                : std::pow(base, static_cast<double>(e.numerator()) / e.denominator());
    }
    v *= std::pow(point[0], mono.x[0]) * std::pow(point[1], mono.x[1]);
    v *= std::pow(point[2], mono.p[0]) * std::pow(point[3], mono.p[1]);
    if (mono.rpow != 0) {
      v /= std::pow(r2, mono.rpow);
    }
    total += v;
  }
  return total;
}

std::string Expr::to_string() const {
  if (terms_.empty()) {
    return "0";
  }
  std::string out;
  bool first = true;
  for (const auto& [mono, coeff] : terms_) {
    const bool negative = coeff < 0;
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += render_term(negative ? Rational(-coeff) : coeff, mono);
    first = false;
  }
  return out;
}

std::string to_string(const Expr& e) { return e.to_string(); }

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.to_string(); }

int levi_civita(int i, int j) {
  if (i == j) {
    return 0;
  }
  return i < j ? 1 : -1;
}

}  // namespace fracam::algebra

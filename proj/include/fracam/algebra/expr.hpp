#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracam/algebra/param_monomial.hpp"
#include "fracam/algebra/rational.hpp"

namespace fracam::algebra {

enum class Var : std::uint8_t { x1, x2, p1, p2 };

/// Phase-space and parameter part of a term:
///   params * x1^x[0] x2^x[1] p1^p[0] p2^p[1] * r^(-2 rpow),  r^2 = x1^2 + x2^2.
struct Monomial {
  ParamMonomial params;
  std::array<int, 2> x{0, 0};
  std::array<int, 2> p{0, 0};
  int rpow = 0;

  bool is_constant() const { return x == std::array<int, 2>{0, 0} && p == std::array<int, 2>{0, 0} && rpow == 0; }
  int degree() const { return x[0] + x[1] + p[0] + p[1] - 2 * rpow; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.params == b.params && a.x == b.x && a.p == b.p && a.rpow == b.rpow;
  }
};

/// Printing order: higher phase-space degree first, then x1, x2, p1, p2
/// exponents descending, then fewer r^-2 factors, then parameters.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

struct Term {
  Rational coeff;
  Monomial mono;
};

/// Exact observable on the (x1, x2, p1, p2) phase space.
///
/// Canonical form: terms carrying r^-2 factors have x1 exponent at most 1,
/// enforced by the rewrite x1^2 r^-2 -> 1 - x2^2 r^-2. Every element of
/// Q(params)[x, p][1/r^2] has exactly one such representation, so equality
/// is structural.
class Expr {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  Expr() = default;
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)
  Expr(int value) : Expr(Rational(value)) {}  // NOLINT(google-explicit-constructor)

  static Expr variable(Var v);
  static Expr param(Param p, Exponent e = Exponent(1));
  static Expr monomial(const Rational& coeff, const Monomial& mono);
  /// r^-2k
  static Expr inverse_r2(int k = 1);
  /// r^2 = x1^2 + x2^2 expanded.
  static Expr r2();

  const TermMap& terms() const { return terms_; }
  std::vector<Term> term_list() const;
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  /// No x, p or r dependence.
  bool is_constant() const;
  /// Single nonzero term without phase-space dependence.
  std::optional<Term> as_constant_monomial() const;
  std::optional<Rational> as_rational() const;
  bool depends_on(Var v) const;
  bool depends_on(Param p) const;

  Expr& operator+=(const Expr& other);
  Expr& operator-=(const Expr& other);
  Expr& operator*=(const Expr& other);
  Expr operator-() const;
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  Expr pow(int n) const;
  Expr derivative(Var v) const;

  /// Divides by a nonzero constant monomial. Throws std::domain_error otherwise.
  Expr divided_by(const Expr& divisor) const;

  /// Replaces bound parameters by constant expressions.
  Expr substitute(const std::map<Param, Expr>& values) const;
  /// Replaces p1, p2 by the given expressions (x dependence is kept).
  Expr substitute_momenta(const Expr& p1, const Expr& p2) const;

  /// Numeric value at a phase-space point. `values` must cover every
  /// parameter present except pi.
  double evaluate(const std::map<Param, double>& values, const std::array<double, 4>& point = {0, 0, 0, 0}) const;

  std::string to_string() const;

 private:
  void accumulate(Monomial mono, const Rational& coeff);

  TermMap terms_;
};

std::string to_string(const Expr& e);
std::ostream& operator<<(std::ostream& os, const Expr& e);

/// Levi-Civita symbol with eps(0,1) = 1.
int levi_civita(int i, int j);

}  // namespace fracam::algebra

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "fracam/algebra/brackets.hpp"
#include "fracam/algebra/expr.hpp"

namespace fracam::algebra {

/// coeff * sqrt(surd) * params, with surd a square-free positive integer and
/// params allowed half-integer exponents. Closed under sqrt of positive values.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Rational& coeff, const ParamMonomial& params = {}, const BigInt& surd = 1);
  /// Requires a single-term constant expression.
  static Scalar from_expr(const Expr& e);

  const Rational& coeff() const { return coeff_; }
  const BigInt& surd() const { return surd_; }
  const ParamMonomial& params() const { return params_; }

  Scalar sqrt() const;
  Scalar abs() const;
  /// Positive for every positive assignment of the physical parameters
  /// (lam is the only parameter allowed to be negative).
  bool is_positive() const;

  /// Exact expression when surd == 1 and all exponents are integers.
  std::optional<Expr> to_expr() const;
  double evaluate(const std::map<Param, double>& values) const;
  std::string to_string() const;

  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  Rational coeff_ = 0;
  BigInt surd_ = 1;
  ParamMonomial params_;
};

/// E_n = offset + (n + 1/2) * hbar_eff * freq
struct OscillatorSpectrum {
  Scalar hbar_eff;
  Scalar freq;
  Expr offset;

  Scalar quantum() const { return hbar_eff * freq; }
  /// Exact level; throws std::domain_error if the quantum is irrational.
  Expr level(int n) const;
  double level_value(int n, const std::map<Param, double>& values) const;
  std::string rule() const;
};

class QuantizationError : public std::invalid_argument {
 public:
  enum class Kind { non_constant_bracket, not_quadratic, cross_terms, not_positive };
  QuantizationError(Kind kind, const std::string& message) : std::invalid_argument(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Spectrum of obs = A u^2 + B v^2 + const, where {u, v} is a nonzero
/// constant under `bracket`. The coefficients are read off with the bracket
/// itself, so obs only needs to equal the quadratic form as an expression.
OscillatorSpectrum quantize_quadratic(const Expr& obs, const Expr& u, const Expr& v, const Scalar& hbar,
                                      const Bracket& bracket = poisson_bracket);

}  // namespace fracam::algebra

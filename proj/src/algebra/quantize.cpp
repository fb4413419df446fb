#include "fracam/algebra/quantize.hpp"

#include <cmath>

namespace fracam::algebra {

namespace {

// n = s^2 * t with t square-free.
std::pair<BigInt, BigInt> split_square(BigInt n) {
  if (n < 0) {
    throw std::domain_error("square root of a negative number");
  }
  if (n > BigInt(1000000000000LL)) {
    throw std::domain_error("surd too large to factor: " + n.str());
  }
  BigInt square = 1;
  BigInt free = 1;
  for (BigInt f = 2; f * f <= n; ++f) {
    while (n % (f * f) == 0) {
      n /= f * f;
      square *= f;
    }
    if (n % f == 0) {
      n /= f;
      free *= f;
    }
  }
  free *= n;
  return {square, free};
}

}  // namespace

Scalar::Scalar(const Rational& coeff, const ParamMonomial& params, const BigInt& surd)
    : coeff_(coeff), surd_(surd), params_(params) {
  if (surd_ <= 0) {
    throw std::domain_error("surd must be positive");
  }
  auto [square, free] = split_square(surd_);
  coeff_ *= Rational(square);
  surd_ = free;
  if (coeff_ == 0) {
    surd_ = 1;
    params_ = {};
  }
}

Scalar Scalar::from_expr(const Expr& e) {
  if (e.is_zero()) {
    return Scalar(0);
  }
  auto t = e.as_constant_monomial();
  if (!t) {
    throw std::domain_error("not a single-term constant: " + e.to_string());
  }
  return Scalar(t->coeff, t->mono.params);
}

Scalar Scalar::sqrt() const {
  if (coeff_ < 0) {
    throw std::domain_error("square root of a negative scalar");
  }
  if (surd_ != 1) {
    // Fourth roots are not representable.
    throw std::domain_error("square root of a scalar that already contains a surd");
  }
  // sqrt(p/q * s) = sqrt(p q s) / q
  const BigInt p = boost::multiprecision::numerator(coeff_);
  const BigInt q = boost::multiprecision::denominator(coeff_);
  auto [square, free] = split_square(p * q);
  return Scalar(Rational(square, q), params_.pow(Exponent(1, 2)), free);
}

Scalar Scalar::abs() const {
  Scalar out = *this;
  if (out.coeff_ < 0) {
    out.coeff_ = -out.coeff_;
  }
  return out;
}

bool Scalar::is_positive() const {
  if (coeff_ <= 0) {
    return false;
  }
  const Exponent lam = params_.exponent(Param::lam);
  return lam.denominator() == 1 && lam.numerator() % 2 == 0;
}

std::optional<Expr> Scalar::to_expr() const {
  if (surd_ != 1 || !params_.is_integral()) {
    return std::nullopt;
  }
  Monomial mono;
  mono.params = params_;
  return Expr::monomial(coeff_, mono);
}

double Scalar::evaluate(const std::map<Param, double>& values) const {
  Monomial mono;
  mono.params = params_;
  return Expr::monomial(coeff_, mono).evaluate(values) * std::sqrt(surd_.convert_to<double>());
}

std::string Scalar::to_string() const {
  Monomial mono;
  mono.params = params_;
  std::string out = Expr::monomial(coeff_, mono).to_string();
  if (surd_ != 1) {
    out = "sqrt(" + surd_.str() + ")*(" + out + ")";
  }
  return out;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  return Scalar(a.coeff_ * b.coeff_, a.params_ * b.params_, a.surd_ * b.surd_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.coeff_ == b.coeff_ && a.surd_ == b.surd_ && a.params_ == b.params_;
}

Expr OscillatorSpectrum::level(int n) const {
  auto q = quantum().to_expr();
  if (!q) {
    throw std::domain_error("level quantum " + quantum().to_string() + " is not a rational expression");
  }
  return offset + Expr(Rational(2 * n + 1, 2)) * *q;
}

double OscillatorSpectrum::level_value(int n, const std::map<Param, double>& values) const {
  return offset.evaluate(values) + (n + 0.5) * quantum().evaluate(values);
}

std::string OscillatorSpectrum::rule() const {
  std::string out = "(n+1/2)*(" + quantum().to_string() + ")";
  if (!offset.is_zero()) {
    out += " + (" + offset.to_string() + ")";
  }
  return out;
}

OscillatorSpectrum quantize_quadratic(const Expr& obs, const Expr& u, const Expr& v, const Scalar& hbar,
                                      const Bracket& bracket) {
  using Kind = QuantizationError::Kind;
  const Expr kappa = bracket(u, v);
  if (kappa.is_zero() || !kappa.as_constant_monomial()) {
    throw QuantizationError(Kind::non_constant_bracket,
                            "bracket of the pair must be a nonzero constant monomial, got " + kappa.to_string());
  }
  const Expr kappa2 = kappa * kappa;
  // {obs, v} = kappa (2A u + C v),  {obs, u} = -kappa (2B v + C u)
  const Expr along_v = bracket(obs, v);
  const Expr along_u = bracket(obs, u);
  const Expr a2 = bracket(along_v, v);
  const Expr b2 = bracket(along_u, u);
  const Expr cross = -bracket(along_v, u);
  if (!a2.is_constant() || !b2.is_constant() || !cross.is_constant()) {
    throw QuantizationError(Kind::not_quadratic, "observable is not quadratic in the supplied pair");
  }
  if (!cross.is_zero()) {
    throw QuantizationError(Kind::cross_terms, "observable has a u*v cross term");
  }
  const Expr a = a2.divided_by(kappa2 * Expr(2));
  const Expr b = b2.divided_by(kappa2 * Expr(2));
  const Expr offset = obs - a * u * u - b * v * v;
  if (!offset.is_constant()) {
    throw QuantizationError(Kind::not_quadratic,
                            "observable differs from A u^2 + B v^2 by a non-constant remainder " + offset.to_string());
  }
  if (a.is_zero() || b.is_zero() || !a.as_constant_monomial() || !b.as_constant_monomial()) {
    throw QuantizationError(Kind::not_positive, "quadratic coefficients must be single positive monomials");
  }
  const Scalar sa = Scalar::from_expr(a);
  const Scalar sb = Scalar::from_expr(b);
  if (!sa.is_positive() || !sb.is_positive()) {
    throw QuantizationError(Kind::not_positive, "quadratic coefficients must be positive");
  }
  OscillatorSpectrum spectrum;
  spectrum.hbar_eff = hbar * Scalar::from_expr(kappa).abs();
  spectrum.freq = Scalar(2) * (sa * sb).sqrt();
  spectrum.offset = offset;
  return spectrum;
}

}  // namespace fracam::algebra

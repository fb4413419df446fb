#include "fracam/algebra/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace fracam::algebra {

Rational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  BigInt digits = 0;
  int scale = 0;
  bool any_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits = digits * 10 + (text[i] - '0');
    any_digit = true;
    ++i;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits = digits * 10 + (text[i] - '0');
      --scale;
      any_digit = true;
      ++i;
    }
  }
  if (!any_digit) {
    throw std::invalid_argument("not a decimal literal: '" + std::string(text) + "'");
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    int exponent = 0;
    bool exp_digit = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 100000) {
        throw std::invalid_argument("decimal exponent out of range: '" + std::string(text) + "'");
      }
      exp_digit = true;
      ++i;
    }
    if (!exp_digit) {
      throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
    }
    scale += exp_negative ? -exponent : exponent;
  }
  if (i != text.size()) {
    throw std::invalid_argument("trailing characters in decimal literal '" + std::string(text) + "'");
  }
  Rational value(digits);
  value *= pow(Rational(10), scale);
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) {
      throw std::domain_error("zero raised to a negative power");
    }
    return pow(Rational(1) / base, -exponent);
  }
  Rational result = 1;
  Rational factor = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if ((e & 1U) != 0) {
      result *= factor;
    }
    e >>= 1U;
    if (e != 0) {
      factor *= factor;
    }
  }
  return result;
}

}  // namespace fracam::algebra

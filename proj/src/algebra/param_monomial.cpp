#include "fracam/algebra/param_monomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fracam::algebra {

namespace {

constexpr std::array<std::string_view, kParamCount> kNames = {
    "mu", "lam", "rho", "K", "hbar", "m", "c", "eps0", "pi"};

std::string render(std::string_view name, Exponent e) {
  std::string out(name);
  if (e == 1) {
    return out;
  }
  if (e.denominator() == 1) {
    return out + "^" + std::to_string(e.numerator());
  }
  return out + "^(" + std::to_string(e.numerator()) + "/" + std::to_string(e.denominator()) + ")";
}

}  // namespace

Exponent::Exponent(int num, int den) : num_(num), den_(den) {
  if (den_ == 0) {
    throw std::domain_error("zero denominator in exponent");
  }
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const int g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::string_view param_name(Param p) { return kNames[static_cast<std::size_t>(p)]; }

std::optional<Param> param_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) {
      return static_cast<Param>(i);
    }
  }
  return std::nullopt;
}

ParamMonomial ParamMonomial::of(Param p, Exponent e) {
  ParamMonomial m;
  m.exps_[index(p)] = e;
  return m;
}

bool ParamMonomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

bool ParamMonomial::is_integral() const {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e.is_integer(); });
}

ParamMonomial ParamMonomial::inverse() const {
  ParamMonomial out;
  for (std::size_t i = 0; i < kParamCount; ++i) {
    out.exps_[i] = -exps_[i];
  }
  return out;
}

ParamMonomial ParamMonomial::pow(Exponent e) const {
  ParamMonomial out;
  for (std::size_t i = 0; i < kParamCount; ++i) {
    out.exps_[i] = exps_[i] * e;
  }
  return out;
}

ParamMonomial& ParamMonomial::operator*=(const ParamMonomial& other) {
  for (std::size_t i = 0; i < kParamCount; ++i) {
    exps_[i] += other.exps_[i];
  }
  return *this;
}

bool operator<(const ParamMonomial& a, const ParamMonomial& b) {
  return std::lexicographical_compare(a.exps_.begin(), a.exps_.end(), b.exps_.begin(), b.exps_.end(),
                                      [](Exponent x, Exponent y) { return x > y; });
}

void ParamMonomial::append_factors(std::vector<std::string>& num, std::vector<std::string>& den) const {
  for (std::size_t i = 0; i < kParamCount; ++i) {
    const Exponent e = exps_[i];
    if (e > 0) {
      num.push_back(render(kNames[i], e));
    } else if (e < 0) {
      den.push_back(render(kNames[i], -e));
    }
  }
}

}  // namespace fracam::algebra

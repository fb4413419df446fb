#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracam::algebra {

/// Physical parameter symbols. pi is a symbol so that flux quanta stay exact.
enum class Param : std::uint8_t { mu, lam, rho, K, hbar, m, c, eps0, pi };

inline constexpr std::size_t kParamCount = 9;

inline constexpr std::array<Param, kParamCount> kAllParams = {
    Param::mu, Param::lam, Param::rho, Param::K, Param::hbar,
    Param::m,  Param::c,   Param::eps0, Param::pi};

std::string_view param_name(Param p);
std::optional<Param> param_from_name(std::string_view name);

/// Small reduced fraction. Exponents are rational so that square roots of
/// parameters can be held exactly; the model itself only uses integers.
class Exponent {
 public:
  constexpr Exponent() = default;
  constexpr Exponent(int value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Exponent(int num, int den);

  constexpr int numerator() const { return num_; }
  constexpr int denominator() const { return den_; }
  constexpr bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / den_; }

  friend Exponent operator+(Exponent a, Exponent b) { return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_}; }
  friend Exponent operator*(Exponent a, Exponent b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
  Exponent operator-() const { return {-num_, den_}; }
  Exponent& operator+=(Exponent other) { return *this = *this + other; }

  friend constexpr bool operator==(Exponent a, Exponent b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend constexpr auto operator<=>(Exponent a, Exponent b) {
    return static_cast<long long>(a.num_) * b.den_ <=> static_cast<long long>(b.num_) * a.den_;
  }

 private:
  int num_ = 0;
  int den_ = 1;
};

/// Laurent monomial in the parameter symbols.
class ParamMonomial {
 public:
  ParamMonomial() = default;

  static ParamMonomial of(Param p, Exponent e = Exponent(1));

  Exponent exponent(Param p) const { return exps_[index(p)]; }
  void set_exponent(Param p, Exponent e) { exps_[index(p)] = e; }

  bool is_one() const;
  bool is_integral() const;

  ParamMonomial inverse() const;
  ParamMonomial pow(Exponent e) const;

  ParamMonomial& operator*=(const ParamMonomial& other);
  friend ParamMonomial operator*(ParamMonomial a, const ParamMonomial& b) { return a *= b; }

  friend bool operator==(const ParamMonomial& a, const ParamMonomial& b) { return a.exps_ == b.exps_; }
  friend bool operator<(const ParamMonomial& a, const ParamMonomial& b);

  /// Appends "name", "name^e" or "name^(p/q)" factors; negative exponents go
  /// to `den` with their magnitude.
  void append_factors(std::vector<std::string>& num, std::vector<std::string>& den) const;

 private:
  static constexpr std::size_t index(Param p) { return static_cast<std::size_t>(p); }
  std::array<Exponent, kParamCount> exps_{};
};

}  // namespace fracam::algebra

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracam/algebra/expr.hpp"

namespace fracam::algebra {

/// {f, g} = sum_i (df/dx_i dg/dp_i - df/dp_i dg/dx_i)
Expr poisson_bracket(const Expr& f, const Expr& g);

using Bracket = std::function<Expr(const Expr&, const Expr&)>;

class ExprMatrix {
 public:
  ExprMatrix() = default;
  ExprMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExprMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Expr& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Expr& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b);
  friend bool operator==(const ExprMatrix& a, const ExprMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Expr> data_;
};

/// Exact inverse by Gauss-Jordan elimination. Pivots must be single-term
/// constants; returns nullopt for a singular matrix and throws
/// std::domain_error when a pivot is a sum of parameter monomials.
std::optional<ExprMatrix> invert(const ExprMatrix& m);

enum class ConstraintClass {
  second_class,
  not_second_class,  ///< constant but singular bracket matrix
  non_constant,      ///< some bracket depends on phase-space variables
};

std::string to_string(ConstraintClass c);

struct ConstraintSystem {
  std::vector<Expr> constraints;
  ExprMatrix bracket_matrix;
  std::optional<ExprMatrix> inverse_matrix;
  ConstraintClass classification = ConstraintClass::non_constant;

  bool is_second_class() const { return classification == ConstraintClass::second_class; }
};

ConstraintSystem build_constraint_system(std::vector<Expr> constraints);

class NotSecondClassError : public std::logic_error {
 public:
  explicit NotSecondClassError(ConstraintClass found);
  ConstraintClass found() const { return found_; }

 private:
  ConstraintClass found_;
};

/// {f, g}_D = {f, g} - {f, phi_m} (C^-1)_mn {phi_n, g}
Expr dirac_bracket(const Expr& f, const Expr& g, const ConstraintSystem& cs);

/// Binds dirac_bracket to a constraint system; checks second-class-ness once.
Bracket dirac_bracket_for(const ConstraintSystem& cs);

}  // namespace fracam::algebra

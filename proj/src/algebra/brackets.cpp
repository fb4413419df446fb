#include "fracam/algebra/brackets.hpp"

#include <utility>

namespace fracam::algebra {

Expr poisson_bracket(const Expr& f, const Expr& g) {
  Expr out;
  out += f.derivative(Var::x1) * g.derivative(Var::p1);
  out -= f.derivative(Var::p1) * g.derivative(Var::x1);
  out += f.derivative(Var::x2) * g.derivative(Var::p2);
  out -= f.derivative(Var::p2) * g.derivative(Var::x2);
  return out;
}

ExprMatrix ExprMatrix::identity(std::size_t n) {
  ExprMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Expr(1);
  }
  return m;
}

ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matrix shape mismatch");
  }
  ExprMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Expr sum;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        sum += a(i, k) * b(k, j);
      }
      out(i, j) = std::move(sum);
    }
  }
  return out;
}

std::optional<ExprMatrix> invert(const ExprMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) {
    throw std::invalid_argument("only square matrices can be inverted");
  }
  ExprMatrix a = m;
  ExprMatrix inv = ExprMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::optional<std::size_t> pivot;
    bool saw_nonzero = false;
    for (std::size_t row = col; row < n; ++row) {
      if (a(row, col).is_zero()) {
        continue;
      }
      saw_nonzero = true;
      if (a(row, col).as_constant_monomial()) {
        pivot = row;
        break;
      }
    }
    if (!saw_nonzero) {
      return std::nullopt;
    }
    if (!pivot) {
      throw std::domain_error("matrix inverse needs division by a sum of parameter monomials");
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(col, j), a(*pivot, j));
      std::swap(inv(col, j), inv(*pivot, j));
    }
    const Expr p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = a(col, j).divided_by(p);
      inv(col, j) = inv(col, j).divided_by(p);
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a(row, col).is_zero()) {
        continue;
      }
      const Expr factor = a(row, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(row, j) -= factor * a(col, j);
        inv(row, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

std::string to_string(ConstraintClass c) {
  switch (c) {
    case ConstraintClass::second_class: return "second class";
    case ConstraintClass::not_second_class: return "not second class";
    case ConstraintClass::non_constant: return "non-constant bracket matrix";
  }
  return "unknown";
}

ConstraintSystem build_constraint_system(std::vector<Expr> constraints) {
  ConstraintSystem cs;
  const std::size_t n = constraints.size();
  cs.bracket_matrix = ExprMatrix(n, n);
  bool constant = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Expr b = poisson_bracket(constraints[i], constraints[j]);
      constant = constant && b.is_constant();
      cs.bracket_matrix(j, i) = -b;
      cs.bracket_matrix(i, j) = std::move(b);
    }
  }
  cs.constraints = std::move(constraints);
  if (!constant) {
    cs.classification = ConstraintClass::non_constant;
    return cs;
  }
  cs.inverse_matrix = invert(cs.bracket_matrix);
  cs.classification = cs.inverse_matrix ? ConstraintClass::second_class : ConstraintClass::not_second_class;
  return cs;
}

NotSecondClassError::NotSecondClassError(ConstraintClass found)
    : std::logic_error("constraint system is not second class (" + to_string(found) + ")"), found_(found) {}

Expr dirac_bracket(const Expr& f, const Expr& g, const ConstraintSystem& cs) {
  if (!cs.is_second_class()) {
    throw NotSecondClassError(cs.classification);
  }
  const std::size_t n = cs.constraints.size();
  std::vector<Expr> f_phi(n);
  std::vector<Expr> phi_g(n);
  for (std::size_t m = 0; m < n; ++m) {
    f_phi[m] = poisson_bracket(f, cs.constraints[m]);
    phi_g[m] = poisson_bracket(cs.constraints[m], g);
  }
  Expr out = poisson_bracket(f, g);
  for (std::size_t m = 0; m < n; ++m) {
    if (f_phi[m].is_zero()) {
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const Expr& cinv = (*cs.inverse_matrix)(m, k);
      if (cinv.is_zero() || phi_g[k].is_zero()) {
        continue;
      }
      out -= f_phi[m] * cinv * phi_g[k];
    }
  }
  return out;
}

Bracket dirac_bracket_for(const ConstraintSystem& cs) {
  if (!cs.is_second_class()) {
    throw NotSecondClassError(cs.classification);
  }
  return [cs](const Expr& f, const Expr& g) { return dirac_bracket(f, g, cs); };
}

}  // namespace fracam::algebra

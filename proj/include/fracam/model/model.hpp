#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fracam/algebra/expr.hpp"

namespace fracam::model {

using algebra::Expr;
using algebra::Param;
using algebra::Rational;

using Vec2 = std::array<Expr, 2>;

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physical parameters. Each of mu, lam, rho, K, hbar, m, c, eps0 is either
/// bound to an exact number (which may involve pi) or left as a symbol.
/// Derived quantities are recomputed from the bindings on every call.
class ModelParams {
 public:
  /// Nothing bound.
  static ModelParams symbolic();
  /// hbar = m = c = eps0 = mu = 1, lam = rho = K = 0.
  static ModelParams natural();

  ModelParams& set(Param p, const Expr& value);
  ModelParams& set(Param p, std::string_view value);
  ModelParams& unset(Param p);
  ModelParams& set_include_divergence_term(bool on) {
    include_divergence_term_ = on;
    return *this;
  }

  bool include_divergence_term() const { return include_divergence_term_; }
  bool is_bound(Param p) const { return bindings_.count(p) != 0; }
  bool fully_bound() const;
  const std::map<Param, Expr>& bindings() const { return bindings_; }

  /// The bound value, or the bare symbol.
  Expr value(Param p) const;
  Expr bind(const Expr& e) const { return e.substitute(bindings_); }
  double numeric(Param p) const;
  std::map<Param, double> numeric_values() const;
  double evaluate(const Expr& e) const;

  /// mu rho / (m c^2 eps0)
  Expr omega() const;
  /// mu lam / (2 pi hbar c^2 eps0)
  Expr alpha() const;
  /// Omega^2/4 + K/m
  Expr omega_tilde_sq() const;
  /// mu hbar rho / (2 m c^2 eps0), or 0 with the divergence term off.
  Expr divergence_constant() const;

  /// Sign constraints on the bound values.
  void validate() const;

  /// "mu=1 lam=pi/2 ..." in fixed parameter order; unbound symbols are omitted.
  std::string describe() const;

 private:
  std::map<Param, Expr> bindings_;
  bool include_divergence_term_ = true;
};

/// key=value lines; '#' starts a comment. Values are exact decimals or
/// constant expressions such as pi/2. Starts from ModelParams::natural().
ModelParams parse_params_text(std::string_view text);
ModelParams load_params_file(const std::filesystem::path& path);

enum class Field { AC, ES, Both };

Vec2 electric_field(const ModelParams& params, Field which);
/// A_i = -(lam/(2 pi eps0 r^2) + rho/(2 eps0)) eps_ij x_j
Vec2 effective_vector_potential(const ModelParams& params);
Expr curl(const Vec2& a);
Expr divergence(const Vec2& a);

// Lagrangians on (x, v): the velocities occupy the p1, p2 slots.
Expr lagrangian(const ModelParams& params);
Expr appendix_lagrangian(const ModelParams& params);
/// First-order Lagrangian left after freezing the kinetic energy.
Expr reduced_lagrangian(const ModelParams& params);

/// dL/dv_i at v = 0.
Vec2 canonical_momentum_at_rest(const Expr& lagrangian);
/// H = p.v - L with v solved from p = dL/dv. Needs a velocity-quadratic
/// part (M/2) v^2 with M a nonzero constant monomial.
Expr legendre_transform(const Expr& lagrangian);

/// (p_i + (mu/c^2) eps_ij E_j)^2 / 2m + K x^2 / 2 (+ divergence constant)
Expr build_hamiltonian(const ModelParams& params);
/// Legendre transform of the lam-only Lagrangian.
Expr appendix_hamiltonian(const ModelParams& params);
Expr reduced_hamiltonian(const ModelParams& params);

/// phi_i = p_i - (canonical momentum of the reduced Lagrangian). Throws
/// ValidationError if rho is bound to zero.
Vec2 build_constraints(const ModelParams& params);

/// J = x1 p2 - x2 p1
Expr canonical_angular_momentum();
Vec2 kinetic_momenta(const ModelParams& params, Field which = Field::Both);
/// eps_ij x_i Pi_j
Expr kinetic_angular_momentum(const ModelParams& params, Field which = Field::Both);
/// J evaluated on the constraint surface.
Expr reduced_angular_momentum(const ModelParams& params);
/// R_i = x_i + eps_ij Pi_j / (m Omega)
Vec2 guiding_center(const ModelParams& params);

/// H = kinetic * (p1^2 + p2^2) - gauge(r) * J + scalar(r)
struct PolarForm {
  Expr kinetic;
  Expr gauge;
  Expr scalar;
};

/// Throws std::invalid_argument if H is not of that rotation-invariant form.
PolarForm polar_decompose(const Expr& hamiltonian);

/// Laurent coefficients {power of r -> constant} of a rotation-invariant,
/// momentum-free expression.
std::map<int, Expr> radial_profile(const Expr& f);

/// Potential felt by u(r) for psi = exp(i m phi) u(r)/sqrt(r):
///   V(r) = sum_k coefficients[k] r^k, alongside the kinetic factor hbar^2 * kinetic.
struct RadialPotentialExpr {
  int sector = 0;
  Expr kinetic;
  std::map<int, Expr> coefficients;
};

RadialPotentialExpr polar_radial_potential(const Expr& hamiltonian, int sector, const Expr& hbar);
/// hbar^2 (nu^2 - 1/4)/(2 m r^2) + m omega_tilde^2 r^2 / 2 - hbar nu Omega / 2 (+ hbar Omega / 2)
RadialPotentialExpr closed_form_radial_potential(const ModelParams& params, int sector);

struct RadialPotential {
  int sector = 0;
  double nu = 0.0;
  double omega_tilde = 0.0;
  double kinetic = 0.0;         ///< hbar^2 / 2m
  double inverse_square = 0.0;  ///< kinetic * (nu^2 - 1/4)
  double constant = 0.0;
  double quadratic = 0.0;

  double operator()(double r) const;
  /// Without the inverse-square term.
  double regular(double r) const { return constant + quadratic * r * r; }
};

/// Numeric potential for a fully bound parameter set, obtained from the
/// polar expansion of build_hamiltonian.
RadialPotential radial_effective_potential(const ModelParams& params, int sector);
RadialPotential to_numeric(const RadialPotentialExpr& v, const ModelParams& params, double nu);

/// Charged particle with A = uniform field B plus a thin solenoid of flux Phi.
struct DualChargedParams {
  Expr q;
  Expr B;
  Expr Phi;
  Expr K;
  Expr m;
  Expr hbar;
};

/// q = 1, qB = mu rho/(c^2 eps0), q Phi = mu lam/(c^2 eps0)
DualChargedParams build_dual_charged_model(const ModelParams& params);
/// (p_i - q(A_i + A^AB_i))^2/2m + K x^2/2
Expr charged_hamiltonian(const DualChargedParams& dual);
Expr cyclotron_frequency(const DualChargedParams& dual);
/// q Phi / (2 pi hbar)
Expr flux_fraction(const DualChargedParams& dual);

}  // namespace fracam::model

#include "fracam/model/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fracam/algebra/brackets.hpp"
#include "fracam/algebra/parser.hpp"

namespace fracam::model {

using algebra::Exponent;
using algebra::Monomial;
using algebra::Var;

namespace {

Expr sym(Param p, int e = 1) { return Expr::param(p, Exponent(e)); }

const Expr kX1 = Expr::variable(Var::x1);
const Expr kX2 = Expr::variable(Var::x2);
const Expr kP1 = Expr::variable(Var::p1);
const Expr kP2 = Expr::variable(Var::p2);

// eps_ij a_j
Vec2 rotate(const Vec2& a) { return {a[1], -a[0]}; }

Expr dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

Expr half() { return Expr(Rational(1, 2)); }

// (mu/c^2) eps_ij E_j
Vec2 dipole_coupling(const ModelParams& params, Field which) {
  const Vec2 e = rotate(electric_field(params, which));
  const Expr k = params.bind(sym(Param::mu) * sym(Param::c, -2));
  return {k * e[0], k * e[1]};
}

// Quadratic velocity part v^2 M/2 + cross-term check.
Expr velocity_mass(const Expr& l) {
  const Expr m11 = l.derivative(Var::p1).derivative(Var::p1);
  const Expr m22 = l.derivative(Var::p2).derivative(Var::p2);
  const Expr m12 = l.derivative(Var::p1).derivative(Var::p2);
  if (m11 != m22 || !m12.is_zero() || !m11.is_constant() || !m11.as_constant_monomial()) {
    throw std::invalid_argument("Lagrangian velocity part is not (M/2) v^2 with constant M");
  }
  if (!m11.derivative(Var::p1).is_zero() || !m22.derivative(Var::p2).is_zero()) {
    throw std::invalid_argument("Lagrangian is more than quadratic in velocities");
  }
  return m11;
}

std::optional<Expr> divide_by_x2(const Expr& f) {
  Expr out;
  for (const auto& [mono, coeff] : f.terms()) {
    if (mono.x[1] == 0) {
      return std::nullopt;
    }
    Monomial m = mono;
    --m.x[1];
    out += Expr::monomial(coeff, m);
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ModelParams ModelParams::symbolic() { return {}; }

ModelParams ModelParams::natural() {
  ModelParams p;
  for (Param q : {Param::hbar, Param::m, Param::c, Param::eps0, Param::mu}) {
    p.set(q, Expr(1));
  }
  for (Param q : {Param::lam, Param::rho, Param::K}) {
    p.set(q, Expr(0));
  }
  return p;
}

ModelParams& ModelParams::set(Param p, const Expr& value) {
  if (p == Param::pi) {
    throw ValidationError("pi is not a free parameter");
  }
  if (!value.is_zero() && !value.as_constant_monomial()) {
    throw ValidationError(std::string(algebra::param_name(p)) + " must be a single number, got " + value.to_string());
  }
  for (Param q : algebra::kAllParams) {
    if (q != Param::pi && value.depends_on(q)) {
      throw ValidationError(std::string(algebra::param_name(p)) + " value may only involve pi");
    }
  }
  bindings_[p] = value;
  return *this;
}

ModelParams& ModelParams::set(Param p, std::string_view value) {
  try {
    return set(p, algebra::parse_expr(value));
  } catch (const algebra::ParseError& e) {
    throw ValidationError(std::string(algebra::param_name(p)) + ": " + e.what());
  }
}

ModelParams& ModelParams::unset(Param p) {
  bindings_.erase(p);
  return *this;
}

bool ModelParams::fully_bound() const { return bindings_.size() + 1 == algebra::kParamCount; }

Expr ModelParams::value(Param p) const {
  auto it = bindings_.find(p);
  return it == bindings_.end() ? sym(p) : it->second;
}

double ModelParams::numeric(Param p) const {
  auto it = bindings_.find(p);
  if (it == bindings_.end()) {
    throw ValidationError("parameter '" + std::string(algebra::param_name(p)) + "' has no value");
  }
  return it->second.evaluate({});
}

std::map<Param, double> ModelParams::numeric_values() const {
  std::map<Param, double> out;
  for (const auto& [p, v] : bindings_) {
    out[p] = v.evaluate({});
  }
  return out;
}

double ModelParams::evaluate(const Expr& e) const { return bind(e).evaluate({}); }

Expr ModelParams::omega() const {
  return bind(sym(Param::mu) * sym(Param::rho) * sym(Param::m, -1) * sym(Param::c, -2) * sym(Param::eps0, -1));
}

Expr ModelParams::alpha() const {
  return bind(half() * sym(Param::mu) * sym(Param::lam) * sym(Param::pi, -1) * sym(Param::hbar, -1) *
              sym(Param::c, -2) * sym(Param::eps0, -1));
}

Expr ModelParams::omega_tilde_sq() const {
  const Expr w = omega();
  return w * w * Expr(Rational(1, 4)) + bind(sym(Param::K) * sym(Param::m, -1));
}

Expr ModelParams::divergence_constant() const {
  if (!include_divergence_term_) {
    return Expr(0);
  }
  return bind(half() * sym(Param::hbar)) * omega();
}

void ModelParams::validate() const {
  auto check = [&](Param p, bool ok, const char* rule) {
    if (is_bound(p) && !ok) {
      throw ValidationError(std::string(algebra::param_name(p)) + " must be " + rule);
    }
  };
  auto v = [&](Param p) { return is_bound(p) ? numeric(p) : 1.0; };
  check(Param::mu, v(Param::mu) != 0.0, "nonzero");
  for (Param p : {Param::m, Param::hbar, Param::c, Param::eps0}) {
    check(p, v(p) > 0.0, "positive");
  }
  check(Param::rho, v(Param::rho) >= 0.0, "non-negative");
  check(Param::K, v(Param::K) >= 0.0, "non-negative");
}

std::string ModelParams::describe() const {
  std::string out;
  for (const auto& [p, v] : bindings_) {
    if (!out.empty()) {
      out += ' ';
    }
    out += std::string(algebra::param_name(p)) + '=' + v.to_string();
  }
  if (!out.empty()) {
    out += ' ';
  }
  out += std::string("include_divergence_term=") + (include_divergence_term_ ? "true" : "false");
  return out;
}

ModelParams parse_params_text(std::string_view text) {
  ModelParams params = ModelParams::natural();
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string body = trim(line);
    if (body.empty()) {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key == "include_divergence_term") {
      if (value == "true" || value == "1") {
        params.set_include_divergence_term(true);
      } else if (value == "false" || value == "0") {
        params.set_include_divergence_term(false);
      } else {
        throw ValidationError("line " + std::to_string(lineno) + ": expected true or false");
      }
      continue;
    }
    auto p = algebra::param_from_name(key);
    if (!p || *p == Param::pi) {
      throw ValidationError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    try {
      params.set(*p, value);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return params;
}

ModelParams load_params_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot read parameter file " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_params_text(ss.str());
}

Vec2 electric_field(const ModelParams& params, Field which) {
  Vec2 out{Expr(0), Expr(0)};
  const Vec2 x{kX1, kX2};
  if (which != Field::ES) {
    const Expr k = half() * sym(Param::lam) * sym(Param::pi, -1) * sym(Param::eps0, -1) * Expr::inverse_r2();
    out[0] += k * x[0];
    out[1] += k * x[1];
  }
  if (which != Field::AC) {
    const Expr k = half() * sym(Param::rho) * sym(Param::eps0, -1);
    out[0] += k * x[0];
    out[1] += k * x[1];
  }
  return {params.bind(out[0]), params.bind(out[1])};
}

Vec2 effective_vector_potential(const ModelParams& params) {
  const Expr f = half() * sym(Param::lam) * sym(Param::pi, -1) * sym(Param::eps0, -1) * Expr::inverse_r2() +
                 half() * sym(Param::rho) * sym(Param::eps0, -1);
  const Vec2 ex = rotate({kX1, kX2});
  return {params.bind(-f * ex[0]), params.bind(-f * ex[1])};
}

Expr curl(const Vec2& a) { return a[1].derivative(Var::x1) - a[0].derivative(Var::x2); }

Expr divergence(const Vec2& a) { return a[0].derivative(Var::x1) + a[1].derivative(Var::x2); }

namespace {

// (mu/c^2) eps_ij E_i v_j
Expr velocity_coupling(const ModelParams& params, Field which) {
  const Vec2 e = electric_field(params, which);
  const Expr k = params.bind(sym(Param::mu) * sym(Param::c, -2));
  return k * (e[0] * kP2 - e[1] * kP1);
}

Expr trap(const ModelParams& params) { return params.bind(half() * sym(Param::K)) * (kX1 * kX1 + kX2 * kX2); }

Expr kinetic_lagrangian(const ModelParams& params) {
  return params.bind(half() * sym(Param::m)) * (kP1 * kP1 + kP2 * kP2);
}

}  // namespace

Expr lagrangian(const ModelParams& params) {
  return kinetic_lagrangian(params) + velocity_coupling(params, Field::Both) - trap(params) -
         params.divergence_constant();
}

Expr appendix_lagrangian(const ModelParams& params) {
  return kinetic_lagrangian(params) + velocity_coupling(params, Field::AC) - trap(params);
}

Expr reduced_lagrangian(const ModelParams& params) { return velocity_coupling(params, Field::Both) - trap(params); }

Vec2 canonical_momentum_at_rest(const Expr& lagrangian) {
  return {lagrangian.derivative(Var::p1).substitute_momenta(0, 0),
          lagrangian.derivative(Var::p2).substitute_momenta(0, 0)};
}

Expr legendre_transform(const Expr& lagrangian) {
  const Expr mass = velocity_mass(lagrangian);
  const Vec2 b = canonical_momentum_at_rest(lagrangian);
  const Vec2 v{(kP1 - b[0]).divided_by(mass), (kP2 - b[1]).divided_by(mass)};
  return kP1 * v[0] + kP2 * v[1] - lagrangian.substitute_momenta(v[0], v[1]);
}

Expr build_hamiltonian(const ModelParams& params) {
  const Vec2 pi = kinetic_momenta(params, Field::Both);
  return params.bind(half() * sym(Param::m, -1)) * dot(pi, pi) + trap(params) + params.divergence_constant();
}

Expr appendix_hamiltonian(const ModelParams& params) { return legendre_transform(appendix_lagrangian(params)); }

Expr reduced_hamiltonian(const ModelParams& params) { return trap(params); }

Vec2 build_constraints(const ModelParams& params) {
  if (params.is_bound(Param::rho) && params.value(Param::rho).is_zero()) {
    throw ValidationError("rho = 0: the reduced model has no dynamical degrees of freedom");
  }
  const Vec2 b = canonical_momentum_at_rest(reduced_lagrangian(params));
  return {kP1 - b[0], kP2 - b[1]};
}

Expr canonical_angular_momentum() { return kX1 * kP2 - kX2 * kP1; }

Vec2 kinetic_momenta(const ModelParams& params, Field which) {
  const Vec2 a = dipole_coupling(params, which);
  return {kP1 + a[0], kP2 + a[1]};
}

Expr kinetic_angular_momentum(const ModelParams& params, Field which) {
  const Vec2 pi = kinetic_momenta(params, which);
  return kX1 * pi[1] - kX2 * pi[0];
}

Expr reduced_angular_momentum(const ModelParams& params) {
  const Vec2 b = canonical_momentum_at_rest(reduced_lagrangian(params));
  return canonical_angular_momentum().substitute_momenta(b[0], b[1]);
}

Vec2 guiding_center(const ModelParams& params) {
  const Vec2 pi = rotate(kinetic_momenta(params, Field::Both));
  const Expr inv =
      params.bind(sym(Param::c, 2) * sym(Param::eps0) * sym(Param::mu, -1) * sym(Param::rho, -1));
  return {kX1 + inv * pi[0], kX2 + inv * pi[1]};
}

PolarForm polar_decompose(const Expr& h) {
  const Expr j = canonical_angular_momentum();
  if (!algebra::poisson_bracket(j, h).is_zero()) {
    throw std::invalid_argument("Hamiltonian is not rotation invariant");
  }
  const Expr mass = velocity_mass(h);
  PolarForm out;
  out.kinetic = mass * half();
  const Expr c1 = h.derivative(Var::p1).substitute_momenta(0, 0);
  const Expr c2 = h.derivative(Var::p2).substitute_momenta(0, 0);
  auto g = divide_by_x2(c1);
  if (!g || c2 != -(kX1 * *g) || g->depends_on(Var::p1) || g->depends_on(Var::p2)) {
    throw std::invalid_argument("momentum-linear part is not proportional to J");
  }
  out.gauge = *g;
  out.scalar = h.substitute_momenta(0, 0);
  return out;
}

std::map<int, Expr> radial_profile(const Expr& f) {
  if (f.depends_on(Var::p1) || f.depends_on(Var::p2)) {
    throw std::invalid_argument("radial_profile: expression depends on momenta");
  }
  if (!algebra::poisson_bracket(canonical_angular_momentum(), f).is_zero()) {
    throw std::invalid_argument("radial_profile: expression is not rotation invariant");
  }
  std::map<int, Expr> out;
  for (const auto& [mono, coeff] : f.terms()) {
    if (mono.x[1] != 0) {
      continue;
    }
    Monomial constant;
    constant.params = mono.params;
    out[mono.x[0] - 2 * mono.rpow] += Expr::monomial(coeff, constant);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

RadialPotentialExpr polar_radial_potential(const Expr& hamiltonian, int sector, const Expr& hbar) {
  const PolarForm polar = polar_decompose(hamiltonian);
  RadialPotentialExpr out;
  out.sector = sector;
  out.kinetic = polar.kinetic;
  // k p^2 -> k hbar^2 (-u'' + (m^2 - 1/4) u / r^2),  J -> m hbar
  out.coefficients[-2] = polar.kinetic * hbar * hbar * Expr(Rational(4 * sector * sector - 1, 4));
  for (const auto& [k, c] : radial_profile(polar.gauge)) {
    out.coefficients[k] -= c * hbar * Expr(sector);
  }
  for (const auto& [k, c] : radial_profile(polar.scalar)) {
    out.coefficients[k] += c;
  }
  std::erase_if(out.coefficients, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

RadialPotentialExpr closed_form_radial_potential(const ModelParams& params, int sector) {
  const Expr hbar = params.value(Param::hbar);
  const Expr mass = params.value(Param::m);
  const Expr nu = Expr(sector) - params.alpha();
  const Expr omega = params.omega();
  RadialPotentialExpr out;
  out.sector = sector;
  out.kinetic = params.bind(half() * sym(Param::m, -1));
  out.coefficients[-2] = out.kinetic * hbar * hbar * (nu * nu - Expr(Rational(1, 4)));
  out.coefficients[0] = -half() * hbar * nu * omega + params.divergence_constant();
  out.coefficients[2] = half() * mass * params.omega_tilde_sq();
  std::erase_if(out.coefficients, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

double RadialPotential::operator()(double r) const {
  if (!(r > 0.0)) {
    throw std::domain_error("radial potential needs r > 0");
  }
  return inverse_square / (r * r) + regular(r);
}

RadialPotential to_numeric(const RadialPotentialExpr& v, const ModelParams& params, double nu) {
  RadialPotential out;
  out.sector = v.sector;
  out.nu = nu;
  const double hbar = params.numeric(Param::hbar);
  out.kinetic = params.evaluate(v.kinetic) * hbar * hbar;
  for (const auto& [k, c] : v.coefficients) {
    const double value = params.evaluate(c);
    switch (k) {
      case -2:
        out.inverse_square = value;
        break;
      case 0:
        out.constant = value;
        break;
      case 2:
        out.quadratic = value;
        break;
      default:
        throw std::invalid_argument("radial potential has an r^" + std::to_string(k) + " term");
    }
  }
  const double expected = out.kinetic * (nu * nu - 0.25);
  if (std::abs(out.inverse_square - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
    throw std::invalid_argument("inverse-square coefficient does not match nu");
  }
  out.inverse_square = expected;
  out.omega_tilde = std::sqrt(2.0 * out.quadratic / params.numeric(Param::m));
  return out;
}

RadialPotential radial_effective_potential(const ModelParams& params, int sector) {
  const RadialPotentialExpr v = polar_radial_potential(build_hamiltonian(params), sector, params.value(Param::hbar));
  return to_numeric(v, params, sector - params.evaluate(params.alpha()));
}

DualChargedParams build_dual_charged_model(const ModelParams& params) {
  DualChargedParams d;
  d.q = Expr(1);
  d.B = params.bind(sym(Param::mu) * sym(Param::rho) * sym(Param::c, -2) * sym(Param::eps0, -1));
  d.Phi = params.bind(sym(Param::mu) * sym(Param::lam) * sym(Param::c, -2) * sym(Param::eps0, -1));
  d.K = params.value(Param::K);
  d.m = params.value(Param::m);
  d.hbar = params.value(Param::hbar);
  return d;
}

Expr charged_hamiltonian(const DualChargedParams& d) {
  // A_i = -(B/2) eps_ij x_j,  A^AB_i = -(Phi/(2 pi r^2)) eps_ij x_j
  const Expr f = half() * d.B + half() * d.Phi * sym(Param::pi, -1) * Expr::inverse_r2();
  const Vec2 ex = rotate({kX1, kX2});
  const Vec2 kin{kP1 + d.q * f * ex[0], kP2 + d.q * f * ex[1]};
  return dot(kin, kin).divided_by(Expr(2) * d.m) + half() * d.K * (kX1 * kX1 + kX2 * kX2);
}

Expr cyclotron_frequency(const DualChargedParams& d) { return (d.q * d.B).divided_by(d.m); }

Expr flux_fraction(const DualChargedParams& d) {
  return (d.q * d.Phi).divided_by(Expr(2) * sym(Param::pi) * d.hbar);
}

}  // namespace fracam::model

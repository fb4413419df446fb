#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracam/algebra/brackets.hpp"
#include "fracam/algebra/parser.hpp"
#include "fracam/model/model.hpp"

namespace fracam::model {
namespace {

using algebra::parse_expr;
using algebra::poisson_bracket;

ModelParams unit_params(const char* mu, const char* lam, const char* rho, const char* k) {
  ModelParams p = ModelParams::natural();
  p.set(Param::mu, mu).set(Param::lam, lam).set(Param::rho, rho).set(Param::K, k);
  return p;
}

TEST(ElectricField, SymbolicLineCharge) {
  const Vec2 e = electric_field(ModelParams::symbolic(), Field::AC);
  EXPECT_EQ(e[0], parse_expr("lam*x1/(2*pi*eps0*r2)"));
  EXPECT_EQ(e[1], parse_expr("lam*x2/(2*pi*eps0*r2)"));
  EXPECT_EQ(e[0].size(), 1u);
}

TEST(ElectricField, ZeroVolumeCharge) {
  ModelParams p = ModelParams::symbolic();
  p.set(Param::rho, Expr(0));
  const Vec2 e = electric_field(p, Field::ES);
  EXPECT_TRUE(e[0].is_zero());
  EXPECT_TRUE(e[1].is_zero());
}

TEST(ElectricField, BothFieldsAtUnitPoint) {
  const ModelParams p = unit_params("1", "1", "1", "0");
  const Vec2 e = electric_field(p, Field::Both);
  EXPECT_NEAR(e[0].evaluate({}, {1, 0, 0, 0}), 1.0 / (2 * std::numbers::pi) + 0.5, 1e-15);
  EXPECT_NEAR(e[1].evaluate({}, {1, 0, 0, 0}), 0.0, 1e-15);
}

TEST(ElectricField, Divergence) {
  const ModelParams s = ModelParams::symbolic();
  EXPECT_TRUE(divergence(electric_field(s, Field::AC)).is_zero());
  EXPECT_EQ(divergence(electric_field(s, Field::ES)), parse_expr("rho/eps0"));
}

TEST(EffectiveVectorPotential, MatchesClosedForm) {
  const Vec2 a = effective_vector_potential(ModelParams::symbolic());
  EXPECT_EQ(a[0], parse_expr("-(lam/(2*pi*eps0*r2) + rho/(2*eps0))*x2"));
  EXPECT_EQ(a[1], parse_expr("(lam/(2*pi*eps0*r2) + rho/(2*eps0))*x1"));
  EXPECT_EQ(curl(a), parse_expr("rho/eps0"));
}

TEST(EffectiveVectorPotential, SymmetricGaugeWithoutLineCharge) {
  ModelParams p = ModelParams::symbolic();
  p.set(Param::lam, Expr(0));
  const Vec2 a = effective_vector_potential(p);
  EXPECT_EQ(a[0], parse_expr("-rho*x2/(2*eps0)"));
  EXPECT_EQ(a[1], parse_expr("rho*x1/(2*eps0)"));
}

TEST(EffectiveVectorPotential, IsMinusTheDipoleCoupling) {
  const ModelParams s = ModelParams::symbolic();
  const Vec2 a = effective_vector_potential(s);
  const Vec2 pi = kinetic_momenta(s);
  const Expr k = parse_expr("mu/c^2");
  EXPECT_EQ(pi[0] - parse_expr("p1"), -(k * a[0]));
  EXPECT_EQ(pi[1] - parse_expr("p2"), -(k * a[1]));
}

TEST(Hamiltonian, BareOscillator) {
  ModelParams p = ModelParams::symbolic();
  p.set(Param::lam, Expr(0)).set(Param::rho, Expr(0));
  EXPECT_EQ(build_hamiltonian(p), parse_expr("(p1^2 + p2^2)/(2*m) + K*r2/2"));
}

TEST(Hamiltonian, ExplicitExpansion) {
  const Expr h = build_hamiltonian(ModelParams::symbolic());
  const Expr expected = parse_expr(
      "(p1 + mu/c^2*(lam*x2/(2*pi*eps0*r2) + rho*x2/(2*eps0)))^2/(2*m)"
      " + (p2 - mu/c^2*(lam*x1/(2*pi*eps0*r2) + rho*x1/(2*eps0)))^2/(2*m)"
      " + K*r2/2 + mu*hbar*rho/(2*m*c^2*eps0)");
  EXPECT_EQ(h, expected);
}

TEST(Hamiltonian, CommutesWithCanonicalAngularMomentum) {
  EXPECT_TRUE(poisson_bracket(canonical_angular_momentum(), build_hamiltonian(ModelParams::symbolic())).is_zero());
}

TEST(Hamiltonian, LegendreTransformOfLagrangian) {
  ModelParams s = ModelParams::symbolic();
  EXPECT_EQ(legendre_transform(lagrangian(s)), build_hamiltonian(s));
  s.set_include_divergence_term(false);
  EXPECT_EQ(legendre_transform(lagrangian(s)), build_hamiltonian(s));
}

TEST(Hamiltonian, AppendixHamiltonianWithoutVolumeCharge) {
  ModelParams s = ModelParams::symbolic();
  s.set(Param::rho, Expr(0));
  EXPECT_EQ(appendix_hamiltonian(s), build_hamiltonian(s));
  EXPECT_TRUE(poisson_bracket(canonical_angular_momentum(), appendix_hamiltonian(s)).is_zero());
}

TEST(Constraints, SecondClassSystem) {
  const ModelParams s = ModelParams::symbolic();
  const Vec2 phi = build_constraints(s);
  EXPECT_EQ(phi[0], parse_expr("p1 + mu/c^2*(lam*x2/(2*pi*eps0*r2) + rho*x2/(2*eps0))"));
  const Vec2 b = canonical_momentum_at_rest(lagrangian(s));
  EXPECT_EQ(phi[0], parse_expr("p1") - b[0]);
  EXPECT_EQ(phi[1], parse_expr("p2") - b[1]);
  const auto cs = algebra::build_constraint_system({phi[0], phi[1]});
  ASSERT_TRUE(cs.is_second_class());
  EXPECT_EQ(cs.bracket_matrix(0, 1), parse_expr("mu*rho/(c^2*eps0)"));
}

TEST(Constraints, InstantiatedAndSingular) {
  const Vec2 phi = build_constraints(unit_params("1", "0.3", "0.5", "0"));
  EXPECT_EQ(poisson_bracket(phi[0], phi[1]), Expr(Rational(1, 2)));
  EXPECT_THROW(build_constraints(unit_params("1", "1", "0", "1")), ValidationError);
}

TEST(ReducedModel, AngularMomentumOnConstraintSurface) {
  const ModelParams s = ModelParams::symbolic();
  const Expr jr = reduced_angular_momentum(s);
  EXPECT_EQ(jr, parse_expr("mu/(2*c^2*eps0)*(lam/pi + rho*r2)"));
  const Vec2 phi = build_constraints(s);
  const auto cs = algebra::build_constraint_system({phi[0], phi[1]});
  EXPECT_TRUE(algebra::dirac_bracket(jr, reduced_hamiltonian(s), cs).is_zero());
}

TEST(AppendixIdentity, CanonicalMinusKineticIsConstant) {
  const ModelParams s = ModelParams::symbolic();
  const Expr diff = canonical_angular_momentum() - kinetic_angular_momentum(s, Field::AC);
  const Vec2 e = electric_field(s, Field::AC);
  EXPECT_EQ(diff, parse_expr("mu/c^2*(x1*" + e[0].to_string() + ") + mu/c^2*(x2*" + e[1].to_string() + ")"));
  EXPECT_EQ(diff, parse_expr("mu*lam/(2*pi*c^2*eps0)"));
}

TEST(GuidingCenter, CommutesWithKineticMomenta) {
  const ModelParams s = ModelParams::symbolic();
  const Vec2 r = guiding_center(s);
  const Vec2 pi = kinetic_momenta(s);
  for (const Expr& ri : r) {
    for (const Expr& pj : pi) {
      EXPECT_TRUE(poisson_bracket(ri, pj).is_zero());
    }
  }
  EXPECT_EQ(poisson_bracket(r[0], r[1]), parse_expr("-c^2*eps0/(mu*rho)"));
}

TEST(GuidingCenter, AngularMomentumDecomposition) {
  const ModelParams s = ModelParams::symbolic();
  const Vec2 r = guiding_center(s);
  const Vec2 pi = kinetic_momenta(s);
  const Expr h_kin = (pi[0] * pi[0] + pi[1] * pi[1]) * parse_expr("1/(2*m)");
  const Expr lhs = parse_expr("mu*rho/(2*c^2*eps0)") * (r[0] * r[0] + r[1] * r[1]);
  const Expr rhs = canonical_angular_momentum() - parse_expr("mu*lam/(2*pi*c^2*eps0)") +
                   h_kin * parse_expr("m*c^2*eps0/(mu*rho)");
  EXPECT_EQ(lhs, rhs);
}

TEST(RadialPotential, PolarExpansionMatchesClosedForm) {
  for (bool div : {true, false}) {
    ModelParams s = ModelParams::symbolic();
    s.set_include_divergence_term(div);
    for (int sector = -3; sector <= 3; ++sector) {
      const auto polar = polar_radial_potential(build_hamiltonian(s), sector, s.value(Param::hbar));
      const auto closed = closed_form_radial_potential(s, sector);
      EXPECT_EQ(polar.kinetic, closed.kinetic);
      EXPECT_EQ(polar.coefficients, closed.coefficients) << "sector " << sector;
    }
  }
}

TEST(RadialPotential, LandauSectorValue) {
  ModelParams p = unit_params("1", "0", "0.5", "0");
  p.set_include_divergence_term(false);
  const RadialPotential v = radial_effective_potential(p, 1);
  EXPECT_DOUBLE_EQ(v.nu, 1.0);
  EXPECT_NEAR(v(1.0), 0.375 + 0.03125 - 0.25, 1e-15);
  EXPECT_THROW(v(0.0), std::domain_error);
}

TEST(RadialPotential, BareOscillatorSWave) {
  const RadialPotential v = radial_effective_potential(unit_params("1", "0", "0", "1"), 0);
  for (double r : {0.3, 1.0, 2.5}) {
    EXPECT_NEAR(v(r), -1.0 / (8 * r * r) + r * r / 2, 1e-14);
  }
}

TEST(RadialPotential, LargeRadiusCoefficient) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> digits(1, 999);
  for (int draw = 0; draw < 10; ++draw) {
    auto dec = [&] { return "0." + std::to_string(digits(rng)); };
    ModelParams p = ModelParams::natural();
    p.set(Param::mu, dec()).set(Param::lam, dec()).set(Param::rho, dec()).set(Param::K, dec()).set(Param::m, dec());
    const double m = p.numeric(Param::m);
    const double expected = 0.5 * m * p.evaluate(p.omega_tilde_sq());
    const double big = 1e5;
    const double h = build_hamiltonian(p).evaluate({}, {big, 0, 0, 0});
    EXPECT_NEAR(h / (big * big), expected, 1e-8 * expected);
    EXPECT_NEAR(radial_effective_potential(p, 2).quadratic, expected, 1e-14 * expected);
  }
}

TEST(RadialPotential, OmegaTildeIdentity) {
  const ModelParams s = ModelParams::symbolic();
  EXPECT_TRUE((s.omega_tilde_sq() - s.omega() * s.omega() * Expr(Rational(1, 4)) - parse_expr("K/m")).is_zero());
}

TEST(DualModel, FluxMapping) {
  ModelParams p = unit_params("1", "pi/2", "0.5", "0");
  const DualChargedParams d = build_dual_charged_model(p);
  EXPECT_EQ(d.q * d.Phi, parse_expr("pi/2"));
  EXPECT_EQ(flux_fraction(d), Expr(Rational(1, 4)));
  EXPECT_EQ(flux_fraction(d), p.alpha());
  EXPECT_EQ(cyclotron_frequency(d), p.omega());
  p.set(Param::lam, Expr(0));
  EXPECT_TRUE(build_dual_charged_model(p).Phi.is_zero());
}

TEST(DualModel, ChargedHamiltonianIsDipoleWithoutDivergenceTerm) {
  ModelParams s = ModelParams::symbolic();
  const Expr charged = charged_hamiltonian(build_dual_charged_model(s));
  EXPECT_EQ(charged, build_hamiltonian(s) - s.divergence_constant());
  s.set_include_divergence_term(false);
  EXPECT_EQ(charged, build_hamiltonian(s));
}

TEST(Params, FileFormat) {
  const ModelParams p = parse_params_text(
      "# trap\n"
      "mu = 1\n"
      "lam=pi/2   # quarter flux\n"
      "rho=0.5\n"
      "K=1e-3\n"
      "include_divergence_term = false\n");
  EXPECT_EQ(p.value(Param::lam), parse_expr("pi/2"));
  EXPECT_EQ(p.value(Param::K), Expr(Rational(1, 1000)));
  EXPECT_FALSE(p.include_divergence_term());
  EXPECT_EQ(p.alpha(), Expr(Rational(1, 4)));
  EXPECT_EQ(p.describe(), "mu=1 lam=pi/2 rho=1/2 K=1/1000 hbar=1 m=1 c=1 eps0=1 include_divergence_term=false");
}

TEST(Params, FileErrors) {
  EXPECT_THROW(parse_params_text("q = 1\n"), ValidationError);
  EXPECT_THROW(parse_params_text("pi = 3\n"), ValidationError);
  EXPECT_THROW(parse_params_text("mu 1\n"), ValidationError);
  EXPECT_THROW(parse_params_text("mu = x1\n"), ValidationError);
  EXPECT_THROW(parse_params_text("mu = 1 +\n"), ValidationError);
  EXPECT_THROW(load_params_file("/nonexistent/params.txt"), ValidationError);
}

TEST(Params, Validation) {
  EXPECT_NO_THROW(unit_params("1", "-2", "0.5", "0").validate());
  EXPECT_THROW(unit_params("1", "0", "-0.5", "0").validate(), ValidationError);
  EXPECT_THROW(unit_params("0", "0", "0.5", "0").validate(), ValidationError);
  ModelParams p = ModelParams::natural();
  p.set(Param::m, Expr(0));
  EXPECT_THROW(p.validate(), ValidationError);
}

}  // namespace
}  // namespace fracam::model

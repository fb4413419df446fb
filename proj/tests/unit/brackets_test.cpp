#include <gtest/gtest.h>

#include "fracam/algebra/brackets.hpp"
#include "fracam/algebra/parser.hpp"
#include "random_expr.hpp"

namespace fracam::algebra {
namespace {

// Fields and kinetic momenta written out by hand, independently of the model module.
const char* kField1 = "lam*x1/(2*pi*eps0*r2) + rho*x1/(2*eps0)";
const char* kField2 = "lam*x2/(2*pi*eps0*r2) + rho*x2/(2*eps0)";

Expr kinetic_momentum(int i) {
  // Pi_i = p_i + (mu/c^2) eps_ij E_j
  if (i == 1) {
    return parse_expr(std::string("p1 + mu/c^2*(") + kField2 + ")");
  }
  return parse_expr(std::string("p2 - mu/c^2*(") + kField1 + ")");
}

const std::map<Param, Expr> kUnitBinding = {
    {Param::mu, Expr(1)}, {Param::rho, Expr(Rational(1, 2))}, {Param::c, Expr(1)}, {Param::eps0, Expr(1)}};

TEST(PoissonBracket, CanonicalPairs) {
  EXPECT_EQ(poisson_bracket(parse_expr("x1"), parse_expr("p1")), Expr(1));
  EXPECT_TRUE(poisson_bracket(parse_expr("x1"), parse_expr("p2")).is_zero());
  EXPECT_TRUE(poisson_bracket(parse_expr("x1"), parse_expr("x2")).is_zero());
}

TEST(PoissonBracket, AngularMomentumGeneratesRotations) {
  const Expr j = parse_expr("x1*p2 - x2*p1");
  EXPECT_EQ(poisson_bracket(j, parse_expr("x1")), parse_expr("x2"));
  EXPECT_EQ(poisson_bracket(j, parse_expr("x2")), parse_expr("-x1"));
  EXPECT_EQ(poisson_bracket(j, parse_expr("p1")), parse_expr("p2"));
  EXPECT_EQ(poisson_bracket(j, parse_expr("p2")), parse_expr("-p1"));
  EXPECT_TRUE(poisson_bracket(j, parse_expr("lam/r2 + rho*r2^3")).is_zero());
}

TEST(PoissonBracket, KineticMomentaLineChargeCancels) {
  EXPECT_EQ(poisson_bracket(kinetic_momentum(1), kinetic_momentum(2)), parse_expr("mu*rho/(c^2*eps0)"));
  const Expr pi1 = parse_expr("p1 + mu/c^2*lam*x2/(2*pi*eps0*r2)");
  const Expr pi2 = parse_expr("p2 - mu/c^2*lam*x1/(2*pi*eps0*r2)");
  EXPECT_TRUE(poisson_bracket(pi1, pi2).is_zero());
}

TEST(ConstraintSystem, PrimaryConstraintsAreSecondClass) {
  const ConstraintSystem cs = build_constraint_system({kinetic_momentum(1), kinetic_momentum(2)});
  ASSERT_EQ(cs.classification, ConstraintClass::second_class);
  const Expr scale = parse_expr("mu*rho/(c^2*eps0)");
  EXPECT_TRUE(cs.bracket_matrix(0, 0).is_zero());
  EXPECT_EQ(cs.bracket_matrix(0, 1), scale);
  EXPECT_EQ(cs.bracket_matrix(1, 0), -scale);
  ASSERT_TRUE(cs.inverse_matrix.has_value());
  EXPECT_EQ(cs.bracket_matrix * *cs.inverse_matrix, ExprMatrix::identity(2));
  EXPECT_EQ((*cs.inverse_matrix)(0, 1), parse_expr("-c^2*eps0/(mu*rho)"));
  EXPECT_EQ(cs.bracket_matrix(0, 1).substitute(kUnitBinding), Expr(Rational(1, 2)));
}

TEST(ConstraintSystem, CommutingMomentaAreNotSecondClass) {
  const ConstraintSystem cs = build_constraint_system({parse_expr("p1"), parse_expr("p2")});
  EXPECT_EQ(cs.classification, ConstraintClass::not_second_class);
  EXPECT_FALSE(cs.inverse_matrix.has_value());
  EXPECT_TRUE(cs.bracket_matrix(0, 1).is_zero());
  EXPECT_THROW(dirac_bracket(parse_expr("x1"), parse_expr("x2"), cs), NotSecondClassError);
}

TEST(ConstraintSystem, NonConstantBracketIsReported) {
  const ConstraintSystem cs = build_constraint_system({parse_expr("p1"), parse_expr("x1^2*p2")});
  EXPECT_EQ(cs.classification, ConstraintClass::non_constant);
  EXPECT_FALSE(cs.inverse_matrix.has_value());
  EXPECT_THROW(dirac_bracket_for(cs), NotSecondClassError);
}

TEST(ConstraintSystem, FourDimensionalSymplecticSystem) {
  const ConstraintSystem cs =
      build_constraint_system({parse_expr("x1"), parse_expr("p1"), parse_expr("x2 + mu*p1"), parse_expr("p2")});
  ASSERT_TRUE(cs.is_second_class());
  EXPECT_EQ(cs.bracket_matrix * *cs.inverse_matrix, ExprMatrix::identity(4));
  // every phase-space function is eliminated
  EXPECT_TRUE(dirac_bracket(parse_expr("x1*p2"), parse_expr("x2^2*p1"), cs).is_zero());
}

TEST(ConstraintSystem, InverseOfNonMonomialPivotIsRejected) {
  ExprMatrix m(2, 2);
  m(0, 1) = parse_expr("mu + rho");
  m(1, 0) = parse_expr("-mu - rho");
  EXPECT_THROW(invert(m), std::domain_error);
}

TEST(DiracBracket, NoncommutativeCoordinates) {
  const ConstraintSystem cs = build_constraint_system({kinetic_momentum(1), kinetic_momentum(2)});
  const Expr x1x2 = dirac_bracket(parse_expr("x1"), parse_expr("x2"), cs);
  EXPECT_EQ(x1x2, parse_expr("-c^2*eps0/(mu*rho)"));
  EXPECT_EQ(x1x2.substitute(kUnitBinding), Expr(-2));
  EXPECT_EQ(dirac_bracket(parse_expr("x2"), parse_expr("x1"), cs), -x1x2);
}

TEST(DiracBracket, ConstraintsBracketToZero) {
  const ConstraintSystem cs = build_constraint_system({kinetic_momentum(1), kinetic_momentum(2)});
  testing::RandomExprGenerator gen(99);
  for (int i = 0; i < 40; ++i) {
    const Expr f = gen.next();
    EXPECT_TRUE(dirac_bracket(cs.constraints[0], f, cs).is_zero()) << f;
    EXPECT_TRUE(dirac_bracket(f, cs.constraints[1], cs).is_zero()) << f;
  }
}

TEST(PoissonBracketProperty, AntisymmetryJacobiLeibniz) {
  testing::RandomExprGenerator gen(31337);
  for (int i = 0; i < 200; ++i) {
    const Expr f = gen.next();
    const Expr g = gen.next();
    const Expr h = gen.next();
    const Expr fg = poisson_bracket(f, g);
    EXPECT_EQ(fg, -poisson_bracket(g, f));
    const Expr jacobi = poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) +
                        poisson_bracket(h, fg);
    EXPECT_TRUE(jacobi.is_zero()) << "f=" << f << " g=" << g << " h=" << h;
    EXPECT_EQ(poisson_bracket(f, g * h), fg * h + g * poisson_bracket(f, h));
  }
}

}  // namespace
}  // namespace fracam::algebra

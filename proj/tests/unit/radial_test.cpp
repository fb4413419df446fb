#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "fracam/radial/radial.hpp"

namespace fracam::radial {
namespace {

using model::ModelParams;
using model::Param;

ModelParams params(const char* lam, const char* rho, const char* k, bool divergence = false) {
  ModelParams p = ModelParams::natural();
  p.set(Param::lam, lam).set(Param::rho, rho).set(Param::K, k).set_include_divergence_term(divergence);
  return p;
}

TEST(Discretize, FreeParticleIsUniform) {
  RadialProblem free;
  const SymTridiagonal t = discretize(free, RadialGrid::vertex(100, 2.0));
  for (double d : t.diag) {
    EXPECT_DOUBLE_EQ(d, t.diag.front());
  }
  for (double e : t.off) {
    EXPECT_DOUBLE_EQ(e, t.off.front());
  }
  const double h = 2.0 / 101;
  EXPECT_DOUBLE_EQ(t.off.front(), -0.5 / (h * h));
}

TEST(Discretize, RejectsBadInput) {
  RadialProblem p;
  p.constant = std::numeric_limits<double>::infinity();
  EXPECT_THROW(discretize(p, RadialGrid::vertex(100, 1.0)), std::domain_error);
  EXPECT_THROW(discretize(RadialProblem{}, RadialGrid{0.0, 1.0, 100}), std::invalid_argument);
  EXPECT_THROW(discretize(RadialProblem{}, RadialGrid{0.1, 1.0, 10}), std::invalid_argument);
  RadialProblem mismatched;
  mismatched.nu = 1.0;
  EXPECT_THROW(discretize(mismatched, RadialGrid::cell_centred(100, 1.0), Scheme::Regularized), std::invalid_argument);
}

TEST(Discretize, BoxLimitIsSecondOrder) {
  const double exact = std::numbers::pi * std::numbers::pi / 2;
  std::vector<double> err;
  for (int n : {99, 199, 399}) {
    const RadialGrid g = RadialGrid::vertex(n, 1.0);
    err.push_back(eigen_lowest(discretize(RadialProblem{}, g), 1, g.spacing()).eigenvalues[0] - exact);
  }
  EXPECT_LT(std::abs(err[2]), 1e-4);
  EXPECT_NEAR(err[0] / err[1], 4.0, 0.01);
  EXPECT_NEAR(err[1] / err[2], 4.0, 0.01);
}

TEST(EigenLowest, MatchesDenseSolver) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 120;
  SymTridiagonal t;
  for (int i = 0; i < n; ++i) {
    t.diag.push_back(3.0 * u(rng));
  }
  for (int i = 0; i + 1 < n; ++i) {
    t.off.push_back(u(rng));
  }
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    dense(i, i) = t.diag[i];
    if (i + 1 < n) {
      dense(i, i + 1) = dense(i + 1, i) = t.off[i];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  const EigenResult r = eigen_lowest(t, 30, 0.5);
  for (int j = 0; j < 30; ++j) {
    EXPECT_NEAR(r.eigenvalues[j], solver.eigenvalues()(j), 1e-12);
    EXPECT_LT(r.residuals[j], 1e-10);
    double norm = 0.0;
    double overlap = 0.0;
    for (int i = 0; i < n; ++i) {
      norm += 0.5 * r.eigenvectors[j][i] * r.eigenvectors[j][i];
      overlap += std::sqrt(0.5) * r.eigenvectors[j][i] * solver.eigenvectors()(i, j);
    }
    EXPECT_NEAR(norm, 1.0, 1e-12);
    EXPECT_NEAR(std::abs(overlap), 1.0, 1e-9);
  }
  for (double x : {-2.0, 0.0, 1.5}) {
    int below = 0;
    for (int j = 0; j < n; ++j) {
      below += solver.eigenvalues()(j) < x;
    }
    EXPECT_EQ(sturm_count(t, x), below);
  }
  EXPECT_THROW(eigen_lowest(t, 31), std::invalid_argument);
}

TEST(Converge, BareOscillator) {
  const ModelParams p = params("0", "0", "1");
  for (int m = 0; m <= 3; ++m) {
    const ConvergedSpectrum s = converge(make_problem(p, m), 4, 1e-9);
    for (int nr = 0; nr < 4; ++nr) {
      EXPECT_NEAR(s.energies[nr], 2 * nr + m + 1, 1e-6) << "m=" << m << " n_r=" << nr;
      EXPECT_LT(s.errors[nr], 1e-9);
    }
  }
}

TEST(Converge, LandauLevelsAreDegenerateAndEvenlySpaced) {
  const ModelParams p = params("0", "0.5", "0");
  for (int m = 1; m <= 3; ++m) {
    const ConvergedSpectrum s = converge(make_problem(p, m), 5, 1e-8);
    for (int n = 0; n < 5; ++n) {
      EXPECT_NEAR(s.energies[n], (n + 0.5) * 0.5, 1e-6);
    }
  }
}

TEST(Converge, FockDarwinWithFlux) {
  // alpha = 0.3, Omega = 1, K = 0.2
  const ModelParams p = params("0.6*pi", "1", "0.2", true);
  const double alpha = p.evaluate(p.alpha());
  const double omega_tilde = std::sqrt(0.25 + 0.2);
  for (int m = -2; m <= 3; ++m) {
    const double nu = m - alpha;
    const ConvergedSpectrum s = converge(make_problem(p, m), 6, 1e-8);
    for (int nr = 0; nr < 6; ++nr) {
      const double exact = (2 * nr + 1 + std::abs(nu)) * omega_tilde - nu / 2 + 0.5;
      EXPECT_NEAR(s.energies[nr], exact, 1e-6) << "m=" << m << " n_r=" << nr;
    }
  }
}

TEST(Converge, SecondOrderLadder) {
  for (const char* lam : {"0", "0.6*pi", "0.9*pi"}) {
    const ModelParams p = params(lam, "1", "0.2");
    const ConvergedSpectrum s = converge(make_problem(p, 0), 3, 1e-9);
    for (double order : s.observed_order) {
      EXPECT_NEAR(order, 2.0, 0.2) << "lam=" << lam;
    }
  }
}

TEST(Converge, SpectralFlow) {
  const ConvergedSpectrum a = converge(make_problem(params("0.6*pi", "1", "0.2"), 1), 4, 1e-9);
  const ConvergedSpectrum b = converge(make_problem(params("2.6*pi", "1", "0.2"), 2), 4, 1e-9);
  EXPECT_NEAR(a.nu, b.nu, 1e-14);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(a.energies[i], b.energies[i], 1e-9);
  }
}

TEST(Converge, MonotoneInTrapStiffness) {
  std::vector<double> previous;
  for (const char* k : {"0.01", "0.1", "0.5", "2"}) {
    const ConvergedSpectrum s = converge(make_problem(params("0.6*pi", "1", k), -1), 3, 1e-8);
    if (!previous.empty()) {
      for (int i = 0; i < 3; ++i) {
        EXPECT_GT(s.energies[i], previous[i]);
      }
    }
    previous = s.energies;
  }
}

TEST(Converge, ReportsExhaustedLadder) {
  ConvergeOptions opt;
  opt.max_levels = 2;
  EXPECT_THROW(converge(make_problem(params("0", "0", "1"), 0), 2, 1e-10, opt), ConvergenceError);
  EXPECT_THROW(converge(make_problem(params("0", "0", "0"), 0), 2, 1e-8), std::invalid_argument);
}

TEST(Expectation, LowestLandauLevelMoments) {
  const ConvergedSpectrum s = converge(make_problem(params("0", "0.5", "0"), 1), 1, 1e-9);
  const auto& u = s.finest.eigenvectors[0];
  EXPECT_NEAR(expectation([](double) { return 1.0; }, u, s.grid), 1.0, 1e-12);
  // 2 hbar (nu + 1) / (m Omega)
  EXPECT_NEAR(expectation([](double r) { return r * r; }, u, s.grid), 8.0, 1e-4);
}

TEST(Expectation, EnergyFunctionalReproducesEigenvalue) {
  const RadialProblem p = make_problem(params("0", "0.5", "0.3"), 1);
  const ConvergedSpectrum s = converge(p, 1, 1e-9);
  const auto& u = s.finest.eigenvectors[0];
  const double h = s.grid.spacing();
  // u(0) = 0 half a cell to the left of the first node
  double kinetic = p.kinetic * u[0] * u[0] / (0.5 * h);
  for (int i = 0; i + 1 < s.grid.n; ++i) {
    kinetic += p.kinetic * (u[i + 1] - u[i]) * (u[i + 1] - u[i]) / h;
  }
  const double potential = expectation([&](double r) { return p.potential(r); }, u, s.grid);
  EXPECT_NEAR(kinetic + potential, s.energies[0], 1e-4);
}

TEST(SolveSectors, DeterministicOrder) {
  const ModelParams p = params("0.6*pi", "1", "0.2");
  const std::vector<int> sectors{3, -2, 0};
  const auto a = solve_sectors(p, sectors, 2, 1e-8);
  const auto b = solve_sectors(p, sectors, 2, 1e-8);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].sector, sectors[i]);
    EXPECT_EQ(a[i].energies, b[i].energies);
  }
}

}  // namespace
}  // namespace fracam::radial

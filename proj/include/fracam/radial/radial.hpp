#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracam/model/model.hpp"

namespace fracam::radial {

struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }
  std::vector<double> multiply(const std::vector<double>& v) const;
};

/// Equally spaced nodes r_min, r_min + h, ..., r_max.
struct RadialGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  int n = 0;

  double spacing() const { return (r_max - r_min) / (n - 1); }
  double node(int i) const { return r_min + i * spacing(); }
  void validate() const;

  /// n interior nodes of [0, length]: r_i = (i + 1) h, h = length / (n + 1).
  static RadialGrid vertex(int n, double length);
  /// n cell centres of [0, length]: r_i = (i + 1/2) h, h = length / n.
  static RadialGrid cell_centred(int n, double length);
};

/// -kinetic u'' + (inverse_square / r^2 + constant + quadratic r^2) u = E u
struct RadialProblem {
  int sector = 0;
  double nu = 0.0;
  double kinetic = 0.5;
  double inverse_square = 0.0;
  double constant = 0.0;
  double quadratic = 0.0;

  double potential(double r) const { return inverse_square / (r * r) + regular(r); }
  double regular(double r) const { return constant + quadratic * r * r; }
};

RadialProblem make_problem(const model::RadialPotential& v);
/// Sector problem of build_hamiltonian; params must be fully bound.
RadialProblem make_problem(const model::ModelParams& params, int sector);

enum class Scheme {
  /// 3-point Laplacian on u with Dirichlet ends; diagonal 2k/h^2 + V(r_i).
  Standard,
  /// Flux form for w = u / r^(|nu| + 1/2) on a cell-centred grid, symmetrised
  /// back to u. Second order for every nu; the inverse-square coefficient
  /// must equal kinetic * (nu^2 - 1/4).
  Regularized,
};

/// Throws std::domain_error on a non-finite potential sample.
SymTridiagonal discretize(const RadialProblem& problem, const RadialGrid& grid, Scheme scheme = Scheme::Standard);

/// Eigenpairs with eigenvectors as node values u_i, normalised to h sum u_i^2 = 1.
struct EigenResult {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
  std::vector<double> residuals;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<std::string> diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

/// Number of eigenvalues strictly below x.
int sturm_count(const SymTridiagonal& t, double x);

/// k lowest eigenpairs by Sturm bisection and inverse iteration. Requires k <= n/4.
EigenResult eigen_lowest(const SymTridiagonal& t, int k, double spacing = 1.0, bool vectors = true);

struct ConvergeOptions {
  Scheme scheme = Scheme::Regularized;
  int n0 = 200;
  int max_levels = 8;
  /// 0 selects the oscillator-length based radius.
  double r_max = 0.0;
  double margin = 6.0;
};

struct ConvergedSpectrum {
  int sector = 0;
  double nu = 0.0;
  double tol = 0.0;
  double r_max = 0.0;
  std::vector<double> energies;  ///< Richardson-extrapolated
  std::vector<double> errors;    ///< |last two extrapolations|
  std::vector<double> residuals;  ///< finest grid
  std::vector<double> observed_order;
  std::vector<int> ladder;
  RadialGrid grid;  ///< finest grid
  EigenResult finest;
};

/// Oscillator-length based domain: l * (sqrt(2 (2k + |nu| + 1)) + margin).
double auto_r_max(const RadialProblem& problem, int k, double margin = 6.0);

/// Refinement ladder with grid halving and order-2 Richardson extrapolation.
ConvergedSpectrum converge(const RadialProblem& problem, int k, double tol, const ConvergeOptions& options = {});

/// Independent sector solves run concurrently; results are in sector order.
std::vector<ConvergedSpectrum> solve_sectors(const model::ModelParams& params, const std::vector<int>& sectors, int k,
                                             double tol, const ConvergeOptions& options = {});
std::vector<ConvergedSpectrum> solve_problems(const std::vector<RadialProblem>& problems, int k, double tol,
                                              const ConvergeOptions& options = {});

/// h sum u_i^2 f(r_i)
double expectation(const std::function<double(double)>& f, const std::vector<double>& u, const RadialGrid& grid);

}  // namespace fracam::radial

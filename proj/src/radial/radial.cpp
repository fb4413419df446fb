#include "fracam/radial/radial.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace fracam::radial {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double norm2(const std::vector<double>& v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }

// Gaussian elimination with partial pivoting on (t - shift), in the layout of
// LAPACK dgtsv. Overwrites b with the solution.
void solve_shifted(const SymTridiagonal& t, double shift, std::vector<double>& b) {
  const std::size_t n = t.size();
  std::vector<double> d(n), dl(t.off), du(t.off), du2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = t.diag[i] - shift;
  }
  const double tiny = kEps * std::max(1.0, std::abs(shift));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) {
        d[i] = tiny;
      }
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double temp = d[i + 1];
      d[i + 1] = du[i] - fact * temp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      du[i] = temp;
      std::swap(b[i], b[i + 1]);
      b[i + 1] -= fact * b[i];
    }
  }
  if (d[n - 1] == 0.0) {
    d[n - 1] = tiny;
  }
  b[n - 1] /= d[n - 1];
  if (n > 1) {
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  }
  for (std::size_t i = n - 2; i-- > 0;) {
    b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  }
}

std::string describe_ladder(const std::vector<std::vector<double>>& x) {
  std::ostringstream os;
  os.precision(12);
  for (std::size_t j = 0; j < x.size(); ++j) {
    os << (j ? " | " : "") << x[j].front();
  }
  return os.str();
}

}  // namespace

std::vector<double> SymTridiagonal::multiply(const std::vector<double>& v) const {
  const std::size_t n = size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * v[i];
    if (i > 0) {
      s += off[i - 1] * v[i - 1];
    }
    if (i + 1 < n) {
      s += off[i] * v[i + 1];
    }
    out[i] = s;
  }
  return out;
}

void RadialGrid::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min) || n < 64) {
    std::ostringstream os;
    os << "invalid radial grid: r_min=" << r_min << " r_max=" << r_max << " n=" << n;
    throw std::invalid_argument(os.str());
  }
}

RadialGrid RadialGrid::vertex(int n, double length) {
  const double h = length / (n + 1);
  return {h, n * h, n};
}

RadialGrid RadialGrid::cell_centred(int n, double length) {
  const double h = length / n;
  return {0.5 * h, (n - 0.5) * h, n};
}

RadialProblem make_problem(const model::RadialPotential& v) {
  RadialProblem p;
  p.sector = v.sector;
  p.nu = v.nu;
  p.kinetic = v.kinetic;
  p.inverse_square = v.inverse_square;
  p.constant = v.constant;
  p.quadratic = v.quadratic;
  return p;
}

RadialProblem make_problem(const model::ModelParams& params, int sector) {
  return make_problem(model::radial_effective_potential(params, sector));
}

SymTridiagonal discretize(const RadialProblem& problem, const RadialGrid& grid, Scheme scheme) {
  grid.validate();
  const int n = grid.n;
  const double h = grid.spacing();
  const double k = problem.kinetic;
  SymTridiagonal t;
  t.diag.resize(n);
  t.off.resize(n - 1);
  if (scheme == Scheme::Standard) {
    for (int i = 0; i < n; ++i) {
      t.diag[i] = 2.0 * k / (h * h) + problem.potential(grid.node(i));
    }
    std::fill(t.off.begin(), t.off.end(), -k / (h * h));
  } else {
    if (std::abs(grid.r_min - 0.5 * h) > 1e-12 * h) {
      throw std::invalid_argument("regularized scheme needs a cell-centred grid");
    }
    const double expected = k * (problem.nu * problem.nu - 0.25);
    if (std::abs(problem.inverse_square - expected) > 1e-12 * std::max(1.0, std::abs(expected))) {
      throw std::invalid_argument("regularized scheme: inverse-square coefficient differs from kinetic*(nu^2-1/4)");
    }
    // weight rho = r^a; ratios evaluated in logs since a can be large
    const double a = 2.0 * std::abs(problem.nu) + 1.0;
    for (int i = 0; i < n; ++i) {
      const double r = grid.node(i);
      const double lr = std::log(r);
      const double left = i == 0 ? 0.0 : std::exp(a * (std::log(r - 0.5 * h) - lr));
      const double right = std::exp(a * (std::log(r + 0.5 * h) - lr));
      t.diag[i] = k * (left + right) / (h * h) + problem.regular(r);
      if (i + 1 < n) {
        const double rn = grid.node(i + 1);
        t.off[i] = -k / (h * h) * std::exp(a * (std::log(r + 0.5 * h) - 0.5 * (lr + std::log(rn))));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(t.diag[i])) {
      std::ostringstream os;
      os << "non-finite potential sample at r=" << grid.node(i);
      throw std::domain_error(os.str());
    }
  }
  return t;
}

int sturm_count(const SymTridiagonal& t, double x) {
  const std::size_t n = t.size();
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    q = t.diag[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) {
      q = -kEps * (std::abs(t.diag[i]) + std::abs(x) + 1e-300);
    }
    if (q < 0.0) {
      ++count;
    }
  }
  return count;
}

EigenResult eigen_lowest(const SymTridiagonal& t, int k, double spacing, bool vectors) {
  const int n = static_cast<int>(t.size());
  if (k < 1 || 4 * k > n) {
    throw std::invalid_argument("eigen_lowest: need 1 <= k <= n/4");
  }
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));

  EigenResult out;
  double floor = lo;
  for (int j = 0; j < k; ++j) {
    double a = floor;
    double b = hi;
    int it = 0;
    while (b - a > 2.0 * kEps * (std::abs(a) + std::abs(b)) + kEps * kEps * scale) {
      if (++it > 400) {
        throw ConvergenceError("bisection did not converge", {"eigenvalue " + std::to_string(j)});
      }
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) {
        break;
      }
      if (sturm_count(t, mid) > j) {
        b = mid;
      } else {
        a = mid;
      }
    }
    out.eigenvalues.push_back(0.5 * (a + b));
    floor = a;
  }

  if (!vectors) {
    return out;
  }
  for (int j = 0; j < k; ++j) {
    const double lambda = out.eigenvalues[j];
    std::vector<double> v(n, 1.0);
    for (int it = 0; it < 3; ++it) {
      solve_shifted(t, lambda, v);
      for (int prev = 0; prev < j; ++prev) {
        if (std::abs(out.eigenvalues[prev] - lambda) < 1e-6 * scale) {
          const auto& u = out.eigenvectors[prev];
          double dot = 0.0;
          for (int i = 0; i < n; ++i) {
            dot += u[i] * v[i] * spacing;
          }
          for (int i = 0; i < n; ++i) {
            v[i] -= dot * u[i];
          }
        }
      }
      const double nv = norm2(v);
      for (double& x : v) {
        x /= nv;
      }
    }
    const auto tv = t.multiply(v);
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
      res += (tv[i] - lambda * v[i]) * (tv[i] - lambda * v[i]);
    }
    const double residual = std::sqrt(res);
    if (!(residual < 1e-6 * std::max(1.0, scale))) {
      throw ConvergenceError("inverse iteration did not converge",
                             {"eigenvalue " + std::to_string(j) + " residual " + std::to_string(residual)});
    }
    const auto peak = std::max_element(v.begin(), v.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    const double sign = *peak < 0 ? -1.0 : 1.0;
    for (double& x : v) {
      x *= sign / std::sqrt(spacing);
    }
    out.residuals.push_back(residual);
    out.eigenvectors.push_back(std::move(v));
  }
  return out;
}

double auto_r_max(const RadialProblem& problem, int k, double margin) {
  if (!(problem.quadratic > 0.0)) {
    throw std::invalid_argument("radial problem is not confined (no r^2 term); give r_max explicitly");
  }
  const double length = std::sqrt(std::sqrt(problem.kinetic / problem.quadratic));
  return length * (std::sqrt(2.0 * (2.0 * k + std::abs(problem.nu) + 1.0)) + margin);
}

ConvergedSpectrum converge(const RadialProblem& problem, int k, double tol, const ConvergeOptions& options) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  ConvergedSpectrum out;
  out.sector = problem.sector;
  out.nu = problem.nu;
  out.tol = tol;
  out.r_max = options.r_max > 0.0 ? options.r_max : auto_r_max(problem, k, options.margin);

  auto grid_for = [&](int n) {
    return options.scheme == Scheme::Regularized ? RadialGrid::cell_centred(n, out.r_max)
                                                 : RadialGrid::vertex(n, out.r_max);
  };

  std::vector<std::vector<double>> raw;
  std::vector<std::vector<double>> extrapolated;
  for (int level = 0; level < options.max_levels; ++level) {
    const int n = options.n0 << level;
    const RadialGrid grid = grid_for(n);
    out.ladder.push_back(n);
    const SymTridiagonal t = discretize(problem, grid, options.scheme);
    raw.push_back(eigen_lowest(t, k, grid.spacing(), false).eigenvalues);
    if (level == 0) {
      continue;
    }
    std::vector<double> x(k);
    for (int i = 0; i < k; ++i) {
      x[i] = raw[level][i] + (raw[level][i] - raw[level - 1][i]) / 3.0;
    }
    extrapolated.push_back(x);
    if (extrapolated.size() < 2) {
      continue;
    }
    const auto& prev = extrapolated[extrapolated.size() - 2];
    double worst = 0.0;
    for (int i = 0; i < k; ++i) {
      worst = std::max(worst, std::abs(x[i] - prev[i]));
    }
    if (worst >= tol) {
      continue;
    }
    out.grid = grid;
    out.finest = eigen_lowest(t, k, grid.spacing(), true);
    out.energies = x;
    out.residuals = out.finest.residuals;
    for (int i = 0; i < k; ++i) {
      out.errors.push_back(std::abs(x[i] - prev[i]));
      const double d1 = raw[level - 1][i] - raw[level - 2][i];
      const double d2 = raw[level][i] - raw[level - 1][i];
      out.observed_order.push_back(d2 != 0.0 && d1 / d2 > 0.0 ? std::log2(d1 / d2)
                                                              : std::numeric_limits<double>::quiet_NaN());
    }
    return out;
  }
  std::ostringstream head;
  head << "sector " << problem.sector << ": refinement ladder exhausted at n=" << out.ladder.back()
       << " without reaching tol=" << tol;
  throw ConvergenceError(head.str(), {"ground-state extrapolations: " + describe_ladder(extrapolated)});
}

std::vector<ConvergedSpectrum> solve_problems(const std::vector<RadialProblem>& problems, int k, double tol,
                                              const ConvergeOptions& options) {
  std::vector<ConvergedSpectrum> out(problems.size());
  std::vector<std::exception_ptr> errors(problems.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < problems.size(); i = next++) {
      try {
        out[i] = converge(problems[i], k, tol, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(workers, problems.size()); ++w) {
    pool.emplace_back(work);
  }
  work();
  for (auto& th : pool) {
    th.join();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return out;
}

std::vector<ConvergedSpectrum> solve_sectors(const model::ModelParams& params, const std::vector<int>& sectors, int k,
                                             double tol, const ConvergeOptions& options) {
  std::vector<RadialProblem> problems;
  problems.reserve(sectors.size());
  for (int s : sectors) {
    problems.push_back(make_problem(params, s));
  }
  return solve_problems(problems, k, tol, options);
}

double expectation(const std::function<double(double)>& f, const std::vector<double>& u, const RadialGrid& grid) {
  const double h = grid.spacing();
  double s = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    s += u[i] * u[i] * f(grid.node(i));
  }
  return h * s;
}

}  // namespace fracam::radial

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracam/algebra/quantize.hpp"
#include "fracam/model/model.hpp"
#include "fracam/radial/radial.hpp"

namespace fracam::angular {

using algebra::Expr;
using model::ModelParams;

/// J_n = offset + n * step
struct LadderRule {
  Expr step;
  Expr offset;

  Expr level(int n) const { return offset + Expr(n) * step; }
  std::string rule() const;
};

/// n hbar
LadderRule canonical_j_rule(const ModelParams& params);

/// J_r on the constraint surface, quantized with the Dirac bracket of the
/// primary constraints. Throws model::ValidationError when rho is bound to 0.
algebra::OscillatorSpectrum reduced_j_spectrum(const ModelParams& params);

/// n hbar - (J - J_K) for the line-charge-only model. rho is forced to 0;
/// throws std::logic_error if J - J_K is not a constant.
LadderRule kinetic_j_spectrum(const ModelParams& params);

struct KineticJCheck {
  int sector = 0;
  double measured = 0.0;
  double expected = 0.0;
  double deviation = 0.0;
  double tol = 0.0;
};

/// <J_K> on the ground state of each sector of the rho = 0 Hamiltonian.
std::vector<KineticJCheck> kinetic_j_numeric_check(const ModelParams& params, const std::vector<int>& sectors,
                                                   double tol);

struct GuidingCenterRow {
  double K = 0.0;
  double k_ratio = 0.0;  ///< K / (m Omega^2)
  int sector = 0;
  double energy = 0.0;
  double measured = 0.0;  ///< hbar alpha + (m Omega / 2) <R^2>
  double expected = 0.0;  ///< (k + 1/2) hbar + hbar alpha, k = sector - 1
  double deviation = 0.0;
  double moment = 0.0;         ///< (m Omega / 2) <R^2>
  double moment_target = 0.0;  ///< hbar (nu + 1/2)
  double gap = 0.0;            ///< next radial level minus lowest
  double trap_scale = 0.0;     ///< hbar (omega_tilde - Omega/2)
  bool band_mixing = false;
  double tol = 0.0;
};

struct GuidingCenterCheck {
  std::vector<GuidingCenterRow> rows;  ///< ordered by K as given, then sector
  /// Per sector: |deviation| strictly decreases as K decreases.
  std::map<int, bool> monotone;
  /// Per sector: slope of log|deviation| against log K.
  std::map<int, double> slope;
  bool any_band_mixing = false;
};

/// Lowest-band states of the full model, sampled along a ladder of trap
/// stiffnesses. Requires rho > 0 and K values > 0.
GuidingCenterCheck guiding_center_check(const ModelParams& params, const std::vector<int>& sectors,
                                        const std::vector<double>& k_ladder, double tol);

struct Phases {
  Expr phi_ac;
  Expr phi_ab;
  bool equal = false;
};

/// Phi_AC = mu lam/(hbar c^2 eps0) and Phi_AB = q Phi / hbar of the dual twin.
Phases topological_phases(const ModelParams& params);

struct DualityEntry {
  std::string quantity;
  Expr dipole;
  Expr twin;
  bool equal = false;
};

struct SpectrumComparison {
  int sector = 0;
  std::vector<double> dipole;  ///< divergence constant removed
  std::vector<double> twin;
  double max_abs_diff = 0.0;
};

struct DualityReport {
  std::vector<DualityEntry> entries;
  std::vector<SpectrumComparison> spectra;
  double tol = 0.0;
  bool all_equal() const;
};

/// Exact level spacing, fractional J and phase against the charged twin;
/// numeric spectra as well when params are fully bound and confining.
DualityReport duality_report(const ModelParams& params, const std::vector<int>& sectors = {}, int levels = 0,
                             double tol = 1e-8);

/// Radial-solver problem of the charged twin in one sector.
radial::RadialProblem twin_problem(const ModelParams& params, int sector);

struct AngularReport {
  Expr alpha;
  LadderRule canonical_j;
  std::optional<algebra::OscillatorSpectrum> reduced_j;
  LadderRule kinetic_j;
  std::optional<GuidingCenterCheck> numeric_check;
  Phases phases;
};

AngularReport angular_report(const ModelParams& params, const std::vector<int>& sectors = {},
                             const std::vector<double>& k_ladder = {}, double tol = 1e-8);

/// {"exact": printed form, "value": number or null when symbols remain}
nlohmann::ordered_json exact_json(const ModelParams& params, const Expr& e);
nlohmann::ordered_json to_json(const LadderRule& rule, const ModelParams& params, int first, int count);
nlohmann::ordered_json to_json(const AngularReport& report, const ModelParams& params, int levels = 4);
nlohmann::ordered_json to_json(const DualityReport& report, const ModelParams& params);
nlohmann::ordered_json to_json(const Phases& phases, const ModelParams& params);

}  // namespace fracam::angular

#include "fracam/angular/angular.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "fracam/algebra/brackets.hpp"
#include "fracam/algebra/parser.hpp"

namespace fracam::angular {

using algebra::Param;
using algebra::Rational;
using model::ValidationError;

namespace {

Expr sym(Param p, int e = 1) { return Expr::param(p, algebra::Exponent(e)); }

std::function<double(double)> radial_function(const Expr& f, const ModelParams& params) {
  std::vector<std::pair<int, double>> terms;
  for (const auto& [k, c] : model::radial_profile(f)) {
    terms.emplace_back(k, params.evaluate(c));
  }
  return [terms](double r) {
    double s = 0.0;
    for (const auto& [k, c] : terms) {
      s += c * std::pow(r, k);
    }
    return s;
  };
}

std::optional<double> try_value(const ModelParams& params, const Expr& e) {
  const Expr bound = params.bind(e);
  for (Param p : algebra::kAllParams) {
    if (p != Param::pi && bound.depends_on(p)) {
      return std::nullopt;
    }
  }
  return bound.evaluate({});
}

nlohmann::ordered_json exact_and_value(const ModelParams& params, const Expr& e) {
  nlohmann::ordered_json j;
  j["exact"] = e.to_string();
  if (auto v = try_value(params, e)) {
    j["value"] = *v;
  } else {
    j["value"] = nullptr;
  }
  return j;
}

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void require_bound(const ModelParams& params, const char* what) {
  if (!params.fully_bound()) {
    throw ValidationError(std::string(what) + " needs every parameter bound to a number");
  }
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? std::numeric_limits<double>::quiet_NaN() : (n * sxy - sx * sy) / den;
}

}  // namespace

std::string LadderRule::rule() const {
  std::string out = "n*(" + step.to_string() + ")";
  if (!offset.is_zero()) {
    out += " + (" + offset.to_string() + ")";
  }
  return out;
}

LadderRule canonical_j_rule(const ModelParams& params) { return {params.value(Param::hbar), Expr(0)}; }

algebra::OscillatorSpectrum reduced_j_spectrum(const ModelParams& params) {
  const model::Vec2 phi = model::build_constraints(params);
  const auto cs = algebra::build_constraint_system({phi[0], phi[1]});
  const Expr jr = model::reduced_angular_momentum(params);
  const algebra::Scalar hbar = algebra::Scalar::from_expr(params.value(Param::hbar));
  return algebra::quantize_quadratic(jr, Expr::variable(algebra::Var::x2), Expr::variable(algebra::Var::x1), hbar,
                                     algebra::dirac_bracket_for(cs));
}

LadderRule kinetic_j_spectrum(const ModelParams& params) {
  ModelParams ac = params;
  ac.set(Param::rho, Expr(0));
  const Expr shift = model::canonical_angular_momentum() - model::kinetic_angular_momentum(ac, model::Field::AC);
  if (!shift.is_constant()) {
    throw std::logic_error("J - J_K is not constant: " + shift.to_string());
  }
  return {params.value(Param::hbar), -shift};
}

std::vector<KineticJCheck> kinetic_j_numeric_check(const ModelParams& params, const std::vector<int>& sectors,
                                                   double tol) {
  ModelParams ac = params;
  ac.set(Param::rho, Expr(0));
  require_bound(ac, "kinetic_j_numeric_check");
  if (!(ac.numeric(Param::K) > 0.0)) {
    throw ValidationError("kinetic_j_numeric_check needs K > 0 to confine the rho = 0 model");
  }
  const Expr shift = model::canonical_angular_momentum() - model::kinetic_angular_momentum(ac, model::Field::AC);
  const auto f = radial_function(shift, ac);
  const double hbar = ac.numeric(Param::hbar);
  const double alpha = ac.evaluate(ac.alpha());
  std::vector<KineticJCheck> out;
  const auto solved = radial::solve_sectors(ac, sectors, 1, tol);
  for (const auto& s : solved) {
    KineticJCheck c;
    c.sector = s.sector;
    c.tol = tol;
    c.measured = s.sector * hbar - radial::expectation(f, s.finest.eigenvectors[0], s.grid);
    c.expected = (s.sector - alpha) * hbar;
    c.deviation = c.measured - c.expected;
    out.push_back(c);
  }
  return out;
}

GuidingCenterCheck guiding_center_check(const ModelParams& params, const std::vector<int>& sectors,
                                        const std::vector<double>& k_ladder, double tol) {
  require_bound(params, "guiding_center_check");
  if (!(params.numeric(Param::rho) > 0.0)) {
    throw ValidationError("guiding_center_check needs rho > 0");
  }
  if (sectors.empty() || k_ladder.empty()) {
    throw ValidationError("guiding_center_check needs sectors and a K ladder");
  }
  const double hbar = params.numeric(Param::hbar);
  const double mass = params.numeric(Param::m);
  const double omega = params.evaluate(params.omega());
  const double alpha = params.evaluate(params.alpha());

  GuidingCenterCheck out;
  for (double k : k_ladder) {
    if (!(k > 0.0)) {
      throw ValidationError("K ladder values must be positive");
    }
    ModelParams p = params;
    p.set(Param::K, algebra::parse_expr(shortest(k)));
    const model::PolarForm h = model::polar_decompose(model::build_hamiltonian(p));
    const model::Vec2 r = model::guiding_center(p);
    const model::PolarForm r2 = model::polar_decompose(r[0] * r[0] + r[1] * r[1]);
    const double kh = p.evaluate(h.kinetic);
    const double kr = p.evaluate(r2.kinetic);
    const auto gh = radial_function(h.gauge, p);
    const auto wh = radial_function(h.scalar, p);
    const auto gr = radial_function(r2.gauge, p);
    const auto wr = radial_function(r2.scalar, p);
    const double omega_tilde = std::sqrt(p.evaluate(p.omega_tilde_sq()));

    const auto solved = radial::solve_sectors(p, sectors, 2, tol);
    for (const auto& s : solved) {
      const auto& u = s.finest.eigenvectors[0];
      auto avg = [&](const std::function<double(double)>& f) { return radial::expectation(f, u, s.grid); };
      const double e = s.energies[0];
      const double p2 = (e + s.sector * hbar * avg(gh) - avg(wh)) / kh;
      const double rr = kr * p2 - s.sector * hbar * avg(gr) + avg(wr);
      GuidingCenterRow row;
      row.K = k;
      row.k_ratio = k / (mass * omega * omega);
      row.sector = s.sector;
      row.energy = e;
      row.moment = 0.5 * mass * omega * rr;
      row.measured = hbar * alpha + row.moment;
      row.expected = (s.sector - 1 + 0.5) * hbar + hbar * alpha;
      row.deviation = row.measured - row.expected;
      row.moment_target = hbar * (s.nu + 0.5);
      row.gap = s.energies[1] - s.energies[0];
      row.trap_scale = hbar * (omega_tilde - 0.5 * omega);
      row.band_mixing = row.gap < 10.0 * row.trap_scale;
      row.tol = tol;
      out.any_band_mixing = out.any_band_mixing || row.band_mixing;
      out.rows.push_back(row);
    }
  }
  for (int sector : sectors) {
    std::vector<const GuidingCenterRow*> rows;
    for (const auto& row : out.rows) {
      if (row.sector == sector) {
        rows.push_back(&row);
      }
    }
    std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->K > b->K; });
    bool monotone = true;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0 && !(std::abs(rows[i]->deviation) < std::abs(rows[i - 1]->deviation))) {
        monotone = false;
      }
      lx.push_back(std::log(rows[i]->K));
      ly.push_back(std::log(std::abs(rows[i]->deviation)));
    }
    out.monotone[sector] = monotone;
    out.slope[sector] = fit_slope(lx, ly);
  }
  return out;
}

Phases topological_phases(const ModelParams& params) {
  Phases out;
  out.phi_ac = params.bind(sym(Param::mu) * sym(Param::lam) * sym(Param::hbar, -1) * sym(Param::c, -2) *
                           sym(Param::eps0, -1));
  const model::DualChargedParams d = model::build_dual_charged_model(params);
  out.phi_ab = (d.q * d.Phi).divided_by(d.hbar);
  out.equal = out.phi_ac == out.phi_ab;
  return out;
}

radial::RadialProblem twin_problem(const ModelParams& params, int sector) {
  const model::DualChargedParams d = model::build_dual_charged_model(params);
  const auto v = model::polar_radial_potential(model::charged_hamiltonian(d), sector, d.hbar);
  return radial::make_problem(model::to_numeric(v, params, sector - params.evaluate(model::flux_fraction(d))));
}

bool DualityReport::all_equal() const {
  for (const auto& e : entries) {
    if (!e.equal) {
      return false;
    }
  }
  for (const auto& s : spectra) {
    if (!(s.max_abs_diff <= 100 * tol)) {
      return false;
    }
  }
  return true;
}

DualityReport duality_report(const ModelParams& params, const std::vector<int>& sectors, int levels, double tol) {
  DualityReport out;
  out.tol = tol;
  const model::DualChargedParams d = model::build_dual_charged_model(params);
  const Expr hbar = params.value(Param::hbar);

  DualityEntry spacing{"level_spacing", Expr(0), hbar * model::cyclotron_frequency(d)};
  if (!params.omega().is_zero()) {
    const model::Vec2 pi = model::kinetic_momenta(params);
    const Expr kinetic = (pi[0] * pi[0] + pi[1] * pi[1]).divided_by(Expr(2) * params.value(Param::m));
    const auto spectrum =
        algebra::quantize_quadratic(kinetic, pi[0], pi[1], algebra::Scalar::from_expr(hbar));
    spacing.dipole = *spectrum.quantum().to_expr();
  }
  spacing.equal = spacing.dipole == spacing.twin;
  out.entries.push_back(spacing);

  DualityEntry fractional{"fractional_j", Expr(0), (d.q * d.Phi).divided_by(Expr(2) * sym(Param::pi))};
  if (params.is_bound(Param::rho) && params.value(Param::rho).is_zero()) {
    fractional.dipole = -kinetic_j_spectrum(params).offset;
  } else {
    fractional.dipole = reduced_j_spectrum(params).offset;
  }
  fractional.equal = fractional.dipole == fractional.twin;
  out.entries.push_back(fractional);

  const Phases phases = topological_phases(params);
  out.entries.push_back({"phase", phases.phi_ac, phases.phi_ab, phases.equal});

  if (!sectors.empty() && levels > 0) {
    require_bound(params, "numeric duality check");
    std::vector<radial::RadialProblem> dipole, twin;
    for (int s : sectors) {
      dipole.push_back(radial::make_problem(params, s));
      twin.push_back(twin_problem(params, s));
    }
    const auto a = radial::solve_problems(dipole, levels, tol);
    const auto b = radial::solve_problems(twin, levels, tol);
    const double shift = params.evaluate(params.divergence_constant());
    for (std::size_t i = 0; i < sectors.size(); ++i) {
      SpectrumComparison c;
      c.sector = sectors[i];
      for (int n = 0; n < levels; ++n) {
        c.dipole.push_back(a[i].energies[n] - shift);
        c.twin.push_back(b[i].energies[n]);
        c.max_abs_diff = std::max(c.max_abs_diff, std::abs(c.dipole.back() - c.twin.back()));
      }
      out.spectra.push_back(c);
    }
  }
  return out;
}

AngularReport angular_report(const ModelParams& params, const std::vector<int>& sectors,
                             const std::vector<double>& k_ladder, double tol) {
  AngularReport r;
  r.alpha = params.alpha();
  r.canonical_j = canonical_j_rule(params);
  if (!(params.is_bound(Param::rho) && params.value(Param::rho).is_zero())) {
    r.reduced_j = reduced_j_spectrum(params);
  }
  r.kinetic_j = kinetic_j_spectrum(params);
  if (!sectors.empty() && !k_ladder.empty()) {
    r.numeric_check = guiding_center_check(params, sectors, k_ladder, tol);
  }
  r.phases = topological_phases(params);
  return r;
}

nlohmann::ordered_json to_json(const LadderRule& rule, const ModelParams& params, int first, int count) {
  nlohmann::ordered_json j;
  j["rule"] = rule.rule();
  j["step"] = exact_and_value(params, rule.step);
  j["offset"] = exact_and_value(params, rule.offset);
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  for (int n = first; n < first + count; ++n) {
    auto level = exact_and_value(params, rule.level(n));
    level = nlohmann::ordered_json{{"n", n}, {"exact", level["exact"]}, {"value", level["value"]}};
    levels.push_back(level);
  }
  j["levels"] = levels;
  return j;
}

nlohmann::ordered_json exact_json(const ModelParams& params, const Expr& e) { return exact_and_value(params, e); }

nlohmann::ordered_json to_json(const Phases& phases, const ModelParams& params) {
  nlohmann::ordered_json j;
  const Expr two_pi = Expr(2) * sym(Param::pi);
  j["phi_ac"] = exact_and_value(params, phases.phi_ac);
  j["phi_ac_over_2pi"] = exact_and_value(params, phases.phi_ac.divided_by(two_pi));
  j["phi_ab_equiv"] = exact_and_value(params, phases.phi_ab);
  j["phi_ab_equiv_over_2pi"] = exact_and_value(params, phases.phi_ab.divided_by(two_pi));
  j["equal"] = phases.equal;
  return j;
}

nlohmann::ordered_json to_json(const AngularReport& r, const ModelParams& params, int levels) {
  nlohmann::ordered_json j;
  j["alpha"] = exact_and_value(params, r.alpha);
  j["canonical_j"] = to_json(r.canonical_j, params, -levels, 2 * levels + 1);
  if (r.reduced_j) {
    nlohmann::ordered_json red;
    red["rule"] = r.reduced_j->rule();
    red["hbar_eff"] = r.reduced_j->hbar_eff.to_string();
    red["frequency"] = r.reduced_j->freq.to_string();
    red["quantum"] = r.reduced_j->quantum().to_string();
    red["offset"] = exact_and_value(params, r.reduced_j->offset);
    if (auto hbar = try_value(params, params.value(Param::hbar))) {
      if (auto off = try_value(params, r.reduced_j->offset)) {
        red["offset_over_hbar"] = *off / *hbar;
      }
    }
    nlohmann::ordered_json lv = nlohmann::ordered_json::array();
    for (int n = 0; n < levels; ++n) {
      auto e = exact_and_value(params, r.reduced_j->level(n));
      lv.push_back({{"n", n}, {"exact", e["exact"]}, {"value", e["value"]}});
    }
    red["levels"] = lv;
    j["reduced_j"] = red;
  } else {
    j["reduced_j"] = nullptr;
  }
  j["kinetic_j"] = to_json(r.kinetic_j, params, -levels, 2 * levels + 1);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  if (r.numeric_check) {
    for (const auto& row : r.numeric_check->rows) {
      rows.push_back({{"K", row.K},
                      {"k_ratio", row.k_ratio},
                      {"sector", row.sector},
                      {"energy", row.energy},
                      {"measured", row.measured},
                      {"expected", row.expected},
                      {"deviation", row.deviation},
                      {"moment", row.moment},
                      {"moment_target", row.moment_target},
                      {"gap", row.gap},
                      {"trap_scale", row.trap_scale},
                      {"band_mixing", row.band_mixing},
                      {"tol", row.tol}});
    }
  }
  j["numeric_check"] = rows;
  if (r.numeric_check) {
    nlohmann::ordered_json trend = nlohmann::ordered_json::array();
    for (const auto& [sector, ok] : r.numeric_check->monotone) {
      trend.push_back({{"sector", sector}, {"monotone", ok}, {"loglog_slope", r.numeric_check->slope.at(sector)}});
    }
    j["numeric_trend"] = trend;
    j["band_mixing"] = r.numeric_check->any_band_mixing;
  }
  j["phases"] = to_json(r.phases, params);
  return j;
}

nlohmann::ordered_json to_json(const DualityReport& r, const ModelParams& params) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"quantity", e.quantity},
                       {"dipole", exact_and_value(params, e.dipole)},
                       {"twin", exact_and_value(params, e.twin)},
                       {"equal", e.equal}});
  }
  j["exact"] = entries;
  nlohmann::ordered_json spectra = nlohmann::ordered_json::array();
  for (const auto& s : r.spectra) {
    spectra.push_back({{"sector", s.sector}, {"dipole", s.dipole}, {"twin", s.twin}, {"max_abs_diff", s.max_abs_diff}});
  }
  j["spectra"] = spectra;
  j["tol"] = r.tol;
  j["all_equal"] = r.all_equal();
  return j;
}

}  // namespace fracam::angular

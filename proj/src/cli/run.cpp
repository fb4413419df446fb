#include "fracam/cli/run.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fracam/algebra/brackets.hpp"
#include "fracam/algebra/parser.hpp"
#include "fracam/algebra/quantize.hpp"
#include "fracam/angular/angular.hpp"
#include "fracam/radial/radial.hpp"

namespace fracam::cli {

using algebra::Expr;
using json = nlohmann::ordered_json;
using model::ValidationError;

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 6> kCommands = {{
    {Command::spectrum, "spectrum"},
    {Command::brackets, "brackets"},
    {Command::fractional_j, "fractional-j"},
    {Command::kinetic_j, "kinetic-j"},
    {Command::duality, "duality"},
    {Command::phases, "phases"},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  int v = 0;
  const char* end = s.data() + s.size();
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ValidationError("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

// Provenance shared by every artifact of a run.
struct Provenance {
  std::string command;
  const ModelParams* params = nullptr;
  double tol = 0.0;

  std::string param_text(Param p) const {
    return params->is_bound(p) ? params->value(p).to_string() : std::string("symbolic");
  }

  std::string text(const std::vector<std::string>& notes) const {
    std::ostringstream os;
    os << "# tool: " << tool_version() << '\n';
    os << "# command: " << command << '\n';
    os << "# params:";
    for (Param p : algebra::kAllParams) {
      if (p != Param::pi) {
        os << ' ' << algebra::param_name(p) << '=' << param_text(p);
      }
    }
    os << '\n';
    os << "# include_divergence_term: " << (params->include_divergence_term() ? "true" : "false") << '\n';
    os << "# tol: " << format_number(tol) << '\n';
    for (const auto& n : notes) {
      os << "# " << n << '\n';
    }
    return os.str();
  }

  json to_json(const std::vector<std::string>& notes) const {
    json p;
    for (Param q : algebra::kAllParams) {
      if (q == Param::pi) {
        continue;
      }
      if (params->is_bound(q)) {
        p[std::string(algebra::param_name(q))] = angular::exact_json(*params, params->value(q));
      } else {
        p[std::string(algebra::param_name(q))] = nullptr;
      }
    }
    json j;
    j["tool"] = "fracam";
    j["version"] = FRACAM_VERSION;
    j["command"] = command;
    j["params"] = p;
    j["include_divergence_term"] = params->include_divergence_term();
    j["tol"] = tol;
    j["notes"] = notes;
    return j;
  }
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json with_provenance(const Provenance& prov, const std::vector<std::string>& notes, const json& body) {
  json j;
  j["provenance"] = prov.to_json(notes);
  for (auto it = body.begin(); it != body.end(); ++it) {
    j[it.key()] = it.value();
  }
  return j;
}

std::optional<double> try_value(const ModelParams& params, const Expr& e) {
  const Expr bound = params.bind(e);
  if (!bound.is_constant()) {
    return std::nullopt;
  }
  for (Param p : algebra::kAllParams) {
    if (p != Param::pi && bound.depends_on(p)) {
      return std::nullopt;
    }
  }
  return bound.evaluate({});
}

std::string value_text(const ModelParams& params, const Expr& e) {
  auto v = try_value(params, e);
  return v ? format_number(*v) : std::string();
}

void require_numeric(const ModelParams& params, std::string_view command) {
  if (!params.fully_bound()) {
    throw ValidationError(std::string(command) + " needs every parameter bound to a number");
  }
}

bool confining(const ModelParams& params) {
  return params.numeric(Param::K) > 0.0 || params.numeric(Param::rho) != 0.0;
}

const std::string kKineticConvention =
    "energies in the kinetic convention: the constant divergence term mu hbar rho/(2 m c^2 eps0) is subtracted";

// spectrum

std::vector<Artifact> render_spectrum(const RunConfig& cfg, const ModelParams& params, const Provenance& prov) {
  require_numeric(params, "spectrum");
  const auto sectors = cfg.sectors.values();
  const auto solved = radial::solve_sectors(params, sectors, cfg.levels, cfg.tol);
  const double shift = params.evaluate(params.divergence_constant());
  const std::vector<std::string> notes = {
      kKineticConvention,
      "divergence constant: " + format_number(shift),
      "energy: Richardson-extrapolated eigenvalue, successive extrapolations agree to tol",
      "residual: |H u - E u| on the finest grid"};

  std::vector<Artifact> out;
  if (cfg.format == Format::csv) {
    std::ostringstream os;
    os << prov.text(notes) << "sector,nu,n,energy,residual\n";
    for (const auto& s : solved) {
      for (int n = 0; n < cfg.levels; ++n) {
        os << s.sector << ',' << format_number(s.nu) << ',' << n << ',' << format_number(s.energies[n] - shift) << ','
           << format_number(s.finest.residuals[n]) << '\n';
      }
    }
    out.push_back({"spectrum.csv", os.str()});
  } else {
    json rows = json::array();
    for (const auto& s : solved) {
      json levels = json::array();
      for (int n = 0; n < cfg.levels; ++n) {
        levels.push_back({{"n", n},
                          {"energy", s.energies[n] - shift},
                          {"error", s.errors[n]},
                          {"residual", s.finest.residuals[n]}});
      }
      rows.push_back({{"sector", s.sector},
                      {"nu", s.nu},
                      {"r_max", s.r_max},
                      {"grid_points", s.ladder},
                      {"levels", levels}});
    }
    out.push_back({"spectrum.json", dump(with_provenance(prov, notes, json{{"sectors", rows}}))});
  }

  for (int n = 0; n < cfg.levels; ++n) {
    std::ostringstream os;
    os << prov.text({kKineticConvention, "radial level n=" + std::to_string(n), "columns: sector energy"});
    for (const auto& s : solved) {
      os << s.sector << ' ' << format_number(s.energies[n] - shift) << '\n';
    }
    out.push_back({"spectrum_level_" + std::to_string(n) + ".dat", os.str()});
  }
  return out;
}

// brackets

struct Line {
  std::string quantity;
  std::string exact;
  std::string value;
};

std::vector<Line> bracket_lines(const ModelParams& params) {
  using algebra::poisson_bracket;
  std::vector<Line> lines;
  auto add = [&](std::string q, const Expr& e) { lines.push_back({std::move(q), e.to_string(), value_text(params, e)}); };
  auto note = [&](std::string q, std::string text) { lines.push_back({std::move(q), std::move(text), ""}); };

  const Expr x1 = Expr::variable(algebra::Var::x1);
  const Expr x2 = Expr::variable(algebra::Var::x2);
  const Expr p1 = Expr::variable(algebra::Var::p1);
  const Expr p2 = Expr::variable(algebra::Var::p2);
  const Expr hbar = params.value(Param::hbar);

  add("{x1,p1}", poisson_bracket(x1, p1));
  add("{x2,p2}", poisson_bracket(x2, p2));
  add("{x1,x2}", poisson_bracket(x1, x2));
  add("{p1,p2}", poisson_bracket(p1, p2));

  const model::Vec2 pi = model::kinetic_momenta(params);
  add("Pi1", pi[0]);
  add("Pi2", pi[1]);
  add("{Pi1,Pi2}", poisson_bracket(pi[0], pi[1]));

  const Expr h = model::build_hamiltonian(params);
  const Expr j = model::canonical_angular_momentum();
  add("H", h);
  add("J", j);
  add("{J,H}", poisson_bracket(j, h));

  const Expr kinetic = (pi[0] * pi[0] + pi[1] * pi[1]).divided_by(Expr(2) * params.value(Param::m));
  try {
    const auto s = algebra::quantize_quadratic(kinetic, pi[0], pi[1], algebra::Scalar::from_expr(hbar));
    note("spectrum(Pi^2/2m)", s.rule());
  } catch (const algebra::QuantizationError& e) {
    note("spectrum(Pi^2/2m)", std::string("not quantizable: ") + e.what());
  }

  const bool rho_zero = params.is_bound(Param::rho) && params.value(Param::rho).is_zero();
  if (rho_zero) {
    note("constraints", "rho = 0: the constraint matrix is singular and the reduced model does not exist");
  } else {
    const model::Vec2 phi = model::build_constraints(params);
    add("phi1", phi[0]);
    add("phi2", phi[1]);
    const auto cs = algebra::build_constraint_system({phi[0], phi[1]});
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        add("C" + std::to_string(a + 1) + std::to_string(b + 1), cs.bracket_matrix(a, b));
      }
    }
    note("classification", algebra::to_string(cs.classification));
    if (cs.is_second_class()) {
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
          add("Cinv" + std::to_string(a + 1) + std::to_string(b + 1), (*cs.inverse_matrix)(a, b));
        }
      }
      const algebra::Bracket db = algebra::dirac_bracket_for(cs);
      add("{x1,x2}_D", db(x1, x2));
      add("{x1,p1}_D", db(x1, p1));
      add("{x2,p2}_D", db(x2, p2));
      add("{x1,p2}_D", db(x1, p2));
      add("{p1,p2}_D", db(p1, p2));
      const Expr jr = model::reduced_angular_momentum(params);
      const Expr hr = model::reduced_hamiltonian(params);
      add("J_r", jr);
      add("H_r", hr);
      add("{J_r,H_r}_D", db(jr, hr));
      try {
        note("spectrum(J_r)", angular::reduced_j_spectrum(params).rule());
      } catch (const algebra::QuantizationError& e) {
        note("spectrum(J_r)", std::string("not quantizable: ") + e.what());
      }
    }
  }

  ModelParams ac = params;
  ac.set(Param::rho, Expr(0));
  add("J - J_K", j - model::kinetic_angular_momentum(ac, model::Field::AC));
  note("spectrum(J_K)", angular::kinetic_j_spectrum(params).rule());
  return lines;
}

std::vector<Artifact> render_brackets(const RunConfig& cfg, const ModelParams& params, const Provenance& prov) {
  const auto lines = bracket_lines(params);
  const std::vector<std::string> notes = {"exact symbolic brackets; value is filled when no symbols remain"};
  if (cfg.format == Format::csv) {
    std::ostringstream os;
    os << prov.text(notes) << "quantity,exact,value\n";
    for (const auto& l : lines) {
      os << csv_field(l.quantity) << ',' << csv_field(l.exact) << ',' << l.value << '\n';
    }
    return {{"brackets.csv", os.str()}};
  }
  json rows = json::array();
  for (const auto& l : lines) {
    json v = l.value.empty() ? json(nullptr) : json(std::stod(l.value));
    rows.push_back({{"quantity", l.quantity}, {"exact", l.exact}, {"value", v}});
  }
  return {{"brackets.json", dump(with_provenance(prov, notes, json{{"entries", rows}}))}};
}

// fractional-j

std::vector<Artifact> render_fractional_j(const RunConfig& cfg, const ModelParams& params, const Provenance& prov) {
  std::vector<double> ks;
  if (!cfg.k_ladder.empty()) {
    require_numeric(params, "fractional-j with --k-ladder");
    const double m = params.numeric(Param::m);
    const double omega = params.evaluate(params.omega());
    if (!(omega != 0.0)) {
      throw ValidationError("--k-ladder is in units of m Omega^2 and needs rho != 0");
    }
    for (double r : cfg.k_ladder) {
      ks.push_back(r * m * omega * omega);
    }
  }
  const auto sectors = ks.empty() ? std::vector<int>{} : cfg.sectors.values();
  const angular::AngularReport report = angular::angular_report(params, sectors, ks, cfg.tol);
  const std::vector<std::string> notes = {
      "angular momenta in units of hbar; phases in units of 2 pi",
      "numeric_check: lowest-band guiding-centre moment, measured = hbar alpha + (m Omega/2)<R^2>",
      "expected = (k + 1/2) hbar + hbar alpha with k = sector - 1",
      "numeric_check rows replace K by k_ratio * m Omega^2"};

  std::vector<Artifact> out;
  if (cfg.format == Format::csv) {
    std::ostringstream os;
    os << prov.text(notes);
    os << "# alpha: " << report.alpha.to_string() << '\n';
    if (report.reduced_j) {
      os << "# reduced_j: " << report.reduced_j->rule() << '\n';
    }
    os << "# kinetic_j: " << report.kinetic_j.rule() << '\n';
    os << "K,k_ratio,sector,energy,measured,expected,deviation,moment,moment_target,gap,band_mixing\n";
    if (report.numeric_check) {
      for (const auto& r : report.numeric_check->rows) {
        os << format_number(r.K) << ',' << format_number(r.k_ratio) << ',' << r.sector << ','
           << format_number(r.energy) << ',' << format_number(r.measured) << ',' << format_number(r.expected) << ','
           << format_number(r.deviation) << ',' << format_number(r.moment) << ',' << format_number(r.moment_target)
           << ',' << format_number(r.gap) << ',' << (r.band_mixing ? "true" : "false") << '\n';
      }
    }
    out.push_back({"fractional_j.csv", os.str()});
  } else {
    out.push_back({"fractional_j.json", dump(with_provenance(prov, notes, angular::to_json(report, params, cfg.levels)))});
  }

  if (report.numeric_check) {
    const auto& check = *report.numeric_check;
    for (int sector : sectors) {
      std::ostringstream dev, mom;
      std::vector<double> lx, ly;
      for (const auto& r : check.rows) {
        if (r.sector == sector && r.moment != r.moment_target) {
          lx.push_back(std::log(r.k_ratio));
          ly.push_back(std::log(std::abs(r.moment - r.moment_target)));
        }
      }
      double moment_slope = std::nan("");
      if (lx.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
          sx += lx[i];
          sy += ly[i];
          sxx += lx[i] * lx[i];
          sxy += lx[i] * ly[i];
        }
        const double n = static_cast<double>(lx.size());
        moment_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      }
      dev << prov.text({"sector " + std::to_string(sector), "columns: K/(m Omega^2) |measured - expected|",
                        "fitted log-log slope: " + format_number(check.slope.at(sector)),
                        std::string("monotone: ") + (check.monotone.at(sector) ? "true" : "false")});
      mom << prov.text({"sector " + std::to_string(sector),
                        "columns: K/(m Omega^2) |(m Omega/2)<R^2> - hbar (nu + 1/2)|",
                        "fitted log-log slope: " + format_number(moment_slope)});
      for (const auto& r : check.rows) {
        if (r.sector == sector) {
          dev << format_number(r.k_ratio) << ' ' << format_number(std::abs(r.deviation)) << '\n';
          mom << format_number(r.k_ratio) << ' ' << format_number(std::abs(r.moment - r.moment_target)) << '\n';
        }
      }
      out.push_back({"ladder_sector_" + std::to_string(sector) + ".dat", dev.str()});
      out.push_back({"ladder_moment_sector_" + std::to_string(sector) + ".dat", mom.str()});
    }
  }
  return out;
}

// kinetic-j

std::vector<Artifact> render_kinetic_j(const RunConfig& cfg, const ModelParams& params, const Provenance& prov) {
  const angular::LadderRule rule = angular::kinetic_j_spectrum(params);
  std::vector<angular::KineticJCheck> checks;
  const bool numeric = params.fully_bound() && params.numeric(Param::K) > 0.0;
  if (numeric) {
    checks = angular::kinetic_j_numeric_check(params, cfg.sectors.values(), cfg.tol);
  }
  const std::vector<std::string> notes = {
      "line-charge-only model (rho = 0); angular momenta in units of hbar",
      numeric ? "numeric_check: ground-state <J_K> per sector" : "numeric_check skipped: needs bound parameters and K > 0"};

  if (cfg.format == Format::csv) {
    std::ostringstream os;
    os << prov.text(notes) << "# kinetic_j: " << rule.rule() << '\n';
    os << "sector,measured,expected,deviation\n";
    for (const auto& c : checks) {
      os << c.sector << ',' << format_number(c.measured) << ',' << format_number(c.expected) << ','
         << format_number(c.deviation) << '\n';
    }
    return {{"kinetic_j.csv", os.str()}};
  }
  json rows = json::array();
  for (const auto& c : checks) {
    rows.push_back({{"sector", c.sector},
                    {"measured", c.measured},
                    {"expected", c.expected},
                    {"deviation", c.deviation},
                    {"tol", c.tol}});
  }
  ModelParams ac = params;
  ac.set(Param::rho, Expr(0));
  json body;
  body["kinetic_j"] = angular::to_json(rule, params, -cfg.levels, 2 * cfg.levels + 1);
  body["canonical_minus_kinetic"] = angular::exact_json(
      params, model::canonical_angular_momentum() - model::kinetic_angular_momentum(ac, model::Field::AC));
  body["numeric_check"] = rows;
  return {{"kinetic_j.json", dump(with_provenance(prov, notes, body))}};
}

// duality

std::vector<Artifact> render_duality(const RunConfig& cfg, const ModelParams& params, const Provenance& prov) {
  const bool numeric = params.fully_bound() && confining(params);
  const auto report = numeric ? angular::duality_report(params, cfg.sectors.values(), cfg.levels, cfg.tol)
                              : angular::duality_report(params, {}, 0, cfg.tol);
  const std::vector<std::string> notes = {
      "charged twin: q = 1, q B = mu rho/(c^2 eps0), q Phi = mu lam/(c^2 eps0)",
      "dipole energies in the kinetic convention (divergence constant subtracted)",
      numeric ? "spectra agree when max_abs_diff <= 100 tol" : "numeric spectra skipped: needs bound parameters and a confining trap"};

  if (cfg.format == Format::csv) {
    std::ostringstream os;
    os << prov.text(notes);
    for (const auto& e : report.entries) {
      os << "# " << e.quantity << ": dipole " << e.dipole.to_string() << " twin " << e.twin.to_string() << " equal "
         << (e.equal ? "true" : "false") << '\n';
    }
    os << "sector,n,dipole,twin,diff\n";
    for (const auto& s : report.spectra) {
      for (std::size_t n = 0; n < s.dipole.size(); ++n) {
        os << s.sector << ',' << n << ',' << format_number(s.dipole[n]) << ',' << format_number(s.twin[n]) << ','
           << format_number(s.dipole[n] - s.twin[n]) << '\n';
      }
    }
    return {{"duality.csv", os.str()}};
  }
  return {{"duality.json", dump(with_provenance(prov, notes, angular::to_json(report, params)))}};
}

// phases

std::vector<Artifact> render_phases(const RunConfig& cfg, const ModelParams& params, const Provenance& prov) {
  const angular::Phases phases = angular::topological_phases(params);
  const std::vector<std::string> notes = {"phases in radians and in units of 2 pi",
                                          std::string("equal: ") + (phases.equal ? "true" : "false")};
  if (cfg.format == Format::csv) {
    const Expr two_pi = Expr(2) * Expr::param(Param::pi);
    std::ostringstream os;
    os << prov.text(notes) << "quantity,exact,value\n";
    auto row = [&](const char* q, const Expr& e) {
      os << q << ',' << csv_field(e.to_string()) << ',' << value_text(params, e) << '\n';
    };
    row("phi_ac", phases.phi_ac);
    row("phi_ac_over_2pi", phases.phi_ac.divided_by(two_pi));
    row("phi_ab_equiv", phases.phi_ab);
    row("phi_ab_equiv_over_2pi", phases.phi_ab.divided_by(two_pi));
    return {{"phases.csv", os.str()}};
  }
  return {{"phases.json", dump(with_provenance(prov, notes, angular::to_json(phases, params)))}};
}

}  // namespace

std::string_view command_name(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) {
      return name;
    }
  }
  return "unknown";
}

Command command_from_name(std::string_view name) {
  for (const auto& [cmd, n] : kCommands) {
    if (n == name) {
      return cmd;
    }
  }
  throw ValidationError("unknown command '" + std::string(name) + "'");
}

Format format_from_name(std::string_view name) {
  if (name == "csv") {
    return Format::csv;
  }
  if (name == "json") {
    return Format::json;
  }
  throw ValidationError("unknown format '" + std::string(name) + "', expected csv or json");
}

std::vector<int> SectorRange::values() const {
  std::vector<int> v;
  for (int s = first; s <= last; ++s) {
    v.push_back(s);
  }
  return v;
}

SectorRange parse_sector_range(std::string_view text) {
  text = trim(text);
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const int v = parse_int(text, "sector");
    return {v, v};
  }
  return {parse_int(text.substr(0, dots), "sector range"), parse_int(text.substr(dots + 2), "sector range")};
}

std::vector<double> parse_k_ladder(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string_view item = trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    double v = 0.0;
    auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size() || !(v > 0.0) ||
        !std::isfinite(v)) {
      throw ValidationError("invalid K ladder entry '" + std::string(item) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

ModelParams resolve_params(const RunConfig& config) {
  ModelParams p = config.params_file ? model::load_params_file(*config.params_file)
                  : config.command == Command::brackets ? ModelParams::symbolic()
                                                        : ModelParams::natural();
  for (const auto& [param, text] : config.overrides) {
    p.set(param, std::string_view(text));
  }
  if (config.include_divergence_term) {
    p.set_include_divergence_term(*config.include_divergence_term);
  }
  p.validate();
  return p;
}

std::string tool_version() { return std::string("fracam ") + FRACAM_VERSION; }

std::string format_number(double x) {
  if (x == 0.0) {
    return "0";
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

RunResult render(const RunConfig& config) {
  RunResult result;
  try {
    if (!(config.tol > 0.0) || !std::isfinite(config.tol)) {
      throw ValidationError("tol must be a positive number");
    }
    if (config.sectors.empty()) {
      throw ValidationError("empty sector range " + std::to_string(config.sectors.first) + ".." +
                            std::to_string(config.sectors.last));
    }
    if (config.levels < 1) {
      throw ValidationError("levels must be at least 1");
    }
    const ModelParams params = resolve_params(config);
    Provenance prov{std::string(command_name(config.command)), &params, config.tol};
    switch (config.command) {
      case Command::spectrum:
        result.artifacts = render_spectrum(config, params, prov);
        break;
      case Command::brackets:
        result.artifacts = render_brackets(config, params, prov);
        break;
      case Command::fractional_j:
        result.artifacts = render_fractional_j(config, params, prov);
        break;
      case Command::kinetic_j:
        result.artifacts = render_kinetic_j(config, params, prov);
        break;
      case Command::duality:
        result.artifacts = render_duality(config, params, prov);
        break;
      case Command::phases:
        result.artifacts = render_phases(config, params, prov);
        break;
    }
  } catch (const radial::ConvergenceError& e) {
    result.exit_code = kExitConvergence;
    result.message = e.what();
    for (const auto& d : e.diagnostics()) {
      result.message += "\n  " + d;
    }
    result.artifacts.clear();
  } catch (const algebra::ParseError& e) {
    result.exit_code = kExitValidation;
    result.message = e.what();
    result.artifacts.clear();
  } catch (const std::invalid_argument& e) {
    result.exit_code = kExitValidation;
    result.message = e.what();
    result.artifacts.clear();
  } catch (const std::domain_error& e) {
    result.exit_code = kExitValidation;
    result.message = e.what();
    result.artifacts.clear();
  }
  return result;
}

RunResult run(const RunConfig& config) {
  RunResult result = render(config);
  if (result.exit_code != kExitOk) {
    return result;
  }
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) {
    result.exit_code = kExitIo;
    result.message = "cannot create " + config.out_dir.string() + ": " + ec.message();
    return result;
  }
  for (const auto& a : result.artifacts) {
    const auto path = config.out_dir / a.name;
    std::ofstream f(path, std::ios::binary);
    f << a.content;
    if (!f) {
      result.exit_code = kExitIo;
      result.message = "cannot write " + path.string();
      return result;
    }
    result.written.push_back(path);
  }
  return result;
}

}  // namespace fracam::cli

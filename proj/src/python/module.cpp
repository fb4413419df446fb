#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracam/algebra/brackets.hpp"
#include "fracam/algebra/parser.hpp"
#include "fracam/algebra/quantize.hpp"
#include "fracam/angular/angular.hpp"
#include "fracam/cli/run.hpp"
#include "fracam/model/model.hpp"
#include "fracam/radial/radial.hpp"

namespace py = pybind11;

namespace {

using fracam::algebra::Expr;
using fracam::algebra::Param;
using fracam::model::ModelParams;

Param param_named(const std::string& name) {
  auto p = fracam::algebra::param_from_name(name);
  if (!p) {
    throw py::key_error("unknown parameter '" + name + "'");
  }
  return *p;
}

py::dict spectrum_dict(const fracam::algebra::OscillatorSpectrum& s) {
  py::dict d;
  d["rule"] = s.rule();
  d["quantum"] = s.quantum().to_string();
  d["offset"] = s.offset;
  return d;
}

fracam::cli::RunConfig make_config(const std::string& command, const py::dict& params, const std::string& sectors,
                                   int levels, double tol, const std::string& format,
                                   const std::vector<double>& k_ladder) {
  fracam::cli::RunConfig c;
  c.command = fracam::cli::command_from_name(command);
  for (const auto& [key, value] : params) {
    const auto name = py::str(key).cast<std::string>();
    if (name == "include_divergence_term") {
      c.include_divergence_term = value.cast<bool>();
    } else {
      c.overrides[param_named(name)] = py::str(value).cast<std::string>();
    }
  }
  c.sectors = fracam::cli::parse_sector_range(sectors);
  c.levels = levels;
  c.tol = tol;
  c.format = fracam::cli::format_from_name(format);
  c.k_ladder = k_ladder;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact phase-space algebra and radial spectra for a dipole in charged backgrounds";
  m.attr("__version__") = FRACAM_VERSION;

  py::register_exception<fracam::model::ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<fracam::algebra::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<fracam::algebra::QuantizationError>(m, "QuantizationError", PyExc_ValueError);
  py::register_exception<fracam::radial::ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<Expr>(m, "Expr")
      .def(py::init<>())
      .def(py::init([](long long n) { return Expr(fracam::algebra::Rational(n)); }))
      .def_static("parse", [](const std::string& s) { return fracam::algebra::parse_expr(s); })
      .def("is_zero", &Expr::is_zero)
      .def("is_constant", &Expr::is_constant)
      .def("derivative", [](const Expr& e, const std::string& var) {
        static const std::map<std::string, fracam::algebra::Var> vars = {
            {"x1", fracam::algebra::Var::x1}, {"x2", fracam::algebra::Var::x2},
            {"p1", fracam::algebra::Var::p1}, {"p2", fracam::algebra::Var::p2}};
        auto it = vars.find(var);
        if (it == vars.end()) {
          throw py::key_error("unknown variable '" + var + "'");
        }
        return e.derivative(it->second);
      })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__str__", &Expr::to_string)
      .def("__repr__", [](const Expr& e) { return "Expr('" + e.to_string() + "')"; });

  m.def("parse", &fracam::algebra::parse_expr, py::arg("text"));
  m.def("poisson_bracket", &fracam::algebra::poisson_bracket, py::arg("f"), py::arg("g"));
  m.def(
      "dirac_bracket",
      [](const Expr& f, const Expr& g, const std::vector<Expr>& constraints) {
        const auto cs = fracam::algebra::build_constraint_system(constraints);
        if (!cs.is_second_class()) {
          throw fracam::algebra::NotSecondClassError(cs.classification);
        }
        return fracam::algebra::dirac_bracket(f, g, cs);
      },
      py::arg("f"), py::arg("g"), py::arg("constraints"));
  m.def(
      "classify_constraints",
      [](const std::vector<Expr>& constraints) {
        return fracam::algebra::to_string(fracam::algebra::build_constraint_system(constraints).classification);
      },
      py::arg("constraints"));
  m.def(
      "quantize_quadratic",
      [](const Expr& obs, const Expr& u, const Expr& v, const Expr& hbar) {
        return spectrum_dict(
            fracam::algebra::quantize_quadratic(obs, u, v, fracam::algebra::Scalar::from_expr(hbar)));
      },
      py::arg("observable"), py::arg("u"), py::arg("v"), py::arg("hbar") = Expr::param(Param::hbar));

  py::class_<ModelParams>(m, "ModelParams")
      .def_static("natural", &ModelParams::natural)
      .def_static("symbolic", &ModelParams::symbolic)
      .def_static("from_file", [](const std::string& path) { return fracam::model::load_params_file(path); })
      .def(
          "set",
          [](ModelParams& p, const std::string& name, const std::string& value) -> ModelParams& {
            return p.set(param_named(name), std::string_view(value));
          },
          py::return_value_policy::reference_internal)
      .def(
          "unset", [](ModelParams& p, const std::string& name) -> ModelParams& { return p.unset(param_named(name)); },
          py::return_value_policy::reference_internal)
      .def_property("include_divergence_term", &ModelParams::include_divergence_term,
                    [](ModelParams& p, bool on) { p.set_include_divergence_term(on); })
      .def("fully_bound", &ModelParams::fully_bound)
      .def("validate", &ModelParams::validate)
      .def("alpha", &ModelParams::alpha)
      .def("omega", &ModelParams::omega)
      .def("evaluate", &ModelParams::evaluate)
      .def("__repr__", [](const ModelParams& p) { return "ModelParams(" + p.describe() + ")"; });

  m.def("build_hamiltonian", &fracam::model::build_hamiltonian, py::arg("params"));
  m.def("kinetic_momenta", [](const ModelParams& p) {
    const auto pi = fracam::model::kinetic_momenta(p);
    return std::vector<Expr>{pi[0], pi[1]};
  });
  m.def("build_constraints", [](const ModelParams& p) {
    const auto phi = fracam::model::build_constraints(p);
    return std::vector<Expr>{phi[0], phi[1]};
  });
  m.def("canonical_angular_momentum", &fracam::model::canonical_angular_momentum);
  m.def("reduced_angular_momentum", &fracam::model::reduced_angular_momentum, py::arg("params"));
  m.def("reduced_j_spectrum",
        [](const ModelParams& p) { return spectrum_dict(fracam::angular::reduced_j_spectrum(p)); });

  m.def(
      "eigen_lowest",
      [](const std::vector<double>& diag, const std::vector<double>& off, int k) {
        fracam::radial::SymTridiagonal t{diag, off};
        return fracam::radial::eigen_lowest(t, k, 1.0, false).eigenvalues;
      },
      py::arg("diag"), py::arg("off"), py::arg("k"));

  m.def(
      "solve_spectrum",
      [](const ModelParams& p, const std::vector<int>& sectors, int levels, double tol) {
        std::vector<fracam::radial::ConvergedSpectrum> solved;
        {
          py::gil_scoped_release release;
          solved = fracam::radial::solve_sectors(p, sectors, levels, tol);
        }
        py::list out;
        for (const auto& s : solved) {
          py::dict d;
          d["sector"] = s.sector;
          d["nu"] = s.nu;
          d["energies"] = s.energies;
          d["errors"] = s.errors;
          d["residuals"] = s.finest.residuals;
          out.append(d);
        }
        return out;
      },
      py::arg("params"), py::arg("sectors"), py::arg("levels") = 4, py::arg("tol") = 1e-8);

  m.def(
      "run",
      [](const std::string& command, const py::dict& params, const std::string& sectors, int levels, double tol,
         const std::string& format, const std::vector<double>& k_ladder) {
        const auto config = make_config(command, params, sectors, levels, tol, format, k_ladder);
        fracam::cli::RunResult r;
        {
          py::gil_scoped_release release;
          r = fracam::cli::render(config);
        }
        py::dict artifacts;
        for (const auto& a : r.artifacts) {
          artifacts[py::str(a.name)] = a.content;
        }
        py::dict d;
        d["exit_code"] = r.exit_code;
        d["message"] = r.message;
        d["artifacts"] = artifacts;
        return d;
      },
      py::arg("command"), py::arg("params") = py::dict(), py::arg("sectors") = "0..3", py::arg("levels") = 4,
      py::arg("tol") = 1e-8, py::arg("format") = "json", py::arg("k_ladder") = std::vector<double>{});
}

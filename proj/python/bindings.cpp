#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "padicl/cli.hpp"
#include "padicl/lfun.hpp"
#include "padicl/measures.hpp"

namespace py = pybind11;
using namespace padicl;

namespace {

py::object to_fraction(const BigRational& x) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::int_(py::str(mpz_class(x.get_num()).get_str())), py::int_(py::str(mpz_class(x.get_den()).get_str())));
}

BigRational from_python(const py::handle& x) {
  const std::string text = py::str(x);
  BigRational r;
  if (r.set_str(text, 10) != 0 || r.get_den() == 0) throw ConfigError("not a rational number: '" + text + "'");
  r.canonicalize();
  return r;
}

py::int_ to_int(const mpz_class& x) { return py::int_(py::str(x.get_str())); }

}  // namespace

PYBIND11_MODULE(_padicl, m) {
  m.doc() = "Kubota-Leopoldt p-adic L-functions computed by several independent routes.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
  py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);

  py::class_<PadicContext>(m, "PadicContext")
      .def(py::init<unsigned, int>(), py::arg("p"), py::arg("precision"))
      .def_property_readonly("p", &PadicContext::prime)
      .def_property_readonly("q", &PadicContext::q)
      .def_property_readonly("precision", &PadicContext::precision)
      .def("__repr__", [](const PadicContext& c) {
        return "PadicContext(p=" + std::to_string(c.prime()) + ", precision=" + std::to_string(c.precision()) + ")";
      });

  py::class_<PadicNumber>(m, "PadicNumber")
      .def_static("from_rational", [](const PadicContext& ctx, const py::object& x) {
        return PadicNumber::from_rational(ctx, from_python(x));
      })
      .def_property_readonly("valuation", &PadicNumber::valuation)
      .def_property_readonly("precision", &PadicNumber::precision)
      .def("residue", [](const PadicNumber& x, int k) { return to_int(x.residue(k)); })
      .def("is_zero", &PadicNumber::is_zero)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__str__", &PadicNumber::render)
      .def("__repr__", [](const PadicNumber& x) { return "<PadicNumber " + x.render() + ">"; });

  py::class_<CycloPadic>(m, "CycloPadic")
      .def_property_readonly("order", &CycloPadic::order)
      .def_property_readonly("valuation", &CycloPadic::valuation)
      .def_property_readonly("precision", &CycloPadic::precision)
      .def_property_readonly("coefficients", &CycloPadic::coefficients)
      .def(py::self == py::self)
      .def("__str__", &CycloPadic::render)
      .def("__repr__", [](const CycloPadic& x) { return "<CycloPadic " + x.render() + ">"; });

  m.def("difference_valuation", py::overload_cast<const CycloPadic&, const CycloPadic&>(&difference_valuation));
  m.def("teichmuller", &padicl::teichmuller, py::arg("a"), py::arg("ctx"));
  m.def("angle", &padicl::angle, py::arg("a"), py::arg("ctx"));

  py::class_<DirichletCharacter>(m, "DirichletCharacter")
      .def_static("parse", &parse_character, py::arg("spec"), py::arg("ctx"))
      .def_property_readonly("conductor", &DirichletCharacter::conductor)
      .def_property_readonly("order", &DirichletCharacter::order)
      .def_property_readonly("is_even", &DirichletCharacter::is_even)
      .def("__call__", &DirichletCharacter::evaluate, py::arg("a"), py::arg("ctx"))
      .def("__repr__", &DirichletCharacter::describe);

  py::class_<EvalPoint>(m, "EvalPoint")
      .def(py::init([](const DirichletCharacter& chi, const py::object& s, const PadicContext& ctx) {
             return EvalPoint(chi, from_python(s), ctx);
           }),
           py::arg("chi"), py::arg("s"), py::arg("ctx"))
      .def_property_readonly("s", [](const EvalPoint& pt) { return to_fraction(pt.s()); })
      .def_property_readonly("conductor", &EvalPoint::conductor)
      .def_property_readonly("has_pole", &EvalPoint::has_pole);

  py::class_<LpResult>(m, "LpResult")
      .def_readonly("value", &LpResult::value)
      .def_readonly("guaranteed_precision", &LpResult::guaranteed_precision)
      .def_readonly("working_value", &LpResult::working_value)
      .def_property_readonly("route", [](const LpResult& r) { return route_tag(r.route); })
      .def_readonly("F", &LpResult::F)
      .def_readonly("c", &LpResult::c)
      .def("__str__", &LpResult::render)
      .def("__repr__", [](const LpResult& r) { return "<LpResult " + r.render() + ">"; });

  m.def("delta_bound", &delta_bound, py::arg("ctx"), py::arg("F"));
  m.def("lp_washington", &lp_washington, py::arg("pt"), py::arg("F"), py::arg("jmax") = py::none(),
        py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("lp_kl_approx", &lp_kl_approx, py::arg("pt"), py::arg("F"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("lp_from_series", &lp_from_series, py::arg("pt"), py::arg("c"), py::arg("F"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("lp_via_measure", &lp_via_measure, py::arg("pt"), py::arg("c"), py::arg("n"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("lp_euler", &lp_euler, py::arg("pt"), py::arg("c"), py::arg("F"), py::arg("S"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("lp_dirichlet_series", &lp_dirichlet_series, py::arg("pt"), py::arg("c"), py::arg("F"),
        py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("interpolation_oracle", &interpolation_oracle, py::arg("n"), py::arg("chi"), py::arg("ctx"));

  m.def("bernoulli_number", [](unsigned j) { return to_fraction(bernoulli_number(j)); }, py::arg("j"));
  m.def("epsilon", [](std::int64_t a, unsigned c, std::uint64_t F) { return to_fraction(epsilon_coeff(a, c, F).value()); },
        py::arg("a"), py::arg("c"), py::arg("F"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> argv{"padicl"};
        argv.insert(argv.end(), args.begin(), args.end());
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run(argv, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}

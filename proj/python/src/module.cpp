#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rispace/experiments.hpp"

namespace py = pybind11;
using namespace rispace;

namespace {

ExperimentReport run_suite(const std::string& suite, const py::kwargs& kw) {
  auto get = [&](const char* key, int fallback) {
    return kw.contains(key) ? kw[key].cast<int>() : fallback;
  };
  const std::uint64_t seed = kw.contains("seed") ? kw["seed"].cast<std::uint64_t>() : kDefaultSeed;
  const std::string space = kw.contains("space") ? kw["space"].cast<std::string>() : "G";
  if (suite == "theorem1") {
    const int n_max = get("n_max", 16);
    return theorem1_report(parse_space(space), n_max, get("trials", 200), seed,
                           get("random_n_max", std::min(n_max, 14)));
  }
  if (suite == "sign") return sign_suite(get("n_max", 10), get("trials", 1000), seed);
  if (suite == "derand") return derandomization_suite(get("n_max", 12), get("trials", 200), seed);
  if (suite == "envelope") {
    const int trials = get("trials", 1000);
    return envelope_suite(trials, seed, get("indicator_trials", std::max(1, trials / 2)));
  }
  if (suite == "g1chain") return g1_chain_check(get("trials", 1000), seed, get("grid", 200));
  if (suite == "gg1") return g_g1_indicator_comparison(get("grid", 200));
  if (suite == "hinge") return hinge_suite(get("trials", 1000), seed, get("oracle_instances", 20));
  if (suite == "rearrange") return rearrangement_suite(get("trials", 10000), seed);
  if (suite == "luxemburg") return luxemburg_suite(get("trials", 1000), seed, get("grid", 100));
  if (suite == "fundamental") return fundamental_suite(get("grid", 20));
  throw py::value_error("unknown suite '" + suite + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rearrangement-invariant norms of step functions on (0,1]";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DescriptorError>(m, "DescriptorError", PyExc_ValueError);

  py::class_<StepFunction>(m, "StepFunction")
      .def(py::init<>())
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("ends"), py::arg("values"))
      .def_static("constant", &StepFunction::constant)
      .def_static("indicator", &StepFunction::indicator)
      .def_property_readonly("ends",
                             [](const StepFunction& f) { return std::vector<double>(f.ends().begin(), f.ends().end()); })
      .def_property_readonly(
          "values", [](const StepFunction& f) { return std::vector<double>(f.values().begin(), f.values().end()); })
      .def("__call__", &StepFunction::operator())
      .def("__len__", &StepFunction::size)
      .def("__eq__", [](const StepFunction& a, const StepFunction& b) { return a == b; })
      .def("scaled", &StepFunction::scaled)
      .def("abs", &StepFunction::abs)
      .def("__repr__", [](const StepFunction& f) { return "StepFunction(" + std::to_string(f.size()) + " pieces)"; });

  m.def("rearrange", &rearrange);
  m.def("integral", &integral);
  m.def("partial_integral", &partial_integral);
  m.def("lp_norm", &lp_norm);
  m.def("parse_step_function", &parse_step_function);
  m.def("format_step_function", &format_step_function);

  py::class_<OrliczFunction>(m, "OrliczFunction")
      .def("__call__", &OrliczFunction::operator())
      .def_property_readonly("descriptor", &OrliczFunction::descriptor);
  m.def("parse_orlicz", &parse_orlicz);
  m.def("luxemburg_norm", &luxemburg_norm);
  m.def("modular", &modular);

  py::class_<ConcaveWeight>(m, "ConcaveWeight")
      .def("__call__", &ConcaveWeight::operator())
      .def_property_readonly("descriptor", &ConcaveWeight::descriptor);
  m.def("parse_weight", &parse_weight);
  m.def("lorentz_norm", &lorentz_norm);
  m.def("marcinkiewicz_norm", &marcinkiewicz_norm);

  py::class_<SpaceSpec>(m, "SpaceSpec").def_property_readonly("name", &SpaceSpec::name);
  m.def("parse_space", &parse_space);
  m.def("ri_norm", &ri_norm);
  m.def("fundamental_function", &fundamental_function);
  m.def("envelope_weight", &envelope_weight);
  m.def("hinge_family_bound", [](const StepFunction& f, double t) {
    const HingeBound b = hinge_family_bound(f, t);
    return py::make_tuple(b.lower, b.upper, b.orlicz_value, b.holds);
  });

  m.def("rademacher", &rademacher);
  m.def("signed_sum", [](const std::vector<double>& a, const std::vector<int>& eps) {
    return signed_sum(a, SignVector(eps));
  });
  m.def("sum_rearrangement", [](const std::vector<double>& a) { return sum_rearrangement(a); });
  m.def("rademacher_sum_norm",
        [](const std::vector<double>& a, const SpaceSpec& E) { return rademacher_sum_norm(a, E); });

  m.def("sign_bruteforce", [](const std::vector<StepFunction>& xs, const SpaceSpec& E) {
    const SignSearchResult r = sign_bruteforce(xs, E);
    return py::make_tuple(std::vector<int>(r.signs.signs().begin(), r.signs.signs().end()), r.best);
  });
  m.def("derandomized_signs",
        [](const std::vector<StepFunction>& xs, const OrliczFunction& phi, double lambda) {
          const SignVector s = derandomized_signs(xs, phi, lambda);
          return std::vector<int>(s.signs().begin(), s.signs().end());
        });
  m.def("average_modular", [](const std::vector<StepFunction>& xs, const OrliczFunction& phi,
                              double lambda) { return average_modular(xs, phi, lambda); });

  m.def(
      "verify",
      [](const std::string& suite, const std::string& format, const py::kwargs& kw) {
        const ExperimentReport r = run_suite(suite, kw);
        const std::string text = format == "csv" ? r.to_csv() : format == "text" ? r.to_text() : r.to_json();
        return py::make_tuple(r.pass, text);
      },
      py::arg("suite"), py::arg("format") = "json");
}

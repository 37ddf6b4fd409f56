// Copyright 2026 The Negotiation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "negotiation/domain.hpp"
#include "negotiation/errors.hpp"
#include "negotiation/idm.hpp"
#include "negotiation/manipulation.hpp"
#include "negotiation/nin.hpp"
#include "negotiation/scenario.hpp"

namespace py = pybind11;
using namespace negotiation;

// Points and directions cross the boundary as (x1, x2) tuples.
namespace pybind11::detail {
template <>
struct type_caster<Vec2> {
  PYBIND11_TYPE_CASTER(Vec2, const_name("tuple[float, float]"));

  bool load(handle src, bool convert) {
    if (!isinstance<sequence>(src)) return false;
    const auto seq = reinterpret_borrow<sequence>(src);
    if (seq.size() != 2) return false;
    for (std::size_t i = 0; i < 2; ++i) {
      make_caster<double> c;
      if (!c.load(seq[i], convert)) return false;
      value[i] = cast_op<double>(c);
    }
    return true;
  }

  static handle cast(const Vec2& v, return_value_policy, handle) {
    return make_tuple(v[0], v[1]).release();
  }
};
}  // namespace pybind11::detail

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-party negotiation over a shared resource";

  auto base = py::register_exception<NegotiationError>(m, "NegotiationError");
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<DegenerateGradientError>(m, "DegenerateGradientError", base);
  py::register_exception<UnsupportedShapeError>(m, "UnsupportedShapeError", base);
  py::register_exception<UnresolvableError>(m, "UnresolvableError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  static py::exception<ScenarioParseError> parse_error(m, "ScenarioParseError", base);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ScenarioParseError& e) {
      py::set_error(parse_error, (e.key() + ": " + e.what()).c_str());
    }
  });

  py::class_<TriangularDomain>(m, "TriangularDomain")
      .def(py::init<double, double>(), py::arg("k"), py::arg("interior_margin") = -1.0)
      .def_property_readonly("k", &TriangularDomain::k)
      .def_property_readonly("interior_margin", &TriangularDomain::interior_margin)
      .def("contains", &TriangularDomain::contains)
      .def("contains_strictly", &TriangularDomain::contains_strictly);

  py::class_<UtilitySpec>(m, "UtilitySpec")
      .def(py::init<double, double, double, double>(), py::arg("a1"), py::arg("a2"),
           py::arg("a3"), py::arg("k"))
      .def_readonly("a1", &UtilitySpec::a1)
      .def_readonly("a2", &UtilitySpec::a2)
      .def_readonly("a3", &UtilitySpec::a3)
      .def_readonly("k", &UtilitySpec::k)
      .def("value", &UtilitySpec::value)
      .def("gradient", &UtilitySpec::gradient)
      .def("__eq__", [](const UtilitySpec& a, const UtilitySpec& b) { return a == b; })
      .def("__repr__", [](const UtilitySpec& u) {
        return py::str("UtilitySpec({}, {}, {}, {})").format(u.a1, u.a2, u.a3, u.k);
      });

  py::class_<ParetoSegment>(m, "ParetoSegment")
      .def_readonly("b1", &ParetoSegment::b1)
      .def_readonly("b2", &ParetoSegment::b2);

  m.def("bliss_point", &bliss_point);
  m.def("pareto_frontier", &pareto_frontier);
  m.def("distance_to_frontier", &distance_to_frontier);
  m.def("bisector_direction", &bisector_direction);

  py::class_<StepRule>(m, "StepRule")
      .def(py::init<>())
      .def_readwrite("line_search_tol", &StepRule::line_search_tol)
      .def_readwrite("max_step_length", &StepRule::max_step_length);

  py::class_<IdmConfig>(m, "IdmConfig")
      .def(py::init<>())
      .def_readwrite("convergence_tol", &IdmConfig::convergence_tol)
      .def_readwrite("max_iterations", &IdmConfig::max_iterations)
      .def_readwrite("step", &IdmConfig::step);

  py::class_<NegotiationTrace>(m, "NegotiationTrace")
      .def_readonly("points", &NegotiationTrace::points)
      .def_readonly("directions", &NegotiationTrace::directions)
      .def_readonly("converged", &NegotiationTrace::converged)
      .def_property_readonly("settlement", &NegotiationTrace::settlement)
      .def_property_readonly("iterations", &NegotiationTrace::iterations);

  m.def("idm_run", &idm_run, py::arg("u1"), py::arg("u2"), py::arg("x0"), py::arg("domain"),
        py::arg("config") = IdmConfig{});

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("label", &Scenario::label)
      .def_readonly("domain", &Scenario::domain)
      .def_readonly("true1", &Scenario::true1)
      .def_readonly("true2", &Scenario::true2)
      .def_readonly("x0", &Scenario::x0)
      .def_readonly("strategic_gamma1", &Scenario::strategic_gamma1)
      .def_readonly("strategic_gamma2", &Scenario::strategic_gamma2)
      .def("true_frontier", &Scenario::true_frontier);

  m.def("load_scenario", &load_scenario, py::arg("spec") = std::string(kPaperPreset));
  m.def("parse_scenario", &parse_scenario_text);
  m.def("format_scenario", &format_scenario);

  m.def("invert_announcement", &invert_announcement);
  m.def("recover_beta", &recover_beta);

  m.def(
      "payoff_table",
      [](const Scenario& s, double gamma1, double gamma2) {
        const double k = s.domain.k();
        const StrategicProfile p{declared_utility(Party::kFirst, gamma1, k),
                                 declared_utility(Party::kSecond, gamma2, k), s.true1, s.true2};
        py::gil_scoped_release unlock;
        return build_payoff_game(p, s.x0, s.domain).cells;
      },
      py::arg("scenario"), py::arg("gamma1"), py::arg("gamma2"),
      "Rows are party 1 (truthful, strategic); columns are party 2.");

  py::class_<MreEstimate>(m, "MreEstimate")
      .def_readonly("mre", &MreEstimate::mre)
      .def_readonly("std_error", &MreEstimate::std_error)
      .def_readonly("n", &MreEstimate::n);

  m.def(
      "mre_estimate",
      [](const Scenario& s, int M, int n, double spread, std::uint64_t seed, unsigned threads) {
        NinConfig cfg;
        cfg.M = M;
        py::gil_scoped_release unlock;
        return mre_estimate(s, SecretDistribution{spread}, M, n, cfg, seed, threads);
      },
      py::arg("scenario"), py::arg("M") = 5, py::arg("n") = 500, py::arg("spread") = 0.25,
      py::arg("seed") = 0, py::arg("threads") = 1);
}

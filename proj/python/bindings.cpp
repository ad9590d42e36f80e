// Python bindings for the core analysis operations.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hopfdde/equilibrium.hpp"
#include "hopfdde/model.hpp"
#include "hopfdde/normalform.hpp"
#include "hopfdde/simulate.hpp"
#include "hopfdde/stability.hpp"

namespace py = pybind11;
using namespace hopfdde;

namespace {

NormalFormOptions make_options(const std::string& adjoint,
                               const std::string& w204,
                               const std::string& cubic) {
    NormalFormOptions o;
    if (adjoint == "conjugated") o.adjoint = AdjointVariant::conjugated;
    else if (adjoint == "hale") o.adjoint = AdjointVariant::hale;
    else throw ConfigError("adjoint must be 'conjugated' or 'hale'");
    if (w204 == "g20bar") o.w204 = W204Variant::g20bar;
    else if (w204 == "g02bar") o.w204 = W204Variant::g02bar;
    else throw ConfigError("w20_4 must be 'g20bar' or 'g02bar'");
    if (cubic == "quartic") o.cubic = CubicVariant::quartic;
    else if (cubic == "cubic") o.cubic = CubicVariant::cubic;
    else throw ConfigError("g21_cubic must be 'quartic' or 'cubic'");
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "stability and Hopf-bifurcation analysis of a "
              "distributed-delay p53/mdm2 feedback model";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double a1, double a2, double a12, double b1, double b2,
                         double a, int n, double alpha, double tau) {
                 ModelParams p{a1, a2, a12, b1, b2, a, n, alpha, tau};
                 p.validate();
                 return p;
             }),
             py::arg("a1") = 0.13, py::arg("a2") = 0.13, py::arg("a12") = 0.06,
             py::arg("b1") = 0.2, py::arg("b2") = 0.4, py::arg("a") = 4.0,
             py::arg("n") = 3, py::arg("alpha") = 0.2,
             py::arg("tau") = 0.1001651263)
        .def_readwrite("a1", &ModelParams::a1)
        .def_readwrite("a2", &ModelParams::a2)
        .def_readwrite("a12", &ModelParams::a12)
        .def_readwrite("b1", &ModelParams::b1)
        .def_readwrite("b2", &ModelParams::b2)
        .def_readwrite("a", &ModelParams::a)
        .def_readwrite("n", &ModelParams::n)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def_readwrite("tau", &ModelParams::tau)
        .def("validate", &ModelParams::validate);

    py::class_<State>(m, "State")
        .def(py::init<double, double, double, double>(), py::arg("x1") = 0.0,
             py::arg("y1") = 0.0, py::arg("x2") = 0.0, py::arg("y2") = 0.0)
        .def_readwrite("x1", &State::x1)
        .def_readwrite("y1", &State::y1)
        .def_readwrite("x2", &State::x2)
        .def_readwrite("y2", &State::y2)
        .def("__repr__", [](const State& s) {
            return "State(x1=" + std::to_string(s.x1) + ", y1=" +
                   std::to_string(s.y1) + ", x2=" + std::to_string(s.x2) +
                   ", y2=" + std::to_string(s.y2) + ")";
        });

    m.def("hill", &hill, py::arg("x"), py::arg("a"), py::arg("n"),
          "Hill function x^n / (a + x^n)");
    m.def(
        "hill_derivs",
        [](double x, double a, int n) {
            const HillDerivs d = hill_derivs(x, a, n);
            return py::make_tuple(d.rho1, d.rho2, d.rho3);
        },
        py::arg("x"), py::arg("a"), py::arg("n"),
        "first three derivatives of the Hill function");
    m.def("rhs", &rhs, py::arg("state"), py::arg("delayed_term"), py::arg("params"));

    py::class_<Equilibrium>(m, "Equilibrium")
        .def_readonly("x10", &Equilibrium::x10)
        .def_readonly("y10", &Equilibrium::y10)
        .def_readonly("x20", &Equilibrium::x20)
        .def_readonly("y20", &Equilibrium::y20)
        .def_readonly("rho1", &Equilibrium::rho1)
        .def_readonly("rho2", &Equilibrium::rho2)
        .def_readonly("rho3", &Equilibrium::rho3)
        .def_readonly("residual", &Equilibrium::residual);

    m.def("find_equilibrium", &find_equilibrium, py::arg("params"),
          py::arg("tol") = 1e-12);
    m.def("g_of", &g_of, py::arg("x"), py::arg("params"));
    m.def("equilibrium_residual", &equilibrium_residual, py::arg("x"),
          py::arg("params"));

    py::class_<CharCoeffs>(m, "CharCoeffs")
        .def_readonly("b", &CharCoeffs::b)
        .def_readonly("c", &CharCoeffs::c)
        .def_readonly("d", &CharCoeffs::d)
        .def_readonly("h", &CharCoeffs::h);

    m.def("char_coeffs", &char_coeffs, py::arg("params"), py::arg("equilibrium"));
    m.def("char_delta", &char_delta, py::arg("lam"), py::arg("tau"),
          py::arg("coeffs"));
    m.def("zero_delay_stable", &zero_delay_stable, py::arg("coeffs"));
    m.def("g1_of", &g1_of, py::arg("omega"), py::arg("coeffs"));

    py::class_<HopfPoint>(m, "HopfPoint")
        .def_readonly("omega0", &HopfPoint::omega0)
        .def_readonly("tau0", &HopfPoint::tau0)
        .def_readonly("residual_sin", &HopfPoint::residual_sin)
        .def_readonly("residual_cos", &HopfPoint::residual_cos)
        .def_readonly("delta_abs", &HopfPoint::delta_abs)
        .def_readonly("M1", &HopfPoint::M1)
        .def_readonly("M2", &HopfPoint::M2)
        .def_readonly("M", &HopfPoint::M)
        .def_readonly("N", &HopfPoint::N)
        .def_readonly("simple", &HopfPoint::simple)
        .def_readonly("transversal", &HopfPoint::transversal);

    m.def("hopf_points", &hopf_points, py::arg("coeffs"),
          py::arg("grid_size") = 2000,
          "certified imaginary-axis crossings ordered by tau");

    py::class_<NormalForm>(m, "NormalForm")
        .def_property_readonly("g20",
                               [](const NormalForm& nf) { return nf.gq.g20; })
        .def_property_readonly("g11",
                               [](const NormalForm& nf) { return nf.gq.g11; })
        .def_property_readonly("g02",
                               [](const NormalForm& nf) { return nf.gq.g02; })
        .def_readonly("g21", &NormalForm::g21)
        .def_readonly("C1", &NormalForm::C1)
        .def_readonly("mu2", &NormalForm::mu2)
        .def_readonly("beta2", &NormalForm::beta2)
        .def_readonly("T2", &NormalForm::T2)
        .def_property_readonly(
            "direction",
            [](const NormalForm& nf) { return to_string(nf.direction); })
        .def_property_readonly("orbit_stability",
                               [](const NormalForm& nf) {
                                   return to_string(nf.orbit_stability);
                               })
        .def_property_readonly("period_trend", [](const NormalForm& nf) {
            return to_string(nf.period_trend);
        });

    m.def(
        "normal_form",
        [](const ModelParams& p, const Equilibrium& eq, const HopfPoint& hopf,
           const std::string& adjoint, const std::string& w204,
           const std::string& cubic) {
            return normal_form(p, eq, hopf, make_options(adjoint, w204, cubic));
        },
        py::arg("params"), py::arg("equilibrium"), py::arg("hopf"),
        py::arg("adjoint") = "conjugated", py::arg("w20_4") = "g20bar",
        py::arg("g21_cubic") = "quartic");

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("dt", &Trajectory::dt)
        .def_readonly("tau", &Trajectory::tau)
        .def_property_readonly("states", [](const Trajectory& t) {
            std::vector<std::array<double, 4>> out;
            out.reserve(t.states.size());
            for (const State& s : t.states) out.push_back({s.x1, s.y1, s.x2, s.y2});
            return out;
        });

    py::class_<HistorySpec>(m, "HistorySpec")
        .def_static("constant", &HistorySpec::constant, py::arg("state"))
        .def_static("sampled", &HistorySpec::sampled, py::arg("x1_0"),
                    py::arg("x2_0"), py::arg("y2_0"), py::arg("times"),
                    py::arg("values"));

    m.def("integrate", &integrate, py::arg("params"), py::arg("history"),
          py::arg("t_end"), py::arg("dt") = 1e-3, py::arg("quad_substeps") = 1);
    m.def(
        "classify_longterm",
        [](const Trajectory& t, const Equilibrium& eq) {
            return to_string(classify_longterm(t, eq));
        },
        py::arg("trajectory"), py::arg("equilibrium"));
    m.def("final_amplitude", &final_amplitude, py::arg("trajectory"),
          py::arg("equilibrium"));
    m.def(
        "analytic_waveform",
        [](const NormalForm& nf, const Equilibrium& eq, cx z0, double t_end,
           double dt) { return analytic_waveform(nf, eq, z0, t_end, dt); },
        py::arg("normal_form"), py::arg("equilibrium"), py::arg("z0"),
        py::arg("t_end"), py::arg("dt") = 1e-3);
}

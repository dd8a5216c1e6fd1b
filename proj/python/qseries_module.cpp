// Python bindings for the core operations: q-Pochhammer/theta primitives,
// bilateral series, classical summation sides, theta-product factorization,
// elliptic inversion, and the verification suites.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qs/classical.hpp"
#include "qs/elliptic.hpp"
#include "qs/factorize.hpp"
#include "qs/qcore.hpp"
#include "qs/series.hpp"
#include "qs/suites.hpp"

namespace py = pybind11;
using qs::cplx;

PYBIND11_MODULE(_qseries, m) {
    m.doc() = "bilateral q-series evaluation, factorization and verification";

    py::register_exception<qs::Error>(m, "QSeriesError");

    py::class_<qs::QContext>(m, "QContext")
        .def(py::init<cplx, double, int, int>(), py::arg("q"), py::arg("eps") = 1e-14,
             py::arg("max_terms") = 2048, py::arg("consec_small") = 3)
        .def_property_readonly("q", &qs::QContext::q)
        .def_property_readonly("eps", &qs::QContext::eps)
        .def_property_readonly("max_terms", &qs::QContext::max_terms);

    py::class_<qs::SeriesSpec>(m, "SeriesSpec")
        .def(py::init<std::vector<cplx>, std::vector<cplx>>(), py::arg("a"), py::arg("b"))
        .def_readonly("r", &qs::SeriesSpec::r)
        .def_readonly("a", &qs::SeriesSpec::a)
        .def_readonly("b", &qs::SeriesSpec::b);

    py::class_<qs::WSpec>(m, "WSpec")
        .def(py::init<int, std::vector<cplx>>(), py::arg("r"), py::arg("a"))
        .def_readonly("r", &qs::WSpec::r)
        .def_readonly("a", &qs::WSpec::a);

    py::class_<qs::SeriesValue>(m, "SeriesValue")
        .def_readonly("value", &qs::SeriesValue::value)
        .def_readonly("scale", &qs::SeriesValue::scale);

    // qcore
    m.def("qpoch", &qs::qpoch, py::arg("x"), py::arg("n"), py::arg("ctx"));
    m.def("qpoch_inf", &qs::qpoch_inf, py::arg("x"), py::arg("ctx"));
    m.def("theta", &qs::theta, py::arg("x"), py::arg("ctx"));

    // series
    m.def("psi", &qs::psi, py::arg("spec"), py::arg("x"), py::arg("y"), py::arg("ctx"));
    m.def("psi_star", &qs::psi_star, py::arg("spec"), py::arg("x"), py::arg("y"),
          py::arg("ctx"));
    m.def("psi_star_full", &qs::psi_star_full, py::arg("spec"), py::arg("x"), py::arg("y"),
          py::arg("ctx"));
    m.def("w_series", &qs::w_series, py::arg("wspec"), py::arg("y"), py::arg("ctx"));
    m.def("w_star", &qs::w_star, py::arg("wspec"), py::arg("y"), py::arg("ctx"));
    m.def("w_star_full", &qs::w_star_full, py::arg("wspec"), py::arg("y"), py::arg("ctx"));

    // classical product sides
    m.def("q_gauss", &qs::q_gauss, py::arg("a"), py::arg("b"), py::arg("x"), py::arg("ctx"));
    m.def("one_psi_one_rhs", &qs::one_psi_one_rhs, py::arg("a"), py::arg("b"), py::arg("x"),
          py::arg("ctx"));
    m.def("six_psi_six", &qs::six_psi_six, py::arg("a"), py::arg("y"), py::arg("ctx"));
    m.def("psi_star_x1", &qs::psi_star_x1, py::arg("spec"), py::arg("y"), py::arg("ctx"));

    // factorization
    py::class_<qs::RhoClass>(m, "RhoClass").def_readonly("rep", &qs::RhoClass::rep);
    py::class_<qs::FactorizationResult>(m, "FactorizationResult")
        .def_readonly("A", &qs::FactorizationResult::A)
        .def_readonly("rhos", &qs::FactorizationResult::rhos)
        .def_readonly("residual", &qs::FactorizationResult::residual)
        .def_readonly("x", &qs::FactorizationResult::x)
        .def_readonly("q_exponent", &qs::FactorizationResult::q_exponent);
    m.def("factorize", &qs::factorize, py::arg("spec"), py::arg("x"), py::arg("ctx"));
    m.def(
        "find_rhos",
        [](const qs::SeriesSpec& spec, cplx x, const qs::QContext& ctx) {
            return qs::find_rhos(spec, x, ctx);
        },
        py::arg("spec"), py::arg("x"), py::arg("ctx"));

    // elliptic inversion
    m.def("theta_quotient", &qs::theta_quotient, py::arg("x"), py::arg("ctx"));
    m.def("jacobi_inverse", &qs::jacobi_inverse, py::arg("y"), py::arg("ctx"));

    // verification suites
    py::class_<qs::ReportRecord>(m, "ReportRecord")
        .def_readonly("identity_id", &qs::ReportRecord::identity_id)
        .def_readonly("inputs", &qs::ReportRecord::inputs)
        .def_readonly("residual", &qs::ReportRecord::residual)
        .def_readonly("tolerance", &qs::ReportRecord::tolerance)
        .def_readonly("pass_", &qs::ReportRecord::pass);
    py::class_<qs::Report>(m, "Report")
        .def_readonly("suite", &qs::Report::suite)
        .def_readonly("records", &qs::Report::records)
        .def("all_pass", &qs::Report::all_pass)
        .def("passed", &qs::Report::passed)
        .def("to_text", &qs::Report::to_text)
        .def("summary", &qs::Report::summary);
    m.def(
        "run_suite",
        [](const std::string& suite, cplx q, std::uint64_t seed, int samples,
           double tolerance_scale) {
            qs::SuiteConfig cfg;
            cfg.suite = qs::suite_from_name(suite);
            cfg.q = q;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.tolerance_scale = tolerance_scale;
            return qs::run_suite(cfg);
        },
        py::arg("suite"), py::arg("q") = cplx(0.5, 0.0), py::arg("seed") = 7,
        py::arg("samples") = 0, py::arg("tolerance_scale") = 1.0);
}

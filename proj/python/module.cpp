#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dsi/core.hpp"
#include "dsi/error.hpp"
#include "dsi/lamperti.hpp"
#include "dsi/markov_cov.hpp"
#include "dsi/sbm_sim.hpp"
#include "dsi/spectral.hpp"

namespace py = pybind11;
using namespace dsi;

namespace {

std::vector<double> to_vector(std::span<const double> values) {
    return {values.begin(), values.end()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "DSI process sampling, Markov covariance and spectral density toolkit";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "DsiError", PyExc_ValueError);

    py::class_<SamplingScheme>(m, "SamplingScheme")
        .def_property_readonly("H", &SamplingScheme::H)
        .def_property_readonly("alpha", &SamplingScheme::alpha)
        .def_property_readonly("T", &SamplingScheme::T)
        .def_property_readonly("q", &SamplingScheme::q)
        .def_property_readonly("s", [](const SamplingScheme& s) { return to_vector(s.s()); })
        .def_property_readonly("scale", &SamplingScheme::scale)
        .def("__repr__", [](const SamplingScheme& s) {
            return "SamplingScheme(H=" + std::to_string(s.H()) + ", alpha=" +
                   std::to_string(s.alpha()) + ", T=" + std::to_string(s.T()) +
                   ", q=" + std::to_string(s.q()) + ")";
        });

    m.def(
        "validate_scheme",
        [](double H, double alpha, int T, std::vector<double> s) {
            const int q = static_cast<int>(s.size());
            return validate_scheme(SchemeParams{H, alpha, T, q, std::move(s)});
        },
        py::arg("H"), py::arg("alpha"), py::arg("T"), py::arg("s"));

    m.def(
        "split_index",
        [](std::int64_t kappa, int q) {
            const auto idx = split_index(kappa, q);
            return py::make_tuple(idx.n, idx.u);
        },
        py::arg("kappa"), py::arg("q"));
    m.def("embed_index", &embed_index, py::arg("n"), py::arg("u"), py::arg("q"));
    m.def(
        "sample_times",
        [](const SamplingScheme& scheme, std::int64_t kappa_min, std::int64_t kappa_max) {
            std::vector<double> times;
            for (const auto& p : sample_points(scheme, kappa_min, kappa_max)) {
                times.push_back(p.time);
            }
            return times;
        },
        py::arg("scheme"), py::arg("kappa_min"), py::arg("kappa_max"));

    m.def(
        "quasi_lamperti",
        [](std::vector<double> times, std::vector<double> values, double H, double alpha) {
            const auto x = quasi_lamperti({std::move(times), std::move(values)}, H, alpha);
            return py::make_tuple(x.points, x.values);
        },
        py::arg("times"), py::arg("values"), py::arg("H"), py::arg("alpha"));
    m.def(
        "inverse_quasi_lamperti",
        [](std::vector<double> points, std::vector<double> values, double H, double alpha) {
            const auto y = inverse_quasi_lamperti({std::move(points), std::move(values)}, H, alpha);
            return py::make_tuple(y.times, y.values);
        },
        py::arg("points"), py::arg("values"), py::arg("H"), py::arg("alpha"));

    py::class_<MarkovCovarianceModel>(m, "MarkovCovarianceModel")
        .def_property_readonly("scheme", &MarkovCovarianceModel::scheme)
        .def_property_readonly("R0", [](const MarkovCovarianceModel& md) { return to_vector(md.R0()); })
        .def_property_readonly("R1", [](const MarkovCovarianceModel& md) { return to_vector(md.R1()); })
        .def_property_readonly("f", [](const MarkovCovarianceModel& md) { return to_vector(md.f()); })
        .def_property_readonly("ftilde_q", &MarkovCovarianceModel::ftilde_q)
        .def_property_readonly("decay_ratio", &MarkovCovarianceModel::decay_ratio);

    m.def("make_markov_model", &make_markov_model, py::arg("scheme"), py::arg("R0"),
          py::arg("R1"));
    m.def("model_from_sbm", &model_from_sbm, py::arg("scheme"));
    m.def("f_tilde", &f_tilde, py::arg("model"), py::arg("r"));
    m.def("covariance_W", &covariance_W, py::arg("model"), py::arg("kappa"), py::arg("tau"));
    m.def(
        "covariance_V",
        [](const MarkovCovarianceModel& model, std::int64_t n, std::int64_t tau) {
            return covariance_V(model, n, tau).matrix;
        },
        py::arg("model"), py::arg("n"), py::arg("tau"));

    m.def("uniform_omega_grid", &uniform_omega_grid, py::arg("points"));
    m.def(
        "spectral_markov",
        [](const MarkovCovarianceModel& model, std::vector<double> omegas) {
            return spectral_markov(model, omegas).matrices;
        },
        py::arg("model"), py::arg("omegas"));
    m.def(
        "spectral_sbm",
        [](const SamplingScheme& scheme, std::vector<double> omegas) {
            return spectral_sbm(scheme, omegas).matrices;
        },
        py::arg("scheme"), py::arg("omegas"));
    m.def(
        "spectral_series",
        [](const MarkovCovarianceModel& model, std::vector<double> omegas, double tol) {
            const auto eval = spectral_series(model, omegas, tol);
            return py::make_tuple(eval.matrices, eval.meta->order, eval.meta->tail_bound);
        },
        py::arg("model"), py::arg("omegas"), py::arg("tol") = 1e-10);
    m.def(
        "invert_spectrum",
        [](const MarkovCovarianceModel& model, std::size_t points, std::vector<std::int64_t> taus) {
            const auto eval = spectral_markov(model, uniform_omega_grid(points));
            const auto inv = invert_spectrum(eval, model.scheme(), taus);
            return py::make_tuple(inv.covariances, inv.max_imag_residue);
        },
        py::arg("model"), py::arg("points"), py::arg("taus"));

    m.def("sbm_covariance_exact", &sbm_covariance_exact, py::arg("scheme"), py::arg("kappa1"),
          py::arg("kappa2"));
    m.def(
        "simulate_paths",
        [](const SamplingScheme& scheme, std::int64_t kappa_min, std::int64_t kappa_max,
           std::size_t paths, std::uint64_t seed) {
            const auto ens = simulate_paths(scheme, kappa_min, kappa_max, paths, seed);
            Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out =
                Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                               Eigen::RowMajor>>(
                    ens.values.data(), static_cast<Eigen::Index>(ens.paths),
                    static_cast<Eigen::Index>(ens.points()));
            return out;
        },
        py::arg("scheme"), py::arg("kappa_min"), py::arg("kappa_max"), py::arg("paths"),
        py::arg("seed"));
    m.def(
        "estimate_R",
        [](const SamplingScheme& scheme, std::size_t paths, std::uint64_t seed) {
            const auto ens = simulate_paths(scheme, 0, scheme.q(), paths, seed);
            const auto R = estimate_R(ens);
            py::list r0, r1;
            for (const auto& e : R.R0) r0.append(py::make_tuple(e.value, e.std_error));
            for (const auto& e : R.R1) r1.append(py::make_tuple(e.value, e.std_error));
            return py::make_tuple(r0, r1);
        },
        py::arg("scheme"), py::arg("paths"), py::arg("seed"));
}

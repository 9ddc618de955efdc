#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lram/bench.hpp"

namespace py = pybind11;
using namespace lram;

namespace {

DenseMatrix to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
    DenseMatrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    std::copy(a.data(), a.data() + m.size(), m.data().begin());
    return m;
}

py::array_t<double> to_array(const DenseMatrix& m) {
    py::array_t<double> a({m.rows(), m.cols()});
    std::copy(m.data().begin(), m.data().end(), a.mutable_data());
    return a;
}

using NpArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

SolveMode make_mode(double tau, double lambda, std::size_t iters) {
    return PracticalParams{tau, lambda, iters};
}

py::dict report_dict(const SolveReport& rep) {
    py::dict d;
    d["u"] = to_array(rep.factors.u);
    d["v"] = to_array(rep.factors.v);
    d["iterations"] = rep.iterations_run;
    d["wall_time_seconds"] = rep.wall_time_seconds;
    py::list obj, err;
    for (const auto& [it, v] : rep.objective_trace) obj.append(py::make_tuple(it, v));
    for (const auto& [it, v] : rep.error_trace) err.append(py::make_tuple(it, v));
    d["objective_trace"] = obj;
    d["error_trace"] = err;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Smoothed non-convex solvers for entrywise l1/linf low-rank approximation";

    mod.def("entrywise_l1_norm",
            [](const NpArray& x) { return entrywise_l1_norm(to_matrix(x)); });
    mod.def("entrywise_linf_norm",
            [](const NpArray& x) { return entrywise_linf_norm(to_matrix(x)); });

    mod.def(
        "truncated_svd",
        [](const NpArray& x, std::size_t k) {
            const TruncatedSVD s = truncated_svd(to_matrix(x), k);
            return py::make_tuple(to_array(s.left), py::cast(s.singulars), to_array(s.right));
        },
        py::arg("x"), py::arg("k"));

    mod.def(
        "charbonnier_value",
        [](const NpArray& x, double tau) { return charbonnier_value(to_matrix(x), tau); },
        py::arg("x"), py::arg("tau"));
    mod.def(
        "charbonnier_grad",
        [](const NpArray& x, double tau) { return to_array(charbonnier_grad(to_matrix(x), tau)); },
        py::arg("x"), py::arg("tau"));
    mod.def(
        "logsumexp_value",
        [](const NpArray& x, double tau) { return logsumexp_value(to_matrix(x), tau); },
        py::arg("x"), py::arg("tau"));
    mod.def(
        "logsumexp_grad",
        [](const NpArray& x, double tau) { return to_array(logsumexp_grad(to_matrix(x), tau)); },
        py::arg("x"), py::arg("tau"));
    mod.def(
        "huber_value",
        [](const NpArray& x, double tau) { return huber_value(to_matrix(x), tau); },
        py::arg("x"), py::arg("tau"));

    mod.def(
        "solve_l1",
        [](const NpArray& m, std::size_t rank, double tau, double lam, std::size_t iters) {
            return report_dict(solve_l1(to_matrix(m), rank, make_mode(tau, lam, iters)));
        },
        py::arg("m"), py::arg("rank"), py::arg("tau") = 1e-3, py::arg("lam") = 1e-3,
        py::arg("iters") = 40000);
    mod.def(
        "solve_linf",
        [](const NpArray& m, std::size_t rank, double tau, double lam, std::size_t iters) {
            return report_dict(solve_linf(to_matrix(m), rank, make_mode(tau, lam, iters)));
        },
        py::arg("m"), py::arg("rank"), py::arg("tau") = 1e-3, py::arg("lam") = 1e-3,
        py::arg("iters") = 40000);

    mod.def(
        "svd_baseline",
        [](const NpArray& m, std::size_t rank, const std::string& p) {
            const BaselineResult res =
                svd_baseline(to_matrix(m), rank, p == "inf" ? NormP::Linf : NormP::L1);
            return py::make_tuple(to_array(res.factors.u), to_array(res.factors.v),
                                  res.lp_error);
        },
        py::arg("m"), py::arg("rank"), py::arg("p") = "1");
    mod.def(
        "column_sampling_l1",
        [](const NpArray& m, std::size_t rank, std::size_t trials, std::uint64_t seed) {
            const BaselineResult res = column_sampling_l1(to_matrix(m), rank, trials, seed);
            return py::make_tuple(to_array(res.factors.u), to_array(res.factors.v),
                                  res.lp_error);
        },
        py::arg("m"), py::arg("rank"), py::arg("trials") = 10, py::arg("seed") = 0);

    mod.def(
        "dist_to_target",
        [](const NpArray& u, const NpArray& v, const NpArray& target, std::size_t r) {
            return dist_to_target({to_matrix(u), to_matrix(v)}, to_matrix(target), r);
        },
        py::arg("u"), py::arg("v"), py::arg("target"), py::arg("r"));

    mod.def(
        "gen_uniform",
        [](std::size_t m, std::size_t n, std::uint64_t seed) {
            return to_array(gen_uniform(m, n, seed));
        },
        py::arg("m"), py::arg("n"), py::arg("seed") = 0);
    mod.def(
        "gen_sign",
        [](std::size_t m, std::size_t n, std::uint64_t seed) {
            return to_array(gen_sign(m, n, seed));
        },
        py::arg("m"), py::arg("n"), py::arg("seed") = 0);
    mod.def(
        "gen_quantized",
        [](std::size_t m, std::size_t n, std::size_t r, std::uint64_t seed) {
            const QuantizedInstance inst = gen_quantized(m, n, r, seed);
            return py::make_tuple(to_array(inst.m), inst.certificate);
        },
        py::arg("m"), py::arg("n"), py::arg("r"), py::arg("seed") = 0);

    mod.def(
        "load_matrix_market",
        [](const std::string& path) { return to_array(load_matrix_market(path)); },
        py::arg("path"));
    mod.def(
        "save_matrix_market",
        [](const NpArray& m, const std::string& path) {
            save_matrix_market(to_matrix(m), path);
        },
        py::arg("m"), py::arg("path"));

    py::register_exception<parse_error>(mod, "ParseError");
    py::register_exception<numerical_error>(mod, "NumericalError");
    py::register_exception<divergence_error>(mod, "DivergenceError");
}

#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>
#include <pybind11/complex.h>
#include <pybind11/functional.h>

#include "fracns/analysis.hpp"
#include "fracns/config_file.hpp"
#include "fracns/contour.hpp"
#include "fracns/fractional_calculus.hpp"
#include "fracns/mainardi.hpp"
#include "fracns/mittag_leffler.hpp"
#include "fracns/orchestration.hpp"
#include "fracns/solver.hpp"

namespace py = pybind11;
using namespace fracns;

namespace {

specfun::SampledFunction sampled_from(py::array_t<double> grid, py::array_t<double> values) {
    auto g = grid.unchecked<1>();
    auto v = values.unchecked<1>();
    std::vector<double> gs(static_cast<std::size_t>(g.shape(0)));
    std::vector<double> vs(static_cast<std::size_t>(v.shape(0)));
    for (py::ssize_t i = 0; i < g.shape(0); ++i) gs[static_cast<std::size_t>(i)] = g(i);
    for (py::ssize_t i = 0; i < v.shape(0); ++i) vs[static_cast<std::size_t>(i)] = v(i);
    return specfun::SampledFunction(std::move(gs), std::move(vs));
}

py::array_t<double> array_from(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    auto r = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < v.size(); ++i) r(static_cast<py::ssize_t>(i)) = v[i];
    return out;
}

py::array_t<std::complex<double>> coefficients_of(const spectral::SpectralField& u) {
    py::array_t<std::complex<double>> out({static_cast<py::ssize_t>(u.components()),
                                           static_cast<py::ssize_t>(u.modes())});
    auto r = out.mutable_unchecked<2>();
    for (int c = 0; c < u.components(); ++c) {
        for (std::size_t m = 0; m < u.modes(); ++m) {
            r(c, static_cast<py::ssize_t>(m)) = u.at(c, m);
        }
    }
    return out;
}

py::dict run_summary(const solver::RunState& st) {
    py::dict d;
    std::vector<double> t, l2, half, tq, m, ratio;
    std::vector<int> iters;
    for (const auto& rec : st.monitors) {
        t.push_back(rec.t);
        l2.push_back(rec.norm_l2);
        half.push_back(rec.norm_half);
        tq.push_back(rec.norm_three_quarter);
        m.push_back(rec.contraction_M);
        ratio.push_back(rec.picard_ratio);
        iters.push_back(rec.picard_iters);
    }
    d["t"] = array_from(t);
    d["norm_l2"] = array_from(l2);
    d["norm_half"] = array_from(half);
    d["norm_three_quarter"] = array_from(tq);
    d["contraction_M"] = array_from(m);
    d["picard_ratio"] = array_from(ratio);
    d["picard_iters"] = iters;
    d["verdict"] =
        st.verdict == solver::Verdict::halted_blowup ? "halted_blowup" : "completed";
    d["t_max_estimate"] = st.t_max_estimate;
    d["max_monitor_M"] = st.max_monitor_M;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Spectral mild-solution engine for time-fractional Navier-Stokes "
                "with finite-delay forcing";

    // --- special functions ---
    mod.def("mittag_leffler",
            static_cast<double (*)(double, double, double)>(&specfun::mittag_leffler),
            py::arg("alpha"), py::arg("beta"), py::arg("z"),
            "Two-parameter Mittag-Leffler function E_{alpha,beta}(z)");
    mod.def("mainardi",
            [](double alpha, double t) { return specfun::mainardi(specfun::FractionalOrder(alpha), t); },
            py::arg("alpha"), py::arg("t"), "Mainardi function M_alpha(t)");
    mod.def("mainardi_moment",
            [](double alpha, double q) {
                return specfun::mainardi_moment(specfun::FractionalOrder(alpha), q);
            },
            py::arg("alpha"), py::arg("q"));
    mod.def("rl_integral",
            [](double alpha, py::array_t<double> grid, py::array_t<double> values) {
                auto out = specfun::rl_integral(specfun::FractionalOrder(alpha),
                                                sampled_from(grid, values));
                return array_from(out.values);
            },
            py::arg("alpha"), py::arg("grid"), py::arg("values"),
            "Riemann-Liouville integral J^alpha on a sample grid");
    mod.def("caputo_derivative",
            [](double alpha, py::array_t<double> grid, py::array_t<double> values) {
                auto out = specfun::caputo_derivative(specfun::FractionalOrder(alpha),
                                                      sampled_from(grid, values));
                return array_from(out.values);
            },
            py::arg("alpha"), py::arg("grid"), py::arg("values"),
            "Caputo derivative via the L1 scheme");
    mod.def("contour_eval_scalar",
            [](double alpha, double lam, double t, const std::string& which) {
                return solops::contour_eval_scalar(
                    alpha, lam, t, which == "T" ? solops::FamilyKind::T : solops::FamilyKind::S);
            },
            py::arg("alpha"), py::arg("lam"), py::arg("t"), py::arg("which") = "S");

    // --- spectral fields ---
    py::class_<spectral::SpectralGrid>(mod, "SpectralGrid")
        .def(py::init<int, int, double>(), py::arg("dim"), py::arg("n_modes"),
             py::arg("nu") = 1.0)
        .def_property_readonly("dim", &spectral::SpectralGrid::dim)
        .def_property_readonly("n_modes", &spectral::SpectralGrid::n_modes)
        .def_property_readonly("nu", &spectral::SpectralGrid::viscosity)
        .def_property_readonly("mode_count", &spectral::SpectralGrid::mode_count)
        .def("wavevector", [](const spectral::SpectralGrid& g, std::size_t m) {
            auto k = g.wavevector(m);
            return py::make_tuple(k[0], k[1], k[2]);
        });

    py::class_<spectral::SpectralField>(mod, "SpectralField")
        .def_static("zero", &spectral::SpectralField::zero)
        .def_static("synthetic", &spectral::SpectralField::synthetic)
        .def_property_readonly("components", &spectral::SpectralField::components)
        .def_property_readonly("modes", &spectral::SpectralField::modes)
        .def("coefficients", &coefficients_of)
        .def("set_coefficient",
             [](spectral::SpectralField& u, int c, std::size_t m, std::complex<double> v) {
                 u.at(c, m) = v;
             })
        .def("l2_norm", &spectral::SpectralField::l2_norm)
        .def("max_divergence", &spectral::SpectralField::max_divergence);

    py::class_<spectral::SpectralOperator>(mod, "SpectralOperator")
        .def_static("stokes", &spectral::SpectralOperator::stokes)
        .def_static("synthetic", &spectral::SpectralOperator::synthetic)
        .def_property_readonly("size", &spectral::SpectralOperator::size)
        .def("eigenvalue", &spectral::SpectralOperator::eigenvalue);

    mod.def("taylor_green", &spectral::taylor_green, py::arg("grid"), py::arg("amplitude") = 1.0);
    mod.def("random_field", &spectral::random_divergence_free_field, py::arg("grid"),
            py::arg("gamma"), py::arg("seed"));
    mod.def("nonlinear_term", &spectral::nonlinear_term, py::arg("u"),
            "Fu = -P(u.grad)u with 2/3-rule dealiasing");
    mod.def("leray_project", [](spectral::SpectralField u) {
        spectral::leray_project_inplace(u);
        return u;
    });
    mod.def("apply_fractional_power", &spectral::apply_fractional_power, py::arg("op"),
            py::arg("beta"), py::arg("u"));
    mod.def("sobolev_norm", &spectral::sobolev_norm, py::arg("op"), py::arg("beta"), py::arg("u"));

    // --- operator families ---
    py::class_<solops::OperatorFamily>(mod, "OperatorFamily")
        .def(py::init<double, spectral::SpectralOperator>(), py::arg("alpha"), py::arg("op"))
        .def_property_readonly("alpha", &solops::OperatorFamily::alpha)
        .def("symbol_S", &solops::OperatorFamily::symbol_S, py::arg("lam"), py::arg("t"))
        .def("symbol_T", &solops::OperatorFamily::symbol_T, py::arg("lam"), py::arg("t"))
        .def("kernel_mass", &solops::OperatorFamily::kernel_mass, py::arg("lam"), py::arg("tau"))
        .def("apply_S", &solops::OperatorFamily::apply_S, py::arg("t"), py::arg("u"))
        .def("apply_T", &solops::OperatorFamily::apply_T, py::arg("t"), py::arg("u"));

    // --- solver pipeline ---
    mod.def("solve",
            [](const std::map<std::string, std::string>& config) {
                auto cfg = cli::RunConfig::from_keyvalues(
                    cli::KeyValues(config.begin(), config.end()));
                auto art = cli::run_solve(cfg);
                py::dict d = run_summary(art.state);
                d["exit_code"] = art.exit_code;
                d["trajectory_csv"] = art.trajectory_csv;
                d["manifest"] = art.manifest_path;
                d["constants"] = py::dict(
                    py::arg("c1") = art.constants.c1, py::arg("c2") = art.constants.c2,
                    py::arg("B1") = art.constants.B1, py::arg("B2") = art.constants.B2,
                    py::arg("B3") = art.constants.B3,
                    py::arg("B3_three_quarter") = art.constants.B3_three_quarter,
                    py::arg("C1") = art.constants.C1, py::arg("C2") = art.constants.C2,
                    py::arg("C3") = art.constants.C3, py::arg("B4") = art.constants.B4);
                return d;
            },
            py::arg("config"),
            "Run the mild-solution solver from a flat key-value configuration dict; "
            "writes the trajectory CSV, checkpoints and manifest to output.dir");

    mod.def("estimate_bilinear_constants",
            [](const spectral::SpectralGrid& g, int n, double gamma, unsigned long long seed) {
                auto est = analysis::estimate_bilinear_constants(g, n, gamma, seed);
                py::dict d;
                d["c1"] = est.c1;
                d["c2"] = est.c2;
                d["c1_lip"] = est.c1_lip;
                d["c2_lip"] = est.c2_lip;
                d["n_samples"] = est.n_samples;
                d["seed"] = est.seed;
                return d;
            },
            py::arg("grid"), py::arg("n_samples"), py::arg("gamma"), py::arg("seed"));

    mod.def("estimate_holder_scalar",
            [](py::array_t<double> times, py::array_t<double> values, double lam, double beta,
               double alpha) {
                auto t = times.unchecked<1>();
                auto v = values.unchecked<1>();
                std::vector<double> ts(static_cast<std::size_t>(t.shape(0)));
                std::vector<spectral::SpectralField> us;
                us.reserve(ts.size());
                for (py::ssize_t i = 0; i < t.shape(0); ++i) {
                    ts[static_cast<std::size_t>(i)] = t(i);
                    auto u = spectral::SpectralField::synthetic(1);
                    u.at(0, 0) = v(i);
                    us.push_back(std::move(u));
                }
                auto op = spectral::SpectralOperator::synthetic({lam});
                auto rep = analysis::estimate_holder(ts, us, op, beta, alpha);
                py::dict d;
                d["theta_measured"] = rep.theta_measured;
                d["theta_predicted"] = rep.theta_predicted;
                d["r2"] = rep.fit_r2;
                d["h_min"] = rep.h_min;
                d["h_max"] = rep.h_max;
                return d;
            },
            py::arg("times"), py::arg("values"), py::arg("lam") = 1.0, py::arg("beta") = 0.5,
            py::arg("alpha") = 0.5);

    mod.attr("__version__") = "0.1.0";
}

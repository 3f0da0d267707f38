#include "fracns/orchestration.hpp"
#include "fracns/field_io.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fracns::cli {

namespace {
std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}
} // namespace

spectral::SpectralOperator build_operator(const RunConfig& c) {
    if (c.dim == 0) {
        return spectral::SpectralOperator::synthetic(c.synthetic_eigenvalues);
    }
    return spectral::SpectralOperator::stokes(spectral::SpectralGrid(c.dim, c.n_modes, c.nu));
}

solver::DelayedForce build_force(const RunConfig& c) {
    using solver::DelayedForce;
    DelayedForce f;
    if (c.force_kind == "none") {
        f = DelayedForce::none_force();
    } else if (c.force_kind == "point_delay") {
        f = DelayedForce::point(c.force_kappa);
    } else if (c.force_kind == "distributed_delay") {
        std::vector<double> th, w;
        const int n = std::max(c.force_kernel_points, 2);
        for (int i = 0; i < n; ++i) {
            th.push_back(-c.delay_r + c.delay_r * i / (n - 1));
            w.push_back(c.force_kappa / c.delay_r); // uniform averaging kernel
        }
        f = DelayedForce::distributed(th, w);
    } else if (c.force_kind == "modulated_point_delay") {
        const double a = c.omega_amplitude, w = c.omega_frequency;
        std::function<double(double)> omega;
        if (c.omega_kind == "constant") {
            omega = [a](double) { return a; };
        } else {
            omega = [a, w](double t) { return a * std::cos(w * t); };
        }
        f = DelayedForce::modulated_point(c.force_kappa, omega, c.omega_p);
    }
    if (c.force_lf >= 0.0) f.lipschitz_L = c.force_lf;
    f.omega_p = c.omega_p;
    return f;
}

solver::HistorySegment build_datum(const RunConfig& c, const spectral::SpectralOperator& op) {
    using spectral::SpectralField;
    SpectralField phi0 = SpectralField::synthetic(1);
    if (c.dim == 0) {
        phi0 = SpectralField::synthetic(c.synthetic_eigenvalues.size());
        for (std::size_t m = 0; m < phi0.modes(); ++m) phi0.at(0, m) = c.ic_value;
    } else {
        const auto& grid = *op.grid();
        if (c.ic_kind == "taylor_green") {
            phi0 = spectral::taylor_green(grid, c.ic_amplitude);
        } else if (c.ic_kind == "random") {
            phi0 = spectral::random_divergence_free_field(grid, c.ic_gamma, c.seed);
            spectral::dealias_inplace(phi0);
            const double n = phi0.l2_norm();
            if (n > 0.0) phi0 *= c.ic_amplitude / n;
        } else if (c.ic_kind == "single_mode") {
            phi0 = SpectralField::zero(grid);
            std::array<int, 3> k{c.ic_kx, c.ic_ky, 0};
            std::array<int, 3> mk{-c.ic_kx, -c.ic_ky, 0};
            const auto m = grid.index_of(k);
            const auto mm = grid.index_of(mk);
            // divergence-free unit vector orthogonal to k
            const double kn = std::hypot(c.ic_kx, c.ic_ky);
            phi0.at(0, m) = spectral::Complex(-c.ic_ky / kn, 0.0) * (0.5 * c.ic_amplitude);
            phi0.at(1, m) = spectral::Complex(c.ic_kx / kn, 0.0) * (0.5 * c.ic_amplitude);
            phi0.at(0, mm) = std::conj(phi0.at(0, m));
            phi0.at(1, mm) = std::conj(phi0.at(1, m));
        } else { // zero
            phi0 = SpectralField::zero(grid);
        }
    }
    return solver::HistorySegment::constant(c.delay_r, phi0);
}

SolveArtifacts run_solve(const RunConfig& c) {
    namespace fs = std::filesystem;
    const auto t0 = std::chrono::steady_clock::now();
    c.validate();

    auto op = build_operator(c);
    auto force = build_force(c);
    auto phi = build_datum(c, op);
    solops::OperatorFamily fam(c.alpha, op);

    SolveArtifacts art{solver::RunState{phi, {}, 0, {}, phi.interpolate(0.0), 0.0, {},
                                        solver::Verdict::running,
                                        std::numeric_limits<double>::quiet_NaN(), 0.0, false, {}},
                       {}, "", "", "", {}, {}, 0.0, 0};

    for (const auto& w : solver::validate_force(force, c.alpha, false)) art.warnings.push_back(w);

    // empirical constants feeding the contraction monitor
    art.constants = analysis::estimate_operator_constants(fam);
    const bool nonlinear_grid = c.dim != 0 && c.nonlinear;
    if (nonlinear_grid) {
        const int probe_modes = std::min(c.n_modes, 32);
        spectral::SpectralGrid probe(c.dim, std::max(probe_modes, 8), c.nu);
        for (double gamma : {1.0, 2.0, 3.0}) {
            auto bilin = analysis::estimate_bilinear_constants(probe, 120, gamma, c.seed);
            art.constants.c1 = std::max(art.constants.c1, bilin.c1);
            art.constants.c2 = std::max(art.constants.c2, bilin.c2);
            art.constants.c1_lip = std::max(art.constants.c1_lip, bilin.c1_lip);
            art.constants.c2_lip = std::max(art.constants.c2_lip, bilin.c2_lip);
        }
    }

    solver::SolverConfig scfg;
    scfg.alpha = c.alpha;
    scfg.t_end = c.t_end;
    scfg.n_steps = c.n_steps;
    scfg.mesh_gamma = c.mesh_gamma;
    scfg.picard_tol = c.picard_tol;
    scfg.picard_max_iters = c.picard_max_iters;
    scfg.blowup_threshold = c.blowup_threshold;
    scfg.half_norm_beta = c.half_norm_beta;
    scfg.ball_radius = c.monitor_radius;
    scfg.strict_ball = c.monitor_strict;
    scfg.nonlinear = c.nonlinear;
    scfg.c1 = art.constants.c1;
    scfg.b3_half = art.constants.B3;
    scfg.b3_three_quarter = art.constants.B3_three_quarter;

    solver::MildSolver ms(fam, scfg, force);
    art.state = ms.run(phi);
    art.exit_code = art.state.verdict == solver::Verdict::halted_blowup ? 2 : 0;

    fs::create_directories(c.output_dir);
    art.trajectory_csv = (fs::path(c.output_dir) / "trajectory.csv").string();
    {
        std::ofstream os(art.trajectory_csv);
        os << "t,norm_l2,norm_half,norm_three_quarter,picard_iters,contraction_M\n";
        os.precision(17);
        for (const auto& r : art.state.monitors) {
            os << r.t << "," << r.norm_l2 << "," << r.norm_half << "," << r.norm_three_quarter
               << "," << r.picard_iters << "," << r.contraction_M << "\n";
        }
    }

    const std::size_t n_nodes = art.state.monitors.size();
    const int n_ckpt = std::min<std::size_t>(static_cast<std::size_t>(std::max(c.checkpoints, 0)),
                                             n_nodes);
    for (int i = 1; i <= n_ckpt; ++i) {
        const std::size_t idx = n_nodes * static_cast<std::size_t>(i) / n_ckpt - 1;
        const double t = art.state.monitors[idx].t;
        std::ostringstream name;
        name << "field_" << i << ".bin";
        const std::string path = (fs::path(c.output_dir) / name.str()).string();
        spectral::save_field(path, art.state.trajectory.interpolate(t));
        art.checkpoints.push_back(path);
    }

    if (!art.state.monitors.empty()) {
        art.spectrum_csv = (fs::path(c.output_dir) / "spectrum_final.csv").string();
        std::ofstream os(art.spectrum_csv);
        spectral::write_spectrum_csv(os, art.state.trajectory.interpolate(
                                             art.state.monitors.back().t));
    }

    const auto t1 = std::chrono::steady_clock::now();
    art.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

    art.manifest_path = (fs::path(c.output_dir) / "manifest.txt").string();
    std::ofstream ms_os(art.manifest_path);
    ms_os << serialize_config(make_manifest(c, art));
    return art;
}

KeyValues make_manifest(const RunConfig& c, const SolveArtifacts& art) {
    KeyValues kv = c.to_keyvalues();
    kv["run.version"] = "fracns-0.1.0";
    kv["run.verdict"] =
        art.state.verdict == solver::Verdict::halted_blowup ? "halted_blowup" : "completed";
    if (art.state.verdict == solver::Verdict::halted_blowup) {
        kv["run.t_max_estimate"] = fmt(art.state.t_max_estimate);
    }
    kv["run.max_monitor_M"] = fmt(art.state.max_monitor_M);
    double max_ratio = 0.0, max_pred = 0.0;
    int max_iters = 0;
    for (const auto& r : art.state.monitors) {
        max_ratio = std::max(max_ratio, r.picard_ratio);
        max_pred = std::max(max_pred, r.predicted_ratio);
        max_iters = std::max(max_iters, r.picard_iters);
    }
    kv["run.max_picard_ratio"] = fmt(max_ratio);
    kv["run.max_predicted_ratio"] = fmt(max_pred);
    kv["run.max_picard_iters"] = std::to_string(max_iters);
    if (!art.state.monitors.empty()) {
        kv["run.final_t"] = fmt(art.state.monitors.back().t);
        kv["run.final_norm_half"] = fmt(art.state.monitors.back().norm_half);
    }
    kv["run.constants.c1"] = fmt(art.constants.c1);
    kv["run.constants.c2"] = fmt(art.constants.c2);
    kv["run.constants.B1"] = fmt(art.constants.B1);
    kv["run.constants.B2"] = fmt(art.constants.B2);
    kv["run.constants.B3"] = fmt(art.constants.B3);
    kv["run.constants.B3_three_quarter"] = fmt(art.constants.B3_three_quarter);
    kv["run.constants.B4"] = fmt(art.constants.B4);
    kv["run.constants.C1"] = fmt(art.constants.C1);
    kv["run.constants.C2"] = fmt(art.constants.C2);
    kv["run.constants.C3"] = fmt(art.constants.C3);
    kv["run.trajectory_csv"] = art.trajectory_csv;
    if (!art.spectrum_csv.empty()) kv["run.spectrum_csv"] = art.spectrum_csv;
    for (std::size_t i = 0; i < art.checkpoints.size(); ++i) {
        kv["run.checkpoint." + std::to_string(i + 1)] = art.checkpoints[i];
    }
    kv["run.wall_seconds"] = fmt(art.wall_seconds);
    for (std::size_t i = 0; i < art.warnings.size(); ++i) {
        kv["run.warning." + std::to_string(i + 1)] = art.warnings[i];
    }
    return kv;
}

} // namespace fracns::cli

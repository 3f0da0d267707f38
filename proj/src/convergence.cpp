#include "fracns/analysis.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace fracns::analysis {

void ConvergenceReport::write_csv(std::ostream& os) const {
    os << "n_steps,error\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        os << steps[i] << "," << errors[i] << "\n";
    }
    os << "# order," << order << (exact ? ",exact" : "") << "\n";
}

ConvergenceReport run_convergence_study(const solops::OperatorFamily& fam,
                                        solver::SolverConfig base_cfg,
                                        const solver::DelayedForce& force,
                                        const solver::HistorySegment& phi,
                                        const std::vector<int>& ladder) {
    if (ladder.size() < 3) {
        throw std::invalid_argument("run_convergence_study: ladder needs >= 3 levels");
    }
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (ladder[i] != 2 * ladder[i - 1]) {
            throw std::invalid_argument("run_convergence_study: each level must refine by 2x");
        }
    }

    auto run_n = [&](int n) {
        solver::SolverConfig cfg = base_cfg;
        cfg.n_steps = n;
        solver::MildSolver s(fam, cfg, force);
        return s.run(phi);
    };

    const int n_ref = ladder.back() * 4;
    auto ref = run_n(n_ref);
    if (ref.verdict == solver::Verdict::halted_blowup) {
        throw std::runtime_error("run_convergence_study: reference run halted on blow-up");
    }

    ConvergenceReport rep;
    rep.steps = ladder;
    for (int n : ladder) {
        auto st = run_n(n);
        double e = 0.0;
        // compare at the coarsest ladder level's nodes (shared by nesting)
        for (int j = 1; j <= ladder.front(); ++j) {
            const double t = base_cfg.t_end *
                             std::pow(static_cast<double>(j) / ladder.front(), base_cfg.mesh_gamma);
            SpectralField d = st.trajectory.interpolate(t);
            d -= ref.trajectory.interpolate(t);
            e = std::max(e, spectral::sobolev_norm(fam.op(), 0.5, d));
        }
        rep.errors.push_back(e);
    }

    rep.exact = true;
    for (double e : rep.errors) {
        if (e > 1e-11) rep.exact = false;
    }
    if (!rep.exact) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double m = static_cast<double>(rep.errors.size());
        for (std::size_t i = 0; i < rep.errors.size(); ++i) {
            const double x = static_cast<double>(i);
            const double y = -std::log2(std::max(rep.errors[i], 1e-300));
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        rep.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    return rep;
}

} // namespace fracns::analysis

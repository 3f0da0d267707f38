#include "fracns/solver.hpp"

#include <cmath>
#include <sstream>

namespace fracns::solver {

using spectral::sobolev_norm;

void SolverConfig::validate() const {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::invalid_argument("SolverConfig: alpha must lie in (0,1]");
    }
    if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be positive");
    if (n_steps < 2) throw std::invalid_argument("SolverConfig: n_steps must be >= 2");
    if (!(mesh_gamma >= 1.0)) throw std::invalid_argument("SolverConfig: mesh gamma must be >= 1");
    if (!(picard_tol > 0.0)) throw std::invalid_argument("SolverConfig: picard_tol must be > 0");
    if (picard_max_iters < 1) throw std::invalid_argument("SolverConfig: picard_max_iters >= 1");
    if (!(blowup_threshold > 0.0)) {
        throw std::invalid_argument("SolverConfig: blowup_threshold must be > 0");
    }
    if (half_norm_beta != 0.5 && half_norm_beta != 0.75) {
        throw std::invalid_argument("SolverConfig: half_norm_beta must be 0.5 or 0.75");
    }
}

std::vector<double> SolverConfig::mesh() const {
    std::vector<double> t(static_cast<std::size_t>(n_steps) + 1);
    for (int j = 0; j <= n_steps; ++j) {
        t[static_cast<std::size_t>(j)] =
            t_end * std::pow(static_cast<double>(j) / n_steps, mesh_gamma);
    }
    return t;
}

MildSolver::MildSolver(solops::OperatorFamily fam, SolverConfig cfg, DelayedForce force)
    : fam_(std::move(fam)), cfg_(cfg), force_(std::move(force)) {
    cfg_.validate();
    if (cfg_.alpha != fam_.alpha()) {
        throw std::invalid_argument("MildSolver: config alpha and family alpha disagree");
    }
    // synthetic diagonal mode carries no nonlinearity
    nonlinear_active_ = cfg_.nonlinear && fam_.op().grid().has_value();
}

std::vector<double> MildSolver::panel_masses(double tau) const {
    const auto& op = fam_.op();
    std::vector<double> w(op.size());
    for (std::size_t m = 0; m < op.size(); ++m) {
        const double lam = op.eigenvalue(m);
        w[m] = lam > 0.0 ? fam_.kernel_mass(lam, tau) : 0.0;
    }
    return w;
}

const std::vector<double>& MildSolver::cached_masses(RunState& state, std::size_t lag) const {
    auto& cache = state.mass_cache;
    while (cache.size() <= lag) {
        const std::size_t m = cache.size();
        cache.push_back(panel_masses(state.mesh[m] - state.mesh[0]));
    }
    return cache[lag];
}

SpectralField MildSolver::weighted(const std::vector<double>& w, const SpectralField& g) const {
    SpectralField out = g;
    for (std::size_t m = 0; m < g.modes(); ++m) {
        for (int c = 0; c < g.components(); ++c) out.at(c, m) *= w[m];
    }
    return out;
}

void MildSolver::accumulate_weighted(SpectralField& acc, const std::vector<double>& wb,
                                     const std::vector<double>& wa,
                                     const SpectralField& g) const {
    for (std::size_t m = 0; m < g.modes(); ++m) {
        const double w = wb[m] - wa[m];
        for (int c = 0; c < g.components(); ++c) acc.at(c, m) += w * g.at(c, m);
    }
}

SpectralField MildSolver::evaluate_g(double t, const HistorySegment& h,
                                     const SpectralField& u_at_t) const {
    SpectralField g = u_at_t;
    g *= 0.0;
    if (nonlinear_active_) g += spectral::nonlinear_term(u_at_t);
    if (force_.is_active()) g += evaluate_force(force_, t, h);
    return g;
}

double MildSolver::contraction_monitor(double t, double phi_sup_half_norm) const {
    const double a = cfg_.alpha;
    const double c1 = nonlinear_active_ ? cfg_.c1 : 0.0;
    const double first = 2.0 * (cfg_.ball_radius + phi_sup_half_norm) * c1 *
                         cfg_.b3_three_quarter * (4.0 / a) * std::pow(t, a / 4.0);
    const double second = cfg_.b3_half * (force_.is_active() ? force_.lipschitz_L : 0.0) *
                          (2.0 / a) * std::pow(t, a / 2.0);
    return first + second;
}

RunState MildSolver::start(const HistorySegment& phi) const {
    if (std::abs(phi.t_now()) > 1e-12) {
        throw std::invalid_argument("MildSolver: the datum must end at t = 0");
    }
    RunState st{phi,
                cfg_.mesh(),
                0,
                {},
                phi.interpolate(0.0),
                phi.window_sup_norm(fam_.op(), 0.5),
                {},
                Verdict::running,
                std::numeric_limits<double>::quiet_NaN(),
                0.0,
                false,
                {}};
    st.g_nodes.push_back(evaluate_g(0.0, phi, st.phi0));
    return st;
}

PicardResult MildSolver::picard_solve(const SpectralField& candidate,
                                      const SpectralField& frozen_tail,
                                      const std::vector<double>& panel_weight, double t_next,
                                      const HistorySegment& base_history) const {
    const auto& op = fam_.op();
    PicardResult res{candidate, 0, 0.0, false};

    const bool force_needs_candidate =
        force_.is_active() && force_.depends_beyond(t_next, base_history.t_now(),
                                                    base_history.delay());

    // frozen force: the delayed argument lies in known history
    SpectralField pf_frozen = frozen_tail; // shape carrier
    pf_frozen *= 0.0;
    if (force_.is_active() && !force_needs_candidate) {
        pf_frozen = evaluate_force(force_, t_next, base_history);
    }

    if (!nonlinear_active_ && !force_needs_candidate) {
        // affine map with constant right-hand side: fixed point in one application
        res.value = frozen_tail;
        if (force_.is_active()) res.value += weighted(panel_weight, pf_frozen);
        res.iters = 1;
        res.last_ratio = 0.0;
        res.converged = true;
        return res;
    }

    SpectralField v = candidate;
    double prev_diff = -1.0;
    for (int it = 1; it <= cfg_.picard_max_iters; ++it) {
        SpectralField g = v;
        g *= 0.0;
        if (nonlinear_active_) g += spectral::nonlinear_term(v);
        if (force_.is_active()) {
            if (force_needs_candidate) {
                g += evaluate_force(force_, t_next, HistoryView(base_history, t_next, v));
            } else {
                g += pf_frozen;
            }
        }
        SpectralField v_new = frozen_tail;
        v_new += weighted(panel_weight, g);

        SpectralField diff = v_new;
        diff -= v;
        const double d = sobolev_norm(op, cfg_.half_norm_beta, diff);
        if (prev_diff > 0.0) res.last_ratio = d / prev_diff;
        prev_diff = d > 0.0 ? d : prev_diff;
        v = std::move(v_new);
        res.iters = it;
        if (d <= cfg_.picard_tol) {
            res.converged = true;
            res.value = std::move(v);
            return res;
        }
    }
    res.value = std::move(v);
    std::ostringstream msg;
    msg << "Picard iteration did not converge after " << cfg_.picard_max_iters
        << " iterations (last ratio " << res.last_ratio << ")";
    throw PicardDivergence(msg.str(), res.last_ratio);
}

bool MildSolver::step(RunState& state) const {
    if (state.verdict != Verdict::running) return false;
    const auto& mesh = state.mesh;
    const std::size_t j = state.accepted; // computing node j+1
    if (j + 1 >= mesh.size()) {
        state.verdict = Verdict::completed;
        return false;
    }
    const double t_next = mesh[j + 1];
    const auto& op = fam_.op();
    const bool uniform = cfg_.mesh_gamma == 1.0;

    // S-term
    SpectralField tail = fam_.apply_S(t_next, state.phi0);

    // past panels [t_i, t_{i+1}], i < j, left-endpoint values
    if (uniform) cached_masses(state, j + 1); // grow the cache up front
    for (std::size_t i = 0; i < j; ++i) {
        if (uniform) {
            // tau_b = t_{j+1} - t_i at lag j+1-i, tau_a at lag j-i
            accumulate_weighted(tail, state.mass_cache[j + 1 - i], state.mass_cache[j - i],
                                state.g_nodes[i]);
        } else {
            const auto wb = panel_masses(t_next - mesh[i]);
            const auto wa = panel_masses(t_next - mesh[i + 1]);
            accumulate_weighted(tail, wb, wa, state.g_nodes[i]);
        }
    }

    // newest panel weight: mass over [t_j, t_{j+1}]
    const std::vector<double> wn =
        uniform ? cached_masses(state, 1) : panel_masses(t_next - mesh[j]);

    const SpectralField& u_prev = state.trajectory.field(state.trajectory.size() - 1);
    PicardResult pr = picard_solve(u_prev, tail, wn, t_next, state.trajectory);

    state.trajectory.append(t_next, pr.value);
    state.g_nodes.push_back(evaluate_g(t_next, state.trajectory, pr.value));
    state.accepted = j + 1;

    // monitors
    StepRecord rec;
    rec.t = t_next;
    rec.norm_l2 = pr.value.l2_norm();
    rec.norm_half = sobolev_norm(op, 0.5, pr.value);
    rec.norm_three_quarter = sobolev_norm(op, 0.75, pr.value);
    rec.picard_iters = pr.iters;
    rec.picard_ratio = pr.last_ratio;
    rec.predicted_ratio = contraction_monitor(t_next - mesh[j], state.phi_sup_half);
    rec.contraction_M = contraction_monitor(t_next, state.phi_sup_half);
    state.max_monitor_M = std::max(state.max_monitor_M, rec.contraction_M);
    state.monitors.push_back(rec);

    const double monitored_norm =
        cfg_.half_norm_beta == 0.5 ? rec.norm_half : rec.norm_three_quarter;
    const double prev_norm =
        state.monitors.size() > 1
            ? (cfg_.half_norm_beta == 0.5 ? state.monitors[state.monitors.size() - 2].norm_half
                                          : state.monitors[state.monitors.size() - 2].norm_three_quarter)
            : monitored_norm;
    if (monitored_norm > cfg_.blowup_threshold ||
        (prev_norm > 0.0 && monitored_norm / prev_norm > cfg_.growth_factor_limit)) {
        state.verdict = Verdict::halted_blowup;
        state.t_max_estimate = t_next;
        return false;
    }

    if (cfg_.strict_ball) {
        // sup over the current window of ||u(t_now + theta) - phi(theta)||
        double sup = 0.0;
        const auto& traj = state.trajectory;
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const double th = traj.times()[i] - t_next;
            if (th < -traj.delay() - 1e-12) continue;
            SpectralField d = traj.field(i);
            d -= state.trajectory.interpolate(std::max(th, -traj.delay()));
            sup = std::max(sup, sobolev_norm(op, cfg_.half_norm_beta, d));
        }
        if (sup > cfg_.ball_radius) {
            state.ball_exceeded = true;
            throw std::runtime_error("strict ball mode: ||u_t - phi|| exceeded R");
        }
    }

    if (state.accepted + 1 == mesh.size()) {
        state.verdict = Verdict::completed;
        return false;
    }
    return true;
}

RunState MildSolver::run(const HistorySegment& phi) const {
    RunState st = start(phi);
    while (step(st)) {
    }
    return st;
}

RunState MildSolver::continue_run(RunState state, double t_end_new, int extra_steps) const {
    if (state.verdict == Verdict::halted_blowup) {
        throw std::runtime_error("continue_run: run halted on blow-up");
    }
    const double t_from = state.mesh.back();
    if (!(t_end_new > t_from) || extra_steps < 1) {
        throw std::invalid_argument("continue_run: need t_end_new > current horizon");
    }
    if (cfg_.mesh_gamma == 1.0) {
        // the lag-indexed mass cache requires one uniform step size throughout
        const double h_old = state.mesh[1] - state.mesh[0];
        const double h_new = (t_end_new - t_from) / extra_steps;
        if (std::abs(h_new - h_old) > 1e-12 * h_old) {
            throw std::invalid_argument(
                "continue_run: extension step must match the uniform mesh step");
        }
    }
    for (int i = 1; i <= extra_steps; ++i) {
        state.mesh.push_back(t_from + (t_end_new - t_from) * i / extra_steps);
    }
    state.verdict = Verdict::running;
    while (step(state)) {
    }
    return state;
}

RunState restart_reset(const MildSolver& solver, const RunState& state) {
    return solver.run(state.trajectory.shifted_tail());
}

} // namespace fracns::solver

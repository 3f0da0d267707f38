#pragma once

#include "fracns/delay_force.hpp"
#include "fracns/history.hpp"
#include "fracns/operator_family.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracns::solver {

struct SolverConfig {
    double alpha = 0.5;  // in (0,1]; 1 is the classical limit
    double t_end = 1.0;
    int n_steps = 100;
    double mesh_gamma = 1.0;  // nodes t_j = t_end (j/n)^gamma
    double picard_tol = 1e-12;
    int picard_max_iters = 50;
    double blowup_threshold = 1e6;
    double growth_factor_limit = std::numeric_limits<double>::infinity();
    double half_norm_beta = 0.5;  // 1/2 or 3/4: norm used by monitors/Picard
    double ball_radius = 1.0;     // R of the contraction estimate
    bool strict_ball = false;     // enforce ||u_t - phi||_Y <= R at runtime
    bool nonlinear = true;        // Fu term (forced off in synthetic mode)

    // empirical constants feeding the contraction monitor
    double c1 = 0.0;               // bilinear constant of the A^{-1/4} estimate
    double b3_half = 0.0;          // B3(alpha, 1/2)
    double b3_three_quarter = 0.0; // B3(alpha, 3/4)

    void validate() const;
    std::vector<double> mesh() const; // n_steps+1 nodes, t_0 = 0
};

struct StepRecord {
    double t = 0.0;
    double norm_l2 = 0.0;
    double norm_half = 0.0;           // D(A^{1/2})
    double norm_three_quarter = 0.0;  // D(A^{3/4})
    int picard_iters = 0;
    double picard_ratio = 0.0;     // last contraction ratio observed
    double predicted_ratio = 0.0;  // theory bound at panel scale
    double contraction_M = 0.0;    // monitor at horizon t
};

enum class Verdict { running, completed, halted_blowup };

class PicardDivergence : public std::runtime_error {
public:
    PicardDivergence(const std::string& what, double last_ratio)
        : std::runtime_error(what), last_ratio(last_ratio) {}
    double last_ratio;
};

struct RunState {
    HistorySegment trajectory;  // spans [-r, t_accepted]
    std::vector<double> mesh;   // solve nodes, mesh[0] = 0
    std::size_t accepted = 0;   // nodes beyond t=0 accepted so far
    std::vector<SpectralField> g_nodes; // cached F(u_i) + Pf(t_i, u_{t_i})
    SpectralField phi0;                 // datum at t = 0
    double phi_sup_half = 0.0;          // ||phi||_{Y_{1/2}}
    std::vector<StepRecord> monitors;
    Verdict verdict = Verdict::running;
    double t_max_estimate = std::numeric_limits<double>::quiet_NaN();
    double max_monitor_M = 0.0;
    bool ball_exceeded = false;
    // per-run kernel-mass cache for uniform meshes: [lag][mode]
    std::vector<std::vector<double>> mass_cache;
};

struct PicardResult {
    SpectralField value;
    int iters = 0;
    double last_ratio = 0.0;
    bool converged = false;
};

/// Mild-solution engine for  cD^alpha u + A u = Fu + Pf(t, u_t):
/// product integration of
///   u(t) = S(t) phi(0) + int_0^t T(t-s) [Fu + Pf](s) ds
/// with the exact per-panel kernel mass and left-endpoint panel values; the
/// newest panel is resolved implicitly by Picard iteration.
class MildSolver {
public:
    MildSolver(solops::OperatorFamily fam, SolverConfig cfg, DelayedForce force);

    const SolverConfig& config() const { return cfg_; }
    const solops::OperatorFamily& family() const { return fam_; }

    RunState start(const HistorySegment& phi) const;

    /// Advance one node; returns false when the run is over (completed/halted).
    bool step(RunState& state) const;

    /// Run from the datum to t_end (or the blow-up halt).
    RunState run(const HistorySegment& phi) const;

    /// Memory-retaining continuation: extend the mesh by `extra_steps` uniform
    /// panels up to t_end_new and keep stepping the same integral equation.
    RunState continue_run(RunState state, double t_end_new, int extra_steps) const;

    /// Contraction-estimate monitor at horizon t:
    ///   M = 2 (R + ||phi||) c1 B3(3/4) (4/alpha) t^{alpha/4}
    ///         + B3(1/2) L_f (2/alpha) t^{alpha/2}
    double contraction_monitor(double t, double phi_sup_half_norm) const;

    /// One-panel fixed point v -> tail + W (x) [F v + Pf(t_next, history+v)].
    PicardResult picard_solve(const SpectralField& candidate, const SpectralField& frozen_tail,
                              const std::vector<double>& panel_weight, double t_next,
                              const HistorySegment& base_history) const;

private:
    solops::OperatorFamily fam_;
    SolverConfig cfg_;
    DelayedForce force_;
    bool nonlinear_active_;

    std::vector<double> panel_masses(double tau) const; // kernel_mass per mode at lag tau
    const std::vector<double>& cached_masses(RunState& state, std::size_t lag) const;
    /// acc += (wb - wa) (x) g, the kernel mass of one past panel
    void accumulate_weighted(SpectralField& acc, const std::vector<double>& wb,
                             const std::vector<double>& wa, const SpectralField& g) const;
    SpectralField weighted(const std::vector<double>& w, const SpectralField& g) const;
    SpectralField evaluate_g(double t, const HistorySegment& h, const SpectralField& u_at_t) const;
};

/// Reset restart: a fresh solve whose datum is the trailing window of
/// `state`, with the Caputo memory of the earlier interval discarded and the
/// clock restarted at zero. Provided for continuation-mechanism studies; the
/// memory-retaining continue_run is the numerically consistent extension.
RunState restart_reset(const MildSolver& solver, const RunState& state);

} // namespace fracns::solver

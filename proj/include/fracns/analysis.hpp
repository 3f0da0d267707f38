#pragma once

#include "fracns/operator_family.hpp"
#include "fracns/solver.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fracns::analysis {

using spectral::SpectralField;
using spectral::SpectralGrid;
using spectral::SpectralOperator;

/// Result of the Holder-exponent regression on a trajectory.
struct RegularityReport {
    double beta = 0.0;
    double theta_measured = 0.0;   // log-log slope of sup-increments
    double theta_predicted = 0.0;  // alpha (1 - beta)
    double fit_r2 = 0.0;
    double h_min = 0.0;
    double h_max = 0.0;
};

/// Uniformly sampled trajectory on [t0, T], t0 > 0 (away from the T-symbol
/// singularity at 0). Computes sup-over-base-point increments
///   I(h) = sup_t || A^beta (u(t+h) - u(t)) ||
/// on a dyadic ladder of h and regresses log I on log h.
///
/// Throws std::invalid_argument for fewer than 32 samples and
/// std::runtime_error when all increments vanish (degenerate trajectory).
RegularityReport estimate_holder(const std::vector<double>& times,
                                 const std::vector<SpectralField>& fields,
                                 const SpectralOperator& op, double beta,
                                 double alpha_for_prediction);

/// Empirical constants of the operator and bilinear estimates with their
/// sampling provenance.
struct EstimatedConstants {
    double c1 = 0.0;  // ||A^{-1/4} Fu||           <= c1 ||A^{1/2}u||^2
    double c2 = 0.0;  // ||Fu||                    <= c2 ||A^{1/2}u|| ||A^{3/4}u||
    double c1_lip = 0.0; // Lipschitz variant of c1
    double c2_lip = 0.0; // Lipschitz variant of c2
    double B1 = 0.0, B2 = 0.0, B3 = 0.0, B4 = 0.0;
    double C1 = 0.0, C2 = 0.0, C3 = 0.0;
    double B3_three_quarter = 0.0; // B3 at beta = 3/4 (B3 itself is beta = 1/2)
    int dim = 0;
    int n_modes = 0;
    int n_samples = 0;
    double decay_gamma = 0.0;
    unsigned long long seed = 0;
};

/// Samples random divergence-free fields and reports the observed suprema of
/// the bilinear ratios (zero denominators excluded). Reproducible from seed.
EstimatedConstants estimate_bilinear_constants(const SpectralGrid& grid, int n_samples,
                                               double decay_gamma, unsigned long long seed);

/// Fills the operator-family constants (B1..B4, C1..C3) from the diagonal
/// bound audits on a log-spaced t-grid; merges into `base`.
EstimatedConstants estimate_operator_constants(const solops::OperatorFamily& fam,
                                               EstimatedConstants base = {});

/// Convergence-study outcome for one mesh ladder.
struct ConvergenceReport {
    std::vector<int> steps;
    std::vector<double> errors;  // vs the finest run, max over shared nodes
    double order = 0.0;          // least-squares slope
    bool exact = false;          // errors at reference precision
    void write_csv(std::ostream& os) const;
};

/// Runs the solver on each ladder level (each refining by 2x) plus a 4x
/// finer reference, and measures errors at the coarsest shared nodes in the
/// D(A^{1/2}) norm.
///
/// Throws std::invalid_argument for ladders shorter than 3 and
/// std::runtime_error if the reference run halts on blow-up.
ConvergenceReport run_convergence_study(const solops::OperatorFamily& fam,
                                        solver::SolverConfig base_cfg,
                                        const solver::DelayedForce& force,
                                        const solver::HistorySegment& phi,
                                        const std::vector<int>& ladder);

} // namespace fracns::analysis

#include "fracns/analysis.hpp"
#include "fracns/operator_audits.hpp"

#include <cmath>
#include <stdexcept>

namespace fracns::analysis {

EstimatedConstants estimate_bilinear_constants(const SpectralGrid& grid, int n_samples,
                                               double decay_gamma, unsigned long long seed) {
    if (n_samples < 100) {
        throw std::invalid_argument("estimate_bilinear_constants: need n_samples >= 100");
    }
    auto op = SpectralOperator::stokes(grid);
    EstimatedConstants est;
    est.dim = grid.dim();
    est.n_modes = grid.n_modes();
    est.n_samples = n_samples;
    est.decay_gamma = decay_gamma;
    est.seed = seed;

    SpectralField prev = SpectralField::zero(grid);
    SpectralField prev_f = SpectralField::zero(grid);
    bool have_prev = false;
    for (int s = 0; s < n_samples; ++s) {
        auto u = spectral::random_divergence_free_field(grid, decay_gamma, seed + 1000ull * s);
        spectral::dealias_inplace(u);
        const double n_half = spectral::sobolev_norm(op, 0.5, u);
        const double n_tq = spectral::sobolev_norm(op, 0.75, u);
        if (n_half <= 0.0 || n_tq <= 0.0) continue; // 0/0 samples excluded
        auto f = spectral::nonlinear_term(u);
        const double f_l2 = f.l2_norm();
        const double f_neg = spectral::sobolev_norm(op, -0.25, f);
        est.c1 = std::max(est.c1, f_neg / (n_half * n_half));
        est.c2 = std::max(est.c2, f_l2 / (n_half * n_tq));

        if (have_prev) {
            SpectralField du = u;
            du -= prev;
            const double d_half = spectral::sobolev_norm(op, 0.5, du);
            const double d_tq = spectral::sobolev_norm(op, 0.75, du);
            if (d_half > 0.0 && d_tq > 0.0) {
                SpectralField df = f;
                df -= prev_f;
                const double prev_half = spectral::sobolev_norm(op, 0.5, prev);
                const double lip1 = spectral::sobolev_norm(op, -0.25, df) /
                                    (d_half * (n_half + prev_half));
                const double lip2 =
                    df.l2_norm() / (d_half * n_tq + d_tq * prev_half);
                est.c1_lip = std::max(est.c1_lip, lip1);
                est.c2_lip = std::max(est.c2_lip, lip2);
            }
        }
        prev = std::move(u);
        prev_f = std::move(f);
        have_prev = true;
    }
    return est;
}

EstimatedConstants estimate_operator_constants(const solops::OperatorFamily& fam,
                                               EstimatedConstants base) {
    std::vector<double> t_grid;
    for (int i = 0; i < 40; ++i) {
        t_grid.push_back(1e-6 * std::pow(2.0 / 1e-6, i / 39.0));
    }
    auto rep = solops::audit_operator_bounds(fam, {0.5, 0.75}, t_grid);
    base.C1 = rep.empirical_constant("S_uniform", 0.0);
    base.C2 = rep.empirical_constant("AS", 0.0);
    base.B1 = rep.empirical_constant("T_uniform", 0.0);
    base.B2 = rep.empirical_constant("AT", 0.0);
    base.B3 = rep.empirical_constant("AbetaT", 0.5);
    base.B3_three_quarter = rep.empirical_constant("AbetaT", 0.75);
    base.C3 = std::max(rep.empirical_constant("AbetaS", 0.5),
                       rep.empirical_constant("AbetaS", 0.75));

    // uniform-operator-topology continuity quotient, sampled on pairs s < t
    const double a = fam.alpha();
    const double beta = 0.75;
    double b4 = 0.0;
    const auto& op = fam.op();
    for (double s = 0.1; s < 1.6; s += 0.3) {
        for (double t = s + 0.05; t < 2.0; t += 0.3) {
            double sup = 0.0;
            for (std::size_t m = 0; m < op.size(); ++m) {
                const double lam = op.eigenvalue(m);
                if (lam <= 0.0) continue;
                sup = std::max(sup, std::pow(lam, beta) *
                                        std::abs(fam.symbol_T(lam, t) - fam.symbol_T(lam, s)));
            }
            const double denom =
                std::abs(std::pow(s, a * (1.0 - beta)) - std::pow(t, a * (1.0 - beta)));
            if (denom > 1e-12) b4 = std::max(b4, sup / denom);
        }
    }
    base.B4 = b4;
    return base;
}

} // namespace fracns::analysis


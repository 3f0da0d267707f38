#pragma once

#include <vector>

namespace fracns::specfun {

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z.
///
/// The evaluation strategy switches among a truncated Taylor series
/// (small |z|), the divergent asymptotic expansion (large negative z,
/// accepted only when its truncation-error estimate clears the target
/// accuracy), and an integral representation on the negative axis
/// combined with the beta-reduction recursion
///   E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z
/// for the intermediate zone. Target relative accuracy 1e-10 on
/// z in [-1e6, 10] for alpha in (0, 1].
///
/// Throws std::domain_error for alpha <= 0 or beta <= 0 and
/// std::overflow_error when E grows beyond double range (large z > 0).
double mittag_leffler(double alpha, double beta, double z);

/// One-parameter form E_alpha(z) = E_{alpha,1}(z).
double mittag_leffler(double alpha, double z);

/// Fixed-(alpha,beta) evaluator that precomputes the reciprocal-Gamma
/// coefficient tables for the series and the asymptotic expansion.
/// Immutable after construction; safe for concurrent use.
class MittagLeffler {
public:
    MittagLeffler(double alpha, double beta);

    double operator()(double z) const;

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

private:
    double alpha_;
    double beta_;
    std::vector<long double> series_coeff_; // 1/Gamma(alpha n + beta)
    std::vector<double> asym_coeff_;        // 1/Gamma(beta - alpha k), k >= 1

    friend double detail_ml_eval(const MittagLeffler& ml, double z);
};

} // namespace fracns::specfun

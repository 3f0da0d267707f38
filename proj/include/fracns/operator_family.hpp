#pragma once

#include "fracns/mittag_leffler.hpp"
#include "fracns/spectral.hpp"

namespace fracns::solops {

using spectral::SpectralField;
using spectral::SpectralOperator;

/// Solution-operator pair (S_alpha, T_alpha) of the fractional evolution,
/// realized diagonally on the operator's spectrum:
///   S_alpha(t): multiply by E_alpha(-lambda t^alpha)
///   T_alpha(t): multiply by t^{alpha-1} E_{alpha,alpha}(-lambda t^alpha)
/// alpha = 1 is admitted as the classical (semigroup) limit, where both
/// symbols collapse to exp(-lambda t). Immutable after construction.
class OperatorFamily {
public:
    OperatorFamily(double alpha, SpectralOperator op);

    double alpha() const { return alpha_; }
    const SpectralOperator& op() const { return op_; }

    /// E_alpha(-lambda t^alpha); t = 0 gives 1 (strong limit).
    double symbol_S(double lambda, double t) const;

    /// t^{alpha-1} E_{alpha,alpha}(-lambda t^alpha); undefined at t = 0.
    double symbol_T(double lambda, double t) const;

    /// int_0^tau s^{alpha-1} E_{alpha,alpha}(-lambda s^alpha) ds
    ///   = tau^alpha E_{alpha,alpha+1}(-lambda tau^alpha)
    ///   = (1 - E_alpha(-lambda tau^alpha)) / lambda.
    double kernel_mass(double lambda, double tau) const;

    SpectralField apply_S(double t, const SpectralField& u) const;
    SpectralField apply_T(double t, const SpectralField& u) const;

private:
    double alpha_;
    SpectralOperator op_;
    specfun::MittagLeffler ml_1_;   // E_{alpha,1}
    specfun::MittagLeffler ml_a_;   // E_{alpha,alpha}
    specfun::MittagLeffler ml_a1_;  // E_{alpha,alpha+1}
};

} // namespace fracns::solops

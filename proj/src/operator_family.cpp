#include "fracns/operator_family.hpp"

#include <cmath>
#include <stdexcept>

namespace fracns::solops {

OperatorFamily::OperatorFamily(double alpha, SpectralOperator op)
    : alpha_(alpha),
      op_(std::move(op)),
      ml_1_(alpha, 1.0),
      ml_a_(alpha, alpha),
      ml_a1_(alpha, alpha + 1.0) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::invalid_argument("OperatorFamily: alpha must lie in (0,1]");
    }
}

double OperatorFamily::symbol_S(double lambda, double t) const {
    if (t < 0.0) throw std::domain_error("symbol_S: t must be >= 0");
    if (t == 0.0) return 1.0;
    if (alpha_ == 1.0) return std::exp(-lambda * t);
    return ml_1_(-lambda * std::pow(t, alpha_));
}

double OperatorFamily::symbol_T(double lambda, double t) const {
    if (!(t > 0.0)) {
        throw std::domain_error("symbol_T: undefined at t <= 0 (integrate across panels instead)");
    }
    if (alpha_ == 1.0) return std::exp(-lambda * t);
    const double ta = std::pow(t, alpha_);
    return std::pow(t, alpha_ - 1.0) * ml_a_(-lambda * ta);
}

double OperatorFamily::kernel_mass(double lambda, double tau) const {
    if (tau < 0.0) throw std::domain_error("kernel_mass: tau must be >= 0");
    if (tau == 0.0) return 0.0;
    const double ta = std::pow(tau, alpha_);
    const double x = lambda * ta;
    if (x < 1e-4) {
        // series form avoids the 1 - E cancellation near 0
        return ta * ml_a1_(-x);
    }
    const double e = (alpha_ == 1.0) ? std::exp(-x) : ml_1_(-x);
    return (1.0 - e) / lambda;
}

namespace {
template <typename Symbol>
SpectralField apply_diagonal(const SpectralOperator& op, const SpectralField& u, Symbol&& sym) {
    if (!op.compatible_with(u)) {
        throw std::invalid_argument("OperatorFamily: operator/field mismatch");
    }
    SpectralField out = u;
    for (std::size_t m = 0; m < u.modes(); ++m) {
        const double lam = op.eigenvalue(m);
        const double f = (lam > 0.0) ? sym(lam) : 0.0; // mean mode stays removed
        for (int c = 0; c < u.components(); ++c) out.at(c, m) *= f;
    }
    return out;
}
} // namespace

SpectralField OperatorFamily::apply_S(double t, const SpectralField& u) const {
    if (t == 0.0) {
        SpectralField out = u;
        return out; // strong limit S_alpha(0) = I
    }
    return apply_diagonal(op_, u, [&](double lam) { return symbol_S(lam, t); });
}

SpectralField OperatorFamily::apply_T(double t, const SpectralField& u) const {
    return apply_diagonal(op_, u, [&](double lam) { return symbol_T(lam, t); });
}

} // namespace fracns::solops

#include "fracns/gammafn.hpp"

#include <cmath>
#include <stdexcept>

namespace fracns::specfun {

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("gamma_fn: argument must be positive");
    }
    return std::tgamma(x);
}

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("log_gamma: argument must be positive");
    }
    return std::lgamma(x);
}

double reciprocal_gamma(double x) {
    if (x > 0.5) {
        if (x > 171.0) {
            // Gamma overflows double; its reciprocal underflows cleanly.
            return std::exp(-std::lgamma(x));
        }
        return 1.0 / std::tgamma(x);
    }
    // Reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi.
    // sin(pi x) vanishes exactly at the poles, so no special-casing needed,
    // but reduce the argument first so sin is evaluated near 0.
    const double n = std::floor(x);
    const double frac = x - n; // in [0,1)
    const double s = std::sin(M_PI * frac) * (std::fmod(n, 2.0) == 0.0 ? 1.0 : -1.0);
    if (s == 0.0) return 0.0; // pole of Gamma
    return s * std::exp(std::lgamma(1.0 - x)) / M_PI;
}

long double log_gamma_l(long double x) { return lgammal(x); }

long double reciprocal_gamma_l(long double x) {
    if (x > 0.5L) {
        return expl(-lgammal(x));
    }
    const long double n = floorl(x);
    const long double frac = x - n;
    const long double s = sinl(M_PI * frac) * (fmodl(n, 2.0L) == 0.0L ? 1.0L : -1.0L);
    if (s == 0.0L) return 0.0L;
    return s * expl(lgammal(1.0L - x)) / M_PI;
}

} // namespace fracns::specfun

#pragma once

namespace fracns::specfun {

/// Gamma function on the positive axis. Throws std::domain_error for x <= 0.
double gamma_fn(double x);

/// 1/Gamma(x) for any real x; exactly 0 at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x);

/// log|Gamma(x)|, x > 0.
double log_gamma(double x);

/// Extended-precision variants used by the series summations.
long double reciprocal_gamma_l(long double x);
long double log_gamma_l(long double x);

} // namespace fracns::specfun

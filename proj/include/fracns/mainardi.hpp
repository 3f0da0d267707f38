#pragma once

#include "fracns/fractional_calculus.hpp"

namespace fracns::specfun {

/// Mainardi (Wright-type) function
///   M_alpha(t) = (1/pi) sum_{n>=1} (-t)^{n-1}/(n-1)! Gamma(alpha n) sin(pi alpha n),
/// the probability density subordinating S_alpha to the classical semigroup.
///
/// Small t: extended-precision alternating series (Kahan-compensated),
/// guarded by a cancellation estimate. Large t: steepest-descent quadrature
/// of the Hankel representation (1/2pi i) int e^{s - t s^alpha} s^{alpha-1} ds
/// through the saddle s* = (alpha t)^{1/(1-alpha)}. alpha = 1/2 falls back to
/// the closed form exp(-t^2/4)/sqrt(pi). Values below double range return 0.
///
/// Throws std::domain_error for t < 0.
double mainardi(FractionalOrder alpha, double t);

/// Moment integral int_0^Smax s^q M_alpha(s) ds by adaptive quadrature with
/// an exponential tail bound (Smax <= 20). The identity
/// Gamma(q+1)/Gamma(alpha q + 1) is the test oracle, not the implementation.
///
/// Throws std::domain_error for q <= -1 and std::runtime_error when the
/// tail estimate exceeds the tolerance.
double mainardi_moment(FractionalOrder alpha, double q);

} // namespace fracns::specfun

#pragma once

#include "fracns/history.hpp"

#include <functional>
#include <string>
#include <vector>

namespace fracns::solver {

/// Delayed external force f(t, u_t), Leray-projected on evaluation.
/// Kinds:
///   none                   Pf = 0
///   point_delay            Pf = kappa P u(t - r)
///   distributed_delay      Pf = P int_{-r}^0 w(theta) u(t + theta) dtheta
///   modulated_point_delay  Pf = omega(t) kappa P u(t - r)
/// lipschitz_L and omega_p are declared metadata, recorded and used by the
/// contraction monitor, never inferred from samples.
struct DelayedForce {
    enum class Kind { none, point_delay, distributed_delay, modulated_point_delay };

    Kind kind = Kind::none;
    double kappa = 0.0;
    std::vector<double> kernel_theta;   // increasing, within [-r, 0]
    std::vector<double> kernel_weights; // w(theta) samples
    std::function<double(double)> omega;
    double omega_p = 1e300; // declared L^p_loc exponent (bounded omega: any p)
    double lipschitz_L = 0.0;

    static DelayedForce none_force();
    static DelayedForce point(double kappa);
    static DelayedForce distributed(std::vector<double> theta, std::vector<double> weights);
    static DelayedForce modulated_point(double kappa, std::function<double(double)> omega,
                                        double omega_p);

    bool is_active() const { return kind != Kind::none; }

    /// true when evaluation at time t reads the trajectory after `t_known`
    /// (the fixed-point iteration then has to re-evaluate the force)
    bool depends_beyond(double t, double t_known, double delay_r) const;
};

/// Hypothesis checks on the declared exponent: existence runs need
/// p > 2/alpha, regularity runs p > 4/alpha. Returns warning strings.
std::vector<std::string> validate_force(const DelayedForce& f, double alpha,
                                        bool regularity_run);

namespace detail {
template <class History>
SpectralField force_raw(const DelayedForce& f, double t, const History& h) {
    switch (f.kind) {
        case DelayedForce::Kind::none:
            break;
        case DelayedForce::Kind::point_delay: {
            SpectralField u = h.interpolate(t - h.delay());
            u *= f.kappa;
            return u;
        }
        case DelayedForce::Kind::modulated_point_delay: {
            SpectralField u = h.interpolate(t - h.delay());
            u *= f.kappa * f.omega(t);
            return u;
        }
        case DelayedForce::Kind::distributed_delay: {
            // trapezoid over the kernel sample points
            SpectralField acc = h.interpolate(t + f.kernel_theta.front());
            acc *= 0.0;
            for (std::size_t i = 0; i + 1 < f.kernel_theta.size(); ++i) {
                const double dth = f.kernel_theta[i + 1] - f.kernel_theta[i];
                SpectralField a = h.interpolate(t + f.kernel_theta[i]);
                a *= 0.5 * dth * f.kernel_weights[i];
                acc += a;
                SpectralField b = h.interpolate(t + f.kernel_theta[i + 1]);
                b *= 0.5 * dth * f.kernel_weights[i + 1];
                acc += b;
            }
            return acc;
        }
    }
    SpectralField z = h.interpolate(h.t_now());
    z *= 0.0;
    return z;
}
} // namespace detail

/// Pf(t, u_t): the raw delayed force followed by the Leray projection.
template <class History>
SpectralField evaluate_force(const DelayedForce& f, double t, const History& h) {
    SpectralField out = detail::force_raw(f, t, h);
    spectral::leray_project_inplace(out);
    return out;
}

} // namespace fracns::solver

#include "fracns/delay_force.hpp"

#include <cmath>
#include <stdexcept>

namespace fracns::solver {

DelayedForce DelayedForce::none_force() { return DelayedForce{}; }

DelayedForce DelayedForce::point(double kappa) {
    DelayedForce f;
    f.kind = Kind::point_delay;
    f.kappa = kappa;
    f.lipschitz_L = std::abs(kappa);
    return f;
}

DelayedForce DelayedForce::distributed(std::vector<double> theta, std::vector<double> weights) {
    if (theta.size() < 2 || theta.size() != weights.size()) {
        throw std::invalid_argument("DelayedForce: kernel needs matching theta/weights, len >= 2");
    }
    for (std::size_t i = 1; i < theta.size(); ++i) {
        if (!(theta[i] > theta[i - 1])) {
            throw std::invalid_argument("DelayedForce: kernel thetas must increase");
        }
    }
    if (theta.front() < -1e300 || theta.back() > 1e-12) {
        throw std::invalid_argument("DelayedForce: kernel support must lie in [-r, 0]");
    }
    DelayedForce f;
    f.kind = Kind::distributed_delay;
    double l1 = 0.0;
    for (std::size_t i = 0; i + 1 < theta.size(); ++i) {
        l1 += 0.5 * (theta[i + 1] - theta[i]) *
              (std::abs(weights[i]) + std::abs(weights[i + 1]));
    }
    f.lipschitz_L = l1; // |int w| <= ||w||_{L1} sup-norm bound
    f.kernel_theta = std::move(theta);
    f.kernel_weights = std::move(weights);
    return f;
}

DelayedForce DelayedForce::modulated_point(double kappa, std::function<double(double)> omega,
                                           double omega_p) {
    if (!omega) throw std::invalid_argument("DelayedForce: modulation callable required");
    DelayedForce f;
    f.kind = Kind::modulated_point_delay;
    f.kappa = kappa;
    f.omega = std::move(omega);
    f.omega_p = omega_p;
    f.lipschitz_L = std::abs(kappa); // times sup|omega| on the horizon, declared by caller
    return f;
}

bool DelayedForce::depends_beyond(double t, double t_known, double delay_r) const {
    switch (kind) {
        case Kind::none:
            return false;
        case Kind::point_delay:
        case Kind::modulated_point_delay:
            return t - delay_r > t_known + 1e-14;
        case Kind::distributed_delay:
            return t + kernel_theta.back() > t_known + 1e-14;
    }
    return false;
}

std::vector<std::string> validate_force(const DelayedForce& f, double alpha,
                                        bool regularity_run) {
    std::vector<std::string> warnings;
    if (!f.is_active()) return warnings;
    const double need = (regularity_run ? 4.0 : 2.0) / alpha;
    if (!(f.omega_p > need)) {
        warnings.push_back("declared omega exponent p = " + std::to_string(f.omega_p) +
                           " does not satisfy p > " + std::to_string(need) +
                           (regularity_run ? " (regularity hypothesis)" : " (existence hypothesis)"));
    }
    if (f.lipschitz_L < 0.0) {
        warnings.push_back("declared Lipschitz constant is negative");
    }
    return warnings;
}

} // namespace fracns::solver

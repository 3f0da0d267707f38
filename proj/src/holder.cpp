#include "fracns/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace fracns::analysis {

RegularityReport estimate_holder(const std::vector<double>& times,
                                 const std::vector<SpectralField>& fields,
                                 const SpectralOperator& op, double beta,
                                 double alpha_for_prediction) {
    if (times.size() < 32 || times.size() != fields.size()) {
        throw std::invalid_argument("estimate_holder: need >= 32 matched samples");
    }
    const std::size_t n = times.size();
    const double dt = times[1] - times[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * std::max(1.0, dt)) {
            throw std::invalid_argument("estimate_holder: uniform sampling required");
        }
    }

    // dyadic ladder of lags: 1, 2, 4, ... up to an n/4 span
    std::vector<double> log_h, log_inc;
    for (std::size_t lag = 1; lag <= n / 4; lag *= 2) {
        double sup = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) {
            SpectralField d = fields[i + lag];
            d -= fields[i];
            sup = std::max(sup, spectral::sobolev_norm(op, beta, d));
        }
        if (sup > 1e-14) {
            log_h.push_back(std::log(dt * static_cast<double>(lag)));
            log_inc.push_back(std::log(sup));
        }
    }
    if (log_h.size() < 3) {
        throw std::runtime_error("estimate_holder: degenerate trajectory (increments below 1e-14)");
    }

    // least squares with R^2
    const double m = static_cast<double>(log_h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < log_h.size(); ++i) {
        sx += log_h[i]; sy += log_inc[i];
        sxx += log_h[i] * log_h[i];
        sxy += log_h[i] * log_inc[i];
        syy += log_inc[i] * log_inc[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double ybar = sy / m;
    const double intercept = ybar - slope * sx / m;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < log_h.size(); ++i) {
        const double fit = intercept + slope * log_h[i];
        ss_res += (log_inc[i] - fit) * (log_inc[i] - fit);
        ss_tot += (log_inc[i] - ybar) * (log_inc[i] - ybar);
    }

    RegularityReport rep;
    rep.beta = beta;
    rep.theta_measured = slope;
    rep.theta_predicted = alpha_for_prediction * (1.0 - beta);
    rep.fit_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    rep.h_min = std::exp(log_h.front());
    rep.h_max = std::exp(log_h.back());
    return rep;
}

} // namespace fracns::analysis

#include "fracns/fractional_calculus.hpp"
#include "fracns/gammafn.hpp"

#include <cmath>
#include <stdexcept>

namespace fracns::specfun {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("FractionalOrder: alpha must lie strictly in (0,1)");
    }
}

SampledFunction::SampledFunction(std::vector<double> g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    validate();
}

void SampledFunction::validate() const {
    if (grid.size() < 2 || grid.size() != values.size()) {
        throw std::invalid_argument("SampledFunction: need matching grid/values of length >= 2");
    }
    if (grid.front() != 0.0) {
        throw std::invalid_argument("SampledFunction: grid must start at 0");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("SampledFunction: grid must be strictly increasing");
        }
    }
}

double power_difference(double a, double b, double p) {
    if (a == 0.0) return std::pow(b, p);
    // b^p - a^p = a^p expm1(p log1p((b-a)/a))
    return std::pow(a, p) * std::expm1(p * std::log1p((b - a) / a));
}

SampledFunction rl_integral(FractionalOrder alpha, const SampledFunction& f) {
    f.validate();
    const double a = alpha.value();
    const std::size_t n = f.size();
    SampledFunction out;
    out.grid = f.grid;
    out.values.assign(n, 0.0);

    const double inv_gamma = reciprocal_gamma(a);
    for (std::size_t j = 1; j < n; ++j) {
        const double tj = f.grid[j];
        double acc = 0.0;
        for (std::size_t i = 0; i < j; ++i) {
            const double ta = tj - f.grid[i + 1]; // near end of panel
            const double tb = tj - f.grid[i];     // far end
            const double h = tb - ta;
            const double dP = power_difference(ta, tb, a);       // tb^a - ta^a
            const double dQ = power_difference(ta, tb, a + 1.0); // tb^{a+1} - ta^{a+1}
            // s in [t_i, t_{i+1}] maps to tau = tj - s in [ta, tb]; the hat of
            // f[i] carries (tau - ta)/h, the hat of f[i+1] carries (tb - tau)/h
            const double w_i = (dQ / (a + 1.0) - ta * dP / a) / h;
            const double w_ip1 = (tb * dP / a - dQ / (a + 1.0)) / h;
            acc += f.values[i] * w_i + f.values[i + 1] * w_ip1;
        }
        out.values[j] = acc * inv_gamma;
    }
    return out;
}

SampledFunction caputo_derivative(FractionalOrder alpha, const SampledFunction& f) {
    f.validate();
    const double a = alpha.value();
    const std::size_t n = f.size();
    SampledFunction out;
    out.grid = f.grid;
    out.values.assign(n, 0.0);

    const double inv_gamma2 = reciprocal_gamma(2.0 - a);
    for (std::size_t j = 1; j < n; ++j) {
        const double tj = f.grid[j];
        double acc = 0.0;
        for (std::size_t i = 0; i < j; ++i) {
            const double slope = (f.values[i + 1] - f.values[i]) / (f.grid[i + 1] - f.grid[i]);
            const double ta = tj - f.grid[i + 1];
            const double tb = tj - f.grid[i];
            acc += slope * power_difference(ta, tb, 1.0 - a);
        }
        out.values[j] = acc * inv_gamma2;
    }
    return out;
}

namespace {
template <typename Op>
std::vector<std::complex<double>> complex_via_parts(specfun::FractionalOrder alpha,
                                                    const std::vector<double>& grid,
                                                    const std::vector<std::complex<double>>& values,
                                                    Op&& op) {
    std::vector<double> re(values.size()), im(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        re[i] = values[i].real();
        im[i] = values[i].imag();
    }
    auto r = op(alpha, specfun::SampledFunction(grid, std::move(re)));
    auto j = op(alpha, specfun::SampledFunction(grid, std::move(im)));
    std::vector<std::complex<double>> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = {r.values[i], j.values[i]};
    return out;
}
} // namespace

std::vector<std::complex<double>> rl_integral(FractionalOrder alpha,
                                              const std::vector<double>& grid,
                                              const std::vector<std::complex<double>>& values) {
    return complex_via_parts(alpha, grid, values,
                             [](FractionalOrder a, const SampledFunction& f) {
                                 return rl_integral(a, f);
                             });
}

std::vector<std::complex<double>> caputo_derivative(
    FractionalOrder alpha, const std::vector<double>& grid,
    const std::vector<std::complex<double>>& values) {
    return complex_via_parts(alpha, grid, values,
                             [](FractionalOrder a, const SampledFunction& f) {
                                 return caputo_derivative(a, f);
                             });
}

} // namespace fracns::specfun


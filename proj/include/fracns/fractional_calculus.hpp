#pragma once

#include <complex>
#include <vector>

namespace fracns::specfun {

/// Caputo/Riemann-Liouville order, restricted to the open interval (0,1).
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);
    double value() const { return alpha_; }

private:
    double alpha_;
};

/// Real-valued samples on a strictly increasing grid starting at 0.
struct SampledFunction {
    std::vector<double> grid;
    std::vector<double> values;

    SampledFunction() = default;
    SampledFunction(std::vector<double> g, std::vector<double> v);

    std::size_t size() const { return grid.size(); }
    void validate() const;
};

/// Riemann-Liouville integral J^alpha f on the sample grid.
///
/// Product-trapezoidal quadrature: the kernel t^{alpha-1}/Gamma(alpha) is
/// integrated exactly against the piecewise-linear reconstruction of f,
/// so the rule is exact whenever f itself is piecewise linear.
SampledFunction rl_integral(FractionalOrder alpha, const SampledFunction& f);

/// Caputo derivative via the L1 scheme (piecewise-linear f, exact kernel
/// integrals of (t-s)^{-alpha}); the discrete form of d/dt J^{1-alpha}(f - f(0)).
SampledFunction caputo_derivative(FractionalOrder alpha, const SampledFunction& f);

/// b^p - a^p for 0 <= a <= b, evaluated without cancellation when b-a << a.
double power_difference(double a, double b, double p);

/// Complex-sample variants (same quadrature weights, applied per part).
std::vector<std::complex<double>> rl_integral(FractionalOrder alpha,
                                              const std::vector<double>& grid,
                                              const std::vector<std::complex<double>>& values);
std::vector<std::complex<double>> caputo_derivative(
    FractionalOrder alpha, const std::vector<double>& grid,
    const std::vector<std::complex<double>>& values);

} // namespace fracns::specfun

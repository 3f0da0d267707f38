#include "fracns/spectral.hpp"

#include <cmath>
#include <random>

namespace fracns::spectral {

SpectralField random_divergence_free_field(const SpectralGrid& grid, double gamma,
                                           unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField u = SpectralField::zero(grid);
    const int n = grid.n_modes();
    const int d = grid.dim();

    for (std::size_t m = 0; m < grid.mode_count(); ++m) {
        const auto k = grid.wavevector(m);
        // draw only on the lexicographically positive half-space; skip the
        // Nyquist planes (no conjugate partner inside the truncation)
        bool nyquist = false, zero_mode = true, positive = false;
        for (int c = 0; c < d; ++c) {
            const int kv = k[static_cast<std::size_t>(c)];
            if (kv == n / 2) nyquist = true;
            if (kv != 0) {
                if (zero_mode) positive = kv > 0; // first nonzero axis decides
                zero_mode = false;
            }
        }
        if (nyquist || zero_mode || !positive) continue;

        const double k2 = static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1] +
                          static_cast<double>(k[2]) * k[2];
        const double amp = std::pow(k2, -gamma / 2.0);
        std::array<int, 3> mk{-k[0], -k[1], -k[2]};
        const std::size_t mm = grid.index_of(mk);
        for (int c = 0; c < d; ++c) {
            const Complex v(amp * gauss(rng), amp * gauss(rng));
            u.at(c, m) = v;
            u.at(c, mm) = std::conj(v);
        }
    }
    leray_project_inplace(u);
    return u;
}

} // namespace fracns::spectral

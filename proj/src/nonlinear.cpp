#include "fracns/spectral.hpp"
#include "fracns/fft_engine.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace fracns::spectral {

namespace {

// one engine per (dim, n), built lazily
const FftEngine& engine_for(int dim, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<FftEngine>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{dim, n}];
    if (!slot) slot = std::make_unique<FftEngine>(dim, n);
    return *slot;
}

} // namespace

SpectralField nonlinear_term(const SpectralField& u) {
    if (u.is_synthetic()) {
        throw std::invalid_argument("nonlinear_term: undefined for synthetic diagonal fields");
    }
    const auto& grid = *u.grid();
    const int d = grid.dim();
    const int n = grid.n_modes();
    const std::size_t modes = grid.mode_count();
    const auto& fft = engine_for(d, n);

    // velocity components in physical space
    std::vector<std::vector<Complex>> vel(static_cast<std::size_t>(d)),
        adv(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) {
        vel[static_cast<std::size_t>(c)].resize(modes);
        fft.to_physical(&u.at(c, 0), vel[static_cast<std::size_t>(c)].data());
        adv[static_cast<std::size_t>(c)].assign(modes, Complex(0.0, 0.0));
    }

    // accumulate u_j d_j u_c
    std::vector<Complex> deriv_spec(modes), deriv_phys(modes);
    for (int c = 0; c < d; ++c) {
        for (int j = 0; j < d; ++j) {
            for (std::size_t m = 0; m < modes; ++m) {
                const auto k = grid.wavevector(m);
                deriv_spec[m] = Complex(0.0, static_cast<double>(k[static_cast<std::size_t>(j)])) *
                                u.at(c, m);
            }
            fft.to_physical(deriv_spec.data(), deriv_phys.data());
            auto& out = adv[static_cast<std::size_t>(c)];
            const auto& uj = vel[static_cast<std::size_t>(j)];
            for (std::size_t m = 0; m < modes; ++m) out[m] += uj[m] * deriv_phys[m];
        }
    }

    SpectralField result = SpectralField::zero(grid);
    for (int c = 0; c < d; ++c) {
        fft.to_spectral(adv[static_cast<std::size_t>(c)].data(), &result.at(c, 0));
    }
    dealias_inplace(result);
    leray_project_inplace(result);
    result *= -1.0;
    return result;
}

} // namespace fracns::spectral

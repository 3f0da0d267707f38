#include "fracns/fft_engine.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace fracns::spectral {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

FftEngine::FftEngine(int dim, int n) : dim_(dim), n_(n) {
    total_ = 1;
    for (int d = 0; d < dim_; ++d) total_ *= static_cast<std::size_t>(n_);

    // lexicographic k in {-n/2+1,...,n/2} maps to FFT index (k mod n)
    SpectralGrid grid(dim_, n_, 1.0);
    map_.resize(total_);
    for (std::size_t m = 0; m < total_; ++m) {
        const auto k = grid.wavevector(m);
        std::size_t flat = 0;
        for (int d = 0; d < dim_; ++d) {
            const int kv = k[static_cast<std::size_t>(d)];
            const int idx = (kv % n_ + n_) % n_;
            flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx);
        }
        map_[m] = flat;
    }

    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_complex* buf = fftw_alloc_complex(total_);
    if (!buf) throw std::bad_alloc();
    int dims[3] = {n_, n_, n_};
    plan_bwd_ = fftw_plan_dft(dim_, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    plan_fwd_ = fftw_plan_dft(dim_, dims, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_free(buf);
    if (!plan_bwd_ || !plan_fwd_) throw std::runtime_error("FftEngine: plan creation failed");
}

FftEngine::~FftEngine() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void FftEngine::to_physical(const Complex* lex_coeffs, Complex* phys) const {
    std::fill(phys, phys + total_, Complex(0.0, 0.0));
    for (std::size_t m = 0; m < total_; ++m) phys[map_[m]] = lex_coeffs[m];
    fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_),
                     reinterpret_cast<fftw_complex*>(phys),
                     reinterpret_cast<fftw_complex*>(phys));
}

void FftEngine::to_spectral(const Complex* phys, Complex* lex_coeffs) const {
    std::vector<Complex> tmp(phys, phys + total_);
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_),
                     reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(tmp.data()));
    const double scale = 1.0 / static_cast<double>(total_);
    for (std::size_t m = 0; m < total_; ++m) lex_coeffs[m] = tmp[map_[m]] * scale;
}

} // namespace fracns::spectral

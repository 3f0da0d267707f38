#pragma once

#include "fracns/spectral.hpp"

#include <vector>

namespace fracns::spectral {

/// Thin FFTW wrapper for the full-cube complex transforms used by the
/// pseudo-spectral nonlinearity. Layout: row-major n^dim cube in FFTW
/// frequency order; conversion from/to the lexicographic truncation is
/// handled here. Plan creation is serialized internally (FFTW requirement);
/// execution on distinct buffers is concurrency-safe.
class FftEngine {
public:
    FftEngine(int dim, int n);
    ~FftEngine();
    FftEngine(const FftEngine&) = delete;
    FftEngine& operator=(const FftEngine&) = delete;

    std::size_t size() const { return total_; }

    /// spectral (lexicographic truncation) -> physical values
    void to_physical(const Complex* lex_coeffs, Complex* phys) const;
    /// physical values -> spectral (lexicographic), with 1/N normalization
    void to_spectral(const Complex* phys, Complex* lex_coeffs) const;

    /// index mapping lexicographic mode -> FFT cube position
    const std::vector<std::size_t>& lex_to_fft() const { return map_; }

private:
    int dim_;
    int n_;
    std::size_t total_;
    std::vector<std::size_t> map_;
    void* plan_fwd_;  // fftw_plan
    void* plan_bwd_;
};

} // namespace fracns::spectral

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace fracns::spectral {

using Complex = std::complex<double>;

/// Periodic torus [0,2pi)^dim discretized by n_modes Fourier modes per axis,
/// wavevectors in the symmetric truncation {-n/2+1, ..., n/2}.
class SpectralGrid {
public:
    SpectralGrid(int dim, int n_modes, double nu = 1.0);

    int dim() const { return dim_; }
    int n_modes() const { return n_; }
    double viscosity() const { return nu_; }
    std::size_t mode_count() const { return modes_; }

    /// Wavevector of the flat lexicographic index (unused axes are 0).
    std::array<int, 3> wavevector(std::size_t flat) const;
    std::size_t index_of(const std::array<int, 3>& k) const;

    /// nu |k|^2; zero exactly at the mean mode.
    double eigenvalue(std::size_t flat) const;

    bool operator==(const SpectralGrid& o) const {
        return dim_ == o.dim_ && n_ == o.n_ && nu_ == o.nu_;
    }

private:
    int dim_;
    int n_;
    double nu_;
    std::size_t modes_;
};

/// Velocity field as truncated Fourier coefficients, one complex vector per
/// wavevector. Grid-based fields are divergence-free with Hermitian symmetry
/// and zero mean; synthetic fields are bare coefficient vectors used by the
/// diagonal (no-nonlinearity) operator mode.
class SpectralField {
public:
    static SpectralField zero(const SpectralGrid& grid);
    static SpectralField synthetic(std::size_t n_modes);

    bool is_synthetic() const { return !grid_.has_value(); }
    const std::optional<SpectralGrid>& grid() const { return grid_; }
    int components() const { return comps_; }
    std::size_t modes() const { return modes_; }

    Complex& at(int c, std::size_t m) { return a_[static_cast<std::size_t>(c) * modes_ + m]; }
    const Complex& at(int c, std::size_t m) const {
        return a_[static_cast<std::size_t>(c) * modes_ + m];
    }
    std::vector<Complex>& data() { return a_; }
    const std::vector<Complex>& data() const { return a_; }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);
    /// this += s * o
    void axpy(double s, const SpectralField& o);

    double l2_norm() const;
    double max_divergence() const;        // max_k |k . u(k)| (0 for synthetic)
    double max_hermitian_defect() const;  // max_k |u(-k) - conj(u(k))|

private:
    SpectralField() = default;
    std::optional<SpectralGrid> grid_;
    int comps_ = 1;
    std::size_t modes_ = 0;
    std::vector<Complex> a_;
};

/// Diagonal positive operator: the Stokes surrogate nu|k|^2 on a grid, or a
/// user-supplied synthetic spectrum. The mean mode of the grid variant is
/// excluded from the spectrum (its eigenvalue slot is the 0 sentinel).
class SpectralOperator {
public:
    static SpectralOperator stokes(const SpectralGrid& grid);
    static SpectralOperator synthetic(std::vector<double> eigenvalues);

    const std::optional<SpectralGrid>& grid() const { return grid_; }
    std::size_t size() const { return eig_.size(); }
    double eigenvalue(std::size_t m) const { return eig_[m]; }
    double min_eigenvalue() const; // over the positive spectrum
    double max_eigenvalue() const;

    bool compatible_with(const SpectralField& u) const;

private:
    SpectralOperator() = default;
    std::optional<SpectralGrid> grid_;
    std::vector<double> eig_;
};

/// Leray/Helmholtz projection applied to raw per-mode vectors:
/// u(k) -> (I - k k^T/|k|^2) u(k), mean mode zeroed.
/// Throws std::invalid_argument if the raw data violate Hermitian symmetry
/// beyond `symmetry_tol` relative to the field norm.
SpectralField leray_project(const SpectralGrid& grid, const std::vector<Complex>& raw,
                            double symmetry_tol = 1e-10);

/// In-place projection of an already-constructed field (idempotent).
void leray_project_inplace(SpectralField& u);

/// Coefficient-wise multiplication by lambda_k^beta. The mean mode maps to 0.
SpectralField apply_fractional_power(const SpectralOperator& op, double beta,
                                     const SpectralField& u);

/// ( sum_k lambda_k^{2 beta} |u(k)|^2 )^{1/2}; beta = 0 is the plain 2-norm.
double sobolev_norm(const SpectralOperator& op, double beta, const SpectralField& u);

/// Fu = -P(u . grad)u, computed pseudo-spectrally with 2/3-rule dealiasing.
/// Requires a grid-based field.
SpectralField nonlinear_term(const SpectralField& u);

/// 2/3-rule truncation: zero all modes with any |k_i| > n/3.
void dealias_inplace(SpectralField& u);

/// 2D Taylor-Green vortex (sin x cos y, -cos x sin y) scaled by `amplitude`.
SpectralField taylor_green(const SpectralGrid& grid, double amplitude = 1.0);

/// Divergence-free Gaussian random field with spectral decay |k|^{-gamma},
/// reproducible from the seed. Nyquist planes are left empty.
SpectralField random_divergence_free_field(const SpectralGrid& grid, double gamma,
                                           unsigned long long seed);

} // namespace fracns::spectral

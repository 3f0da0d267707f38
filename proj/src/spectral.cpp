#include "fracns/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <algorithm>
#include <limits>

namespace fracns::spectral {

SpectralGrid::SpectralGrid(int dim, int n_modes, double nu) : dim_(dim), n_(n_modes), nu_(nu) {
    if (dim != 2 && dim != 3) {
        throw std::invalid_argument("SpectralGrid: dim must be 2 or 3");
    }
    if (n_modes < 4 || n_modes % 2 != 0) {
        throw std::invalid_argument("SpectralGrid: n_modes must be even and >= 4");
    }
    if (!(nu > 0.0)) {
        throw std::invalid_argument("SpectralGrid: viscosity must be positive");
    }
    modes_ = 1;
    for (int d = 0; d < dim_; ++d) modes_ *= static_cast<std::size_t>(n_);
}

std::array<int, 3> SpectralGrid::wavevector(std::size_t flat) const {
    std::array<int, 3> k{0, 0, 0};
    // lexicographic: axis 0 is the slowest index; per-axis value in
    // {-n/2+1, ..., n/2} stored in increasing order
    for (int d = dim_ - 1; d >= 0; --d) {
        const int idx = static_cast<int>(flat % static_cast<std::size_t>(n_));
        flat /= static_cast<std::size_t>(n_);
        k[static_cast<std::size_t>(d)] = idx - n_ / 2 + 1;
    }
    return k;
}

std::size_t SpectralGrid::index_of(const std::array<int, 3>& k) const {
    std::size_t flat = 0;
    for (int d = 0; d < dim_; ++d) {
        const int kv = k[static_cast<std::size_t>(d)];
        if (kv < -n_ / 2 + 1 || kv > n_ / 2) {
            throw std::out_of_range("SpectralGrid::index_of: wavevector outside truncation");
        }
        flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(kv + n_ / 2 - 1);
    }
    return flat;
}

double SpectralGrid::eigenvalue(std::size_t flat) const {
    const auto k = wavevector(flat);
    const double k2 = static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1] +
                      static_cast<double>(k[2]) * k[2];
    return nu_ * k2;
}

SpectralField SpectralField::zero(const SpectralGrid& grid) {
    SpectralField f;
    f.grid_ = grid;
    f.comps_ = grid.dim();
    f.modes_ = grid.mode_count();
    f.a_.assign(static_cast<std::size_t>(f.comps_) * f.modes_, Complex(0.0, 0.0));
    return f;
}

SpectralField SpectralField::synthetic(std::size_t n_modes) {
    SpectralField f;
    f.comps_ = 1;
    f.modes_ = n_modes;
    f.a_.assign(n_modes, Complex(0.0, 0.0));
    return f;
}

namespace {
void check_same_shape(const SpectralField& a, const SpectralField& b) {
    if (a.components() != b.components() || a.modes() != b.modes() ||
        a.is_synthetic() != b.is_synthetic()) {
        throw std::invalid_argument("SpectralField: shape mismatch");
    }
}
} // namespace

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    check_same_shape(*this, o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    check_same_shape(*this, o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& v : a_) v *= s;
    return *this;
}

void SpectralField::axpy(double s, const SpectralField& o) {
    check_same_shape(*this, o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += s * o.a_[i];
}

double SpectralField::l2_norm() const {
    double acc = 0.0;
    for (const auto& v : a_) acc += std::norm(v);
    return std::sqrt(acc);
}

double SpectralField::max_divergence() const {
    if (is_synthetic()) return 0.0;
    double worst = 0.0;
    for (std::size_t m = 0; m < modes_; ++m) {
        const auto k = grid_->wavevector(m);
        Complex div(0.0, 0.0);
        for (int c = 0; c < comps_; ++c) {
            div += static_cast<double>(k[static_cast<std::size_t>(c)]) * at(c, m);
        }
        worst = std::max(worst, std::abs(div));
    }
    return worst;
}

double SpectralField::max_hermitian_defect() const {
    if (is_synthetic()) return 0.0;
    double worst = 0.0;
    const int n = grid_->n_modes();
    for (std::size_t m = 0; m < modes_; ++m) {
        auto k = grid_->wavevector(m);
        // the mirror -k is inside the truncation unless k touches the Nyquist plane
        bool mirrored = true;
        std::array<int, 3> km{0, 0, 0};
        for (int d = 0; d < grid_->dim(); ++d) {
            if (k[static_cast<std::size_t>(d)] == n / 2) { mirrored = false; break; }
            km[static_cast<std::size_t>(d)] = -k[static_cast<std::size_t>(d)];
        }
        if (!mirrored) continue;
        const std::size_t mm = grid_->index_of(km);
        for (int c = 0; c < comps_; ++c) {
            worst = std::max(worst, std::abs(at(c, mm) - std::conj(at(c, m))));
        }
    }
    return worst;
}

SpectralOperator SpectralOperator::stokes(const SpectralGrid& grid) {
    SpectralOperator op;
    op.grid_ = grid;
    op.eig_.resize(grid.mode_count());
    for (std::size_t m = 0; m < op.eig_.size(); ++m) op.eig_[m] = grid.eigenvalue(m);
    return op;
}

SpectralOperator SpectralOperator::synthetic(std::vector<double> eigenvalues) {
    if (eigenvalues.empty()) {
        throw std::invalid_argument("SpectralOperator: empty synthetic spectrum");
    }
    for (double l : eigenvalues) {
        if (!(l > 0.0)) {
            throw std::invalid_argument("SpectralOperator: eigenvalues must be positive");
        }
    }
    SpectralOperator op;
    op.eig_ = std::move(eigenvalues);
    return op;
}

double SpectralOperator::min_eigenvalue() const {
    double best = std::numeric_limits<double>::infinity();
    for (double l : eig_) {
        if (l > 0.0) best = std::min(best, l);
    }
    return best;
}

double SpectralOperator::max_eigenvalue() const {
    return *std::max_element(eig_.begin(), eig_.end());
}

bool SpectralOperator::compatible_with(const SpectralField& u) const {
    if (grid_.has_value() != !u.is_synthetic()) return false;
    if (grid_) return *grid_ == *u.grid();
    return eig_.size() == u.modes();
}

namespace {
void project_mode(const std::array<int, 3>& k, Complex* v, int comps) {
    double k2 = 0.0;
    for (int c = 0; c < comps; ++c) {
        k2 += static_cast<double>(k[static_cast<std::size_t>(c)]) * k[static_cast<std::size_t>(c)];
    }
    if (k2 == 0.0) {
        for (int c = 0; c < comps; ++c) v[c] = Complex(0.0, 0.0);
        return;
    }
    Complex kdotv(0.0, 0.0);
    for (int c = 0; c < comps; ++c) {
        kdotv += static_cast<double>(k[static_cast<std::size_t>(c)]) * v[c];
    }
    const Complex scale = kdotv / k2;
    for (int c = 0; c < comps; ++c) {
        v[c] -= static_cast<double>(k[static_cast<std::size_t>(c)]) * scale;
    }
}
} // namespace

void leray_project_inplace(SpectralField& u) {
    if (u.is_synthetic()) return; // identity in diagonal mode
    const auto& grid = *u.grid();
    const int comps = u.components();
    std::vector<Complex> v(static_cast<std::size_t>(comps));
    for (std::size_t m = 0; m < u.modes(); ++m) {
        for (int c = 0; c < comps; ++c) v[static_cast<std::size_t>(c)] = u.at(c, m);
        project_mode(grid.wavevector(m), v.data(), comps);
        for (int c = 0; c < comps; ++c) u.at(c, m) = v[static_cast<std::size_t>(c)];
    }
}

SpectralField leray_project(const SpectralGrid& grid, const std::vector<Complex>& raw,
                            double symmetry_tol) {
    const std::size_t modes = grid.mode_count();
    const int comps = grid.dim();
    if (raw.size() != modes * static_cast<std::size_t>(comps)) {
        throw std::invalid_argument("leray_project: raw size does not match grid");
    }
    SpectralField out = SpectralField::zero(grid);
    out.data() = raw;
    const double defect = out.max_hermitian_defect();
    double scale = out.l2_norm();
    if (defect > symmetry_tol * std::max(scale, 1e-30)) {
        throw std::invalid_argument("leray_project: input violates Hermitian symmetry");
    }
    leray_project_inplace(out);
    return out;
}

SpectralField apply_fractional_power(const SpectralOperator& op, double beta,
                                     const SpectralField& u) {
    if (!op.compatible_with(u)) {
        throw std::invalid_argument("apply_fractional_power: operator/field mismatch");
    }
    SpectralField out = u;
    for (std::size_t m = 0; m < u.modes(); ++m) {
        const double lam = op.eigenvalue(m);
        const double f = (lam > 0.0) ? std::pow(lam, beta) : 0.0;
        for (int c = 0; c < u.components(); ++c) out.at(c, m) *= f;
    }
    return out;
}

double sobolev_norm(const SpectralOperator& op, double beta, const SpectralField& u) {
    if (!op.compatible_with(u)) {
        throw std::invalid_argument("sobolev_norm: operator/field mismatch");
    }
    double acc = 0.0;
    for (std::size_t m = 0; m < u.modes(); ++m) {
        const double lam = op.eigenvalue(m);
        if (lam <= 0.0) continue;
        const double w = (beta == 0.0) ? 1.0 : std::pow(lam, 2.0 * beta);
        for (int c = 0; c < u.components(); ++c) acc += w * std::norm(u.at(c, m));
    }
    return std::sqrt(acc);
}

void dealias_inplace(SpectralField& u) {
    if (u.is_synthetic()) return;
    // 2/3 rule: 3 kmax < n so that quadratic aliases fall outside the kept band
    const int kmax = (u.grid()->n_modes() - 1) / 3;
    for (std::size_t m = 0; m < u.modes(); ++m) {
        const auto k = u.grid()->wavevector(m);
        const bool kill = std::abs(k[0]) > kmax || std::abs(k[1]) > kmax || std::abs(k[2]) > kmax;
        if (kill) {
            for (int c = 0; c < u.components(); ++c) u.at(c, m) = Complex(0.0, 0.0);
        }
    }
}

SpectralField taylor_green(const SpectralGrid& grid, double amplitude) {
    if (grid.dim() != 2) {
        throw std::invalid_argument("taylor_green: 2D grids only");
    }
    SpectralField u = SpectralField::zero(grid);
    // sin x cos y = (e^{ix}-e^{-ix})(e^{iy}+e^{-iy})/(4i); coefficients +-1/(4i)
    const Complex quarter_i = Complex(0.0, -0.25); // 1/(4i)
    for (int sx : {1, -1}) {
        for (int sy : {1, -1}) {
            const std::size_t m = grid.index_of({sx, sy, 0});
            // u_1 = sin x cos y: sign sx; u_2 = -cos x sin y: sign sy
            u.at(0, m) += amplitude * quarter_i * static_cast<double>(sx);
            u.at(1, m) -= amplitude * quarter_i * static_cast<double>(sy);
        }
    }
    return u;
}

} // namespace fracns::spectral

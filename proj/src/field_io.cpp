#include "fracns/field_io.hpp"

#include <cstdint>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace fracns::spectral {

namespace {
template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
T get(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("field read: truncated stream");
    return v;
}
} // namespace

void write_field(std::ostream& os, const SpectralField& u) {
    const bool synth = u.is_synthetic();
    put<std::int32_t>(os, synth ? 0 : u.grid()->dim());
    put<std::int32_t>(os, synth ? static_cast<std::int32_t>(u.modes()) : u.grid()->n_modes());
    put<double>(os, synth ? 1.0 : u.grid()->viscosity());
    put<std::int32_t>(os, u.components());
    for (std::size_t m = 0; m < u.modes(); ++m) {
        for (int c = 0; c < u.components(); ++c) {
            put<double>(os, u.at(c, m).real());
            put<double>(os, u.at(c, m).imag());
        }
    }
}

SpectralField read_field(std::istream& is) {
    const auto dim = get<std::int32_t>(is);
    const auto n = get<std::int32_t>(is);
    const auto nu = get<double>(is);
    const auto comps = get<std::int32_t>(is);
    SpectralField u = (dim == 0)
        ? SpectralField::synthetic(static_cast<std::size_t>(n))
        : SpectralField::zero(SpectralGrid(dim, n, nu));
    if (u.components() != comps) throw std::runtime_error("field read: component mismatch");
    for (std::size_t m = 0; m < u.modes(); ++m) {
        for (int c = 0; c < comps; ++c) {
            const double re = get<double>(is);
            const double im = get<double>(is);
            u.at(c, m) = Complex(re, im);
        }
    }
    return u;
}

void save_field(const std::string& path, const SpectralField& u) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_field: cannot open " + path);
    write_field(os, u);
}

SpectralField load_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_field: cannot open " + path);
    return read_field(is);
}

void write_spectrum_csv(std::ostream& os, const SpectralField& u) {
    os << "k1,k2,k3";
    for (int c = 0; c < u.components(); ++c) os << ",abs_u" << (c + 1);
    os << "\n";
    for (std::size_t m = 0; m < u.modes(); ++m) {
        std::array<int, 3> k{0, 0, 0};
        if (!u.is_synthetic()) k = u.grid()->wavevector(m);
        else k[0] = static_cast<int>(m);
        os << k[0] << "," << k[1] << "," << k[2];
        for (int c = 0; c < u.components(); ++c) os << "," << std::abs(u.at(c, m));
        os << "\n";
    }
}

} // namespace fracns::spectral

#pragma once

#include "fracns/spectral.hpp"

#include <iosfwd>
#include <string>

namespace fracns::spectral {

/// Binary field layout (little-endian):
///   int32   dim          (0 marks a synthetic field)
///   int32   n_modes      (per axis; total mode count for synthetic)
///   float64 nu           (1.0 for synthetic)
///   int32   components
///   then one (float64 re, float64 im) pair per component, interleaved per
///   wavevector, wavevectors in lexicographic order.
void write_field(std::ostream& os, const SpectralField& u);
SpectralField read_field(std::istream& is);

void save_field(const std::string& path, const SpectralField& u);
SpectralField load_field(const std::string& path);

/// CSV spectrum export: header k1,k2,k3,abs_u1,... one row per wavevector.
void write_spectrum_csv(std::ostream& os, const SpectralField& u);

} // namespace fracns::spectral

#pragma once

#include <string>

#include "stratoflow/spectral_field.hpp"

namespace stratoflow {

// Field snapshot file: one UTF-8 JSON header line
//   {"format_version": 1, "torus": [a1,a2,a3], "grid": [N1,N2,N3],
//    "time": t, "components": ["v1","v2","v3","theta"]}
// followed by little-endian float64 (re, im) pairs, all four components per
// frequency, over the canonical Hermitian half-spectrum in row-major order
// with n1 fastest.
struct Snapshot {
  SpectralField field;
  double time = 0.0;
};

// a frequency belongs to the stored half iff n3 > 0, or n3 = 0 and n2 > 0,
// or n3 = n2 = 0 and n1 >= 0 (the n = 0 coefficient is stored but pinned)
bool in_stored_half(Idx3 n);

void write_snapshot(const std::string& path, const SpectralField& f, double time);
Snapshot read_snapshot(const std::string& path);

}  // namespace stratoflow

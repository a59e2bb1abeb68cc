#pragma once

#include <string>

#include "pinrep/fields.hpp"
#include "pinrep/spherical.hpp"

namespace pinrep::io {

// Field files: one ASCII header line
//   PINREP1 j2=<int> mass=<float> rep=<coord|mom|sph> n=<int> dx=<float>\n
// followed by little-endian 64-bit floats in row-major
// (x, y, z, tensor-component) order. Spherical (rep=sph) files carry the
// momentum-stage channel data in (channel, p-node, component) order with
// n = number of radial momentum nodes and dx = p_max / n.

void write_field(const std::string& path, const fields::SpinorFieldGrid& f);
fields::SpinorFieldGrid read_field(const std::string& path);

void write_spherical(const std::string& path, const spherical::SphericalField& f);
spherical::SphericalField read_spherical(const std::string& path, int l_max = 8);

/// True if the file's header says rep=sph.
bool is_spherical_file(const std::string& path);

}  // namespace pinrep::io

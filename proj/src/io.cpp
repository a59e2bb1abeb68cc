#include "pinrep/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace pinrep::io {
namespace {

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; byte-swapping is not implemented");

struct Header {
  int j2;
  double mass;
  std::string rep;
  int n;
  double dx;
};

Header parse_header(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::FormatError, "missing header");
  std::istringstream ss(line);
  std::string magic;
  ss >> magic;
  if (magic != "PINREP1") throw Error(Errc::FormatError, "bad magic: " + magic);
  Header h{};
  std::string tok;
  bool saw_j2 = false, saw_mass = false, saw_rep = false, saw_n = false, saw_dx = false;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::FormatError, "bad header token: " + tok);
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "j2") {
      h.j2 = std::stoi(val);
      saw_j2 = true;
    } else if (key == "mass") {
      h.mass = std::stod(val);
      saw_mass = true;
    } else if (key == "rep") {
      h.rep = val;
      saw_rep = true;
    } else if (key == "n") {
      h.n = std::stoi(val);
      saw_n = true;
    } else if (key == "dx") {
      h.dx = std::stod(val);
      saw_dx = true;
    } else {
      throw Error(Errc::FormatError, "unknown header key: " + key);
    }
  }
  if (!(saw_j2 && saw_mass && saw_rep && saw_n && saw_dx))
    throw Error(Errc::FormatError, "incomplete header");
  return h;
}

void write_header(std::ostream& out, int j2, double mass, const std::string& rep,
                  int n, double dx) {
  out << "PINREP1 j2=" << j2 << " mass=" << std::defaultfloat << mass
      << " rep=" << rep << " n=" << n << " dx=" << dx << "\n";
}

}  // namespace

void write_field(const std::string& path, const fields::SpinorFieldGrid& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::FormatError, "cannot open " + path);
  write_header(out, f.j2, f.mass,
               f.rep == fields::FieldRep::Coordinate ? "coord" : "mom", f.grid.n,
               f.grid.dx);
  out.write(reinterpret_cast<const char*>(f.data.data()),
            std::streamsize(f.data.size() * sizeof(double)));
  if (!out) throw Error(Errc::FormatError, "write failed: " + path);
}

fields::SpinorFieldGrid read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FormatError, "cannot open " + path);
  const Header h = parse_header(in);
  if (h.rep != "coord" && h.rep != "mom")
    throw Error(Errc::FormatError, "expected a cartesian field, got rep=" + h.rep);
  fields::GridSpec g{h.n, h.dx, true};
  if (!g.valid()) throw Error(Errc::FormatError, "invalid grid in header");
  fields::SpinorFieldGrid f = fields::SpinorFieldGrid::zero(
      h.j2, h.mass, g,
      h.rep == "coord" ? fields::FieldRep::Coordinate : fields::FieldRep::Momentum);
  in.read(reinterpret_cast<char*>(f.data.data()),
          std::streamsize(f.data.size() * sizeof(double)));
  if (std::size_t(in.gcount()) != f.data.size() * sizeof(double))
    throw Error(Errc::FormatError, "truncated field data");
  return f;
}

void write_spherical(const std::string& path, const spherical::SphericalField& f) {
  if (f.stage != spherical::SphericalField::Stage::Momentum)
    throw Error(Errc::FormatError, "only momentum-stage spherical fields are file-portable");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::FormatError, "cannot open " + path);
  write_header(out, f.j2, f.mass, "sph", f.spec.n_p, f.spec.p_max / f.spec.n_p);
  out.write(reinterpret_cast<const char*>(f.data.data()),
            std::streamsize(f.data.size() * sizeof(double)));
  if (!out) throw Error(Errc::FormatError, "write failed: " + path);
}

spherical::SphericalField read_spherical(const std::string& path, int l_max) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FormatError, "cannot open " + path);
  const Header h = parse_header(in);
  if (h.rep != "sph") throw Error(Errc::FormatError, "expected rep=sph");
  if (h.j2 != 1) throw Error(Errc::UnsupportedLabel, "spherical files carry j2 = 1");
  spherical::RadialSphericalSpec spec =
      spherical::RadialSphericalSpec::make(l_max, h.n, h.dx * h.n);
  spherical::SphericalField f = spherical::SphericalField::zero_momentum(h.mass, spec);
  in.read(reinterpret_cast<char*>(f.data.data()),
          std::streamsize(f.data.size() * sizeof(double)));
  if (std::size_t(in.gcount()) != f.data.size() * sizeof(double))
    throw Error(Errc::FormatError, "truncated or mismatched channel data");
  return f;
}

bool is_spherical_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FormatError, "cannot open " + path);
  const Header h = parse_header(in);
  return h.rep == "sph";
}

}  // namespace pinrep::io

#include "fracshear/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>

#include <json.hpp>

#include "fracshear/errors.hpp"
#include "fracshear/fft.hpp"

namespace fracshear {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

namespace {

template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw DataError("truncated snapshot file");
  return v;
}

}  // namespace

void write_field(const std::filesystem::path& path, const SpectralField2D& f, double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  put<std::uint64_t>(os, f.grid().nx());
  put<std::uint64_t>(os, f.grid().ny());
  for (const auto& c : f.coeffs()) {
    put<double>(os, c.real());
    put<double>(os, c.imag());
  }

  nlohmann::json desc = {
      {"format", "fracshear-spectral-field"},
      {"version", 1},
      {"nx", f.grid().nx()},
      {"ny", f.grid().ny()},
      {"time", time},
      {"header_bytes", 16},
      {"value_type", "complex128 interleaved (re, im), little-endian"},
      {"index_order", "row-major, kx index outer; along each axis index i holds wavenumber i for i < n/2, i - n otherwise"},
      {"normalization", "f(x,y) = sum fhat(k,l) exp(i(kx+ly)); nodes x_i = -pi + 2 pi i / nx"},
      {"mean", f.mean()},
  };
  std::ofstream js(path.string() + ".json");
  js << std::setw(2) << desc << '\n';
}

SpectralField2D read_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open " + path.string());
  const auto nx = get<std::uint64_t>(is);
  const auto ny = get<std::uint64_t>(is);
  TorusGrid grid(nx, ny);
  std::vector<cplx> c(grid.size());
  for (auto& v : c) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    v = {re, im};
  }
  return SpectralField2D(grid, std::move(c));
}

void write_physical_csv(const std::filesystem::path& path, const SpectralField2D& f) {
  const auto phys = to_physical(f);
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  os << "x,y,value\n" << std::setprecision(17);
  const auto& g = f.grid();
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) os << g.x(i) << ',' << g.y(j) << ',' << phys(i, j) << '\n';
}

}  // namespace fracshear

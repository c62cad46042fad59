#pragma once
// BKGRID1 binary grid files. All integers and floats are little-endian.
//
//   offset  size  field
//   0       7     magic "BKGRID1"
//   7       4     u32 nx
//   11      4     u32 ny
//   15      8     u64 params hash (FNV-1a, see params_hash)
//   23      32    f64 x0, y0, x1, y1
//   55      4     u32 max_steps
//   59      8     f64 escape_radius
//   67      5*nx*ny  cells, row-major from the top row: u8 status, u32 step

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bakerlab/dynamics.hpp"

namespace bakerlab {

struct MalformedGrid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr char kGridMagic[7] = {'B', 'K', 'G', 'R', 'I', 'D', '1'};
inline constexpr std::size_t kGridHeaderSize = 67;

namespace detail {

template <class U>
void put_le(std::vector<std::uint8_t>& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_f64(std::vector<std::uint8_t>& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }

template <class U>
U get_le(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  if (pos + sizeof(U) > in.size()) throw MalformedGrid("grid file truncated");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(static_cast<U>(in[pos + i]) << (8 * i));
  pos += sizeof(U);
  return v;
}

inline double get_f64(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  return std::bit_cast<double>(get_le<std::uint64_t>(in, pos));
}

}  // namespace detail

inline std::vector<std::uint8_t> encode_grid(const EscapeGrid& g) {
  std::vector<std::uint8_t> out;
  out.reserve(kGridHeaderSize + 5 * g.cells.size());
  out.insert(out.end(), std::begin(kGridMagic), std::end(kGridMagic));
  detail::put_le(out, g.nx);
  detail::put_le(out, g.ny);
  detail::put_le(out, g.params_hash);
  detail::put_f64(out, g.rect.lo.real());
  detail::put_f64(out, g.rect.lo.imag());
  detail::put_f64(out, g.rect.hi.real());
  detail::put_f64(out, g.rect.hi.imag());
  detail::put_le(out, g.max_steps);
  detail::put_f64(out, g.escape_radius);
  for (const GridCell& c : g.cells) {
    out.push_back(static_cast<std::uint8_t>(c.status));
    detail::put_le(out, c.step);
  }
  return out;
}

inline EscapeGrid decode_grid(const std::vector<std::uint8_t>& in) {
  if (in.size() < kGridHeaderSize || std::memcmp(in.data(), kGridMagic, sizeof kGridMagic) != 0)
    throw MalformedGrid("not a BKGRID1 file");
  std::size_t pos = sizeof kGridMagic;
  EscapeGrid g;
  g.nx = detail::get_le<std::uint32_t>(in, pos);
  g.ny = detail::get_le<std::uint32_t>(in, pos);
  g.params_hash = detail::get_le<std::uint64_t>(in, pos);
  const double x0 = detail::get_f64(in, pos), y0 = detail::get_f64(in, pos);
  const double x1 = detail::get_f64(in, pos), y1 = detail::get_f64(in, pos);
  g.rect = {{x0, y0}, {x1, y1}};
  g.max_steps = detail::get_le<std::uint32_t>(in, pos);
  g.escape_radius = detail::get_f64(in, pos);
  if (g.nx == 0 || g.ny == 0) throw MalformedGrid("grid has zero size");
  const std::uint64_t count = std::uint64_t{g.nx} * g.ny;
  if (in.size() - pos != 5 * count) throw MalformedGrid("grid cell block has wrong length");
  g.cells.resize(count);
  for (GridCell& c : g.cells) {
    const std::uint8_t status = in[pos++];
    if (status > static_cast<std::uint8_t>(OrbitStatus::EscapedAfterTranslation))
      throw MalformedGrid("unknown cell status " + std::to_string(status));
    c.status = static_cast<OrbitStatus>(status);
    c.step = detail::get_le<std::uint32_t>(in, pos);
  }
  return g;
}

inline void write_grid(const std::string& path, const EscapeGrid& g) {
  const auto bytes = encode_grid(g);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

inline EscapeGrid read_grid(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return decode_grid(bytes);
}

}  // namespace bakerlab

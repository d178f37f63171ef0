#ifndef VORTEX_SNAPSHOT_HPP
#define VORTEX_SNAPSHOT_HPP

// Binary snapshot of a physical-space scalar field:
//   bytes 0-3   magic "VSPD"
//   bytes 4-5   format version, u16 little-endian
//   bytes 6-7   N, u16 little-endian
//   bytes 8-15  L, float64 little-endian
//   then N*N float64 little-endian values, row-major (row index along x1).

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "vortex/field.hpp"

namespace vortex {

inline constexpr std::uint16_t snapshot_version = 1;
inline constexpr std::size_t snapshot_header_bytes = 16;

namespace detail {

template <class T>
void put_le(std::ostream& os, T value) {
  std::array<unsigned char, sizeof(T)> raw;
  std::memcpy(raw.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
  os.write(reinterpret_cast<const char*>(raw.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> raw;
  if (!is.read(reinterpret_cast<char*>(raw.data()), sizeof(T)))
    throw std::runtime_error("snapshot: truncated stream");
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
  T value;
  std::memcpy(&value, raw.data(), sizeof(T));
  return value;
}

}  // namespace detail

inline void write_snapshot(std::ostream& os, const PhysicalField& p) {
  if (p.grid.n() > 0xFFFF) throw std::invalid_argument("snapshot: N does not fit in u16");
  os.write("VSPD", 4);
  detail::put_le<std::uint16_t>(os, snapshot_version);
  detail::put_le<std::uint16_t>(os, static_cast<std::uint16_t>(p.grid.n()));
  detail::put_le<double>(os, p.grid.length());
  for (double v : p.values) detail::put_le<double>(os, v);
  if (!os) throw std::runtime_error("snapshot: write failed");
}

/// Reads a snapshot; the dealias fraction is not stored and defaults to 2/3.
inline PhysicalField read_snapshot(std::istream& is, double dealias_fraction = 2.0 / 3.0) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "VSPD", 4) != 0)
    throw std::runtime_error("snapshot: bad magic");
  const auto version = detail::get_le<std::uint16_t>(is);
  if (version != snapshot_version)
    throw std::runtime_error("snapshot: unsupported version " + std::to_string(version));
  const auto n = detail::get_le<std::uint16_t>(is);
  const auto length = detail::get_le<double>(is);
  PhysicalField p(SpectralGrid(n, length, dealias_fraction));
  for (auto& v : p.values) v = detail::get_le<double>(is);
  return p;
}

}  // namespace vortex

#endif  // VORTEX_SNAPSHOT_HPP

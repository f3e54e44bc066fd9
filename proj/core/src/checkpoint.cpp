#include "hnls/checkpoint.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>

#include "hnls/errors.hpp"

namespace hnls {
namespace {

constexpr std::array<char, 4> kMagic{'H', 'N', 'L', 'S'};

template <typename T>
void put(std::ostream& os, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint8_t>>;
  auto bits = std::bit_cast<U>(value);
  char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>(bits & 0xffU);
    if constexpr (sizeof(U) > 1) bits >>= 8;
  }
  os.write(bytes, sizeof(U));
}

template <typename T>
T get(std::istream& is) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint8_t>>;
  unsigned char bytes[sizeof(U)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(U))) {
    throw IoError("truncated checkpoint");
  }
  U bits = 0;
  for (std::size_t i = sizeof(U); i-- > 0;) {
    if constexpr (sizeof(U) > 1) bits <<= 8;
    bits |= bytes[i];
  }
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_checkpoint(std::ostream& os, const Checkpoint& checkpoint) {
  const auto& grid = checkpoint.field.grid();
  os.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(os, kCheckpointVersion);
  put<std::uint8_t>(os, is_torus(grid) ? 0 : 1);
  put<std::uint64_t>(os, grid_size(grid));
  put<double>(os, is_torus(grid) ? kTwoPi : std::get<LineGrid>(grid).half_length());
  put<double>(os, checkpoint.t);
  put<double>(os, checkpoint.p);
  for (const Complex& z : checkpoint.field.values()) {
    put<double>(os, z.real());
    put<double>(os, z.imag());
  }
  if (!os) throw IoError("failed to write checkpoint");
}

Checkpoint read_checkpoint(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
    throw IoError("not a checkpoint file");
  }
  const auto version = get<std::uint32_t>(is);
  if (version != kCheckpointVersion) throw IoError("unsupported checkpoint version");
  const auto type = get<std::uint8_t>(is);
  const auto n = get<std::uint64_t>(is);
  const auto length = get<double>(is);
  const auto t = get<double>(is);
  const auto p = get<double>(is);
  if (n == 0 || n > (std::uint64_t{1} << 32)) throw IoError("implausible checkpoint size");

  Grid grid = TorusGrid(16);
  try {
    if (type == 0) {
      if (length != kTwoPi) throw IoError("torus checkpoint with period other than 2 pi");
      grid = TorusGrid(static_cast<std::size_t>(n));
    } else if (type == 1) {
      const double k = length / std::numbers::pi;
      const double rounded = std::round(k);
      if (!(std::abs(k - rounded) <= 1e-12 * std::max(1.0, k))) {
        throw IoError("line checkpoint length is not a multiple of pi");
      }
      grid = LineGrid(static_cast<std::size_t>(n), static_cast<int>(rounded));
    } else {
      throw IoError("unknown checkpoint grid type");
    }
  } catch (const InvalidParameter& e) {
    throw IoError(std::string("invalid checkpoint grid: ") + e.what());
  }

  std::vector<Complex> values(static_cast<std::size_t>(n));
  for (auto& z : values) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    z = Complex(re, im);
  }
  return Checkpoint{t, p, ComplexField(std::move(grid), std::move(values))};
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_checkpoint(os, checkpoint);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return read_checkpoint(is);
}

}  // namespace hnls

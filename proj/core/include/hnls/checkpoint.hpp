#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "hnls/field.hpp"

namespace hnls {

/// A field snapshot with the time and exponent it was taken at.
struct Checkpoint {
  double t = 0.0;
  double p = 0.0;
  ComplexField field;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Little-endian layout: "HNLS", u32 version, u8 grid type (0 torus, 1 line),
/// u64 n, f64 period or half-length L, f64 t, f64 p, then n (re, im) pairs.
void write_checkpoint(std::ostream& os, const Checkpoint& checkpoint);
Checkpoint read_checkpoint(std::istream& is);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace hnls

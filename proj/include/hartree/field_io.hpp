#pragma once

// Flat binary container for fields and trajectories.
//
// All integers and floats are little-endian.
//
//   offset  size  content
//   0       8     magic "HNLSFLD1"
//   8       4     u32 format version (1)
//   12      4     u32 dimension d
//   16      8     u64 points per axis n
//   24      8     f64 half-width L
//   32      1     u8 representation (0 = position, 1 = frequency)
//   33      1     u8 precision (1 = complex64, 2 = complex128)
//   34      1     u8 has_gamma (1 when the file carries a kernel exponent)
//   35      1     u8 reserved (0)
//   36      4     u32 reserved (0)
//   40      8     f64 gamma (NaN when has_gamma = 0)
//   48      8     u64 frame count F
//   56      ...   F frames, each: f64 time, then n^d complex values as
//                 interleaved (re, im) pairs of the chosen precision.
//
// A single field is stored as one frame at time 0.

#include <filesystem>
#include <optional>
#include <vector>

#include "hartree/field.hpp"

namespace hartree {

enum class Precision { complex64 = 1, complex128 = 2 };

struct FieldFrames {
  std::vector<double> times;
  std::vector<ComplexField> fields;
  std::optional<double> gamma;
};

void write_frames(const std::filesystem::path& path, const FieldFrames& frames,
                  Precision precision = Precision::complex128);
FieldFrames read_frames(const std::filesystem::path& path);

void write_field(const std::filesystem::path& path, const ComplexField& field,
                 std::optional<double> gamma = std::nullopt, Precision precision = Precision::complex128);
ComplexField read_field(const std::filesystem::path& path);

}  // namespace hartree

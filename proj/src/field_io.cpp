#include "hartree/field_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

#include "hartree/error.hpp"

namespace hartree {

static_assert(std::endian::native == std::endian::little, "field container assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'H', 'N', 'L', 'S', 'F', 'L', 'D', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& os, T value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is) throw Error("field container: truncated file");
  return value;
}

}  // namespace

void write_frames(const std::filesystem::path& path, const FieldFrames& frames, Precision precision) {
  if (frames.fields.empty()) throw Error("field container: no frames to write");
  if (frames.times.size() != frames.fields.size()) throw Error("field container: times/fields length mismatch");
  const ComplexField& first = frames.fields.front();
  const Grid& g = first.grid();
  for (const auto& f : frames.fields) {
    require_same_grid(g, f.grid(), "write_frames");
    if (f.representation() != first.representation()) throw Error("field container: mixed representations");
  }

  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("field container: cannot open " + path.string() + " for writing");
  os.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim));
  put<std::uint64_t>(os, g.n);
  put<double>(os, g.half_width);
  put<std::uint8_t>(os, first.representation() == Representation::position ? 0 : 1);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(precision));
  put<std::uint8_t>(os, frames.gamma ? 1 : 0);
  put<std::uint8_t>(os, 0);
  put<std::uint32_t>(os, 0);
  put<double>(os, frames.gamma.value_or(std::numeric_limits<double>::quiet_NaN()));
  put<std::uint64_t>(os, frames.fields.size());
  for (std::size_t i = 0; i < frames.fields.size(); ++i) {
    put<double>(os, frames.times[i]);
    for (const auto& z : frames.fields[i].values()) {
      if (precision == Precision::complex128) {
        put<double>(os, z.real());
        put<double>(os, z.imag());
      } else {
        put<float>(os, static_cast<float>(z.real()));
        put<float>(os, static_cast<float>(z.imag()));
      }
    }
  }
  if (!os) throw Error("field container: write failed for " + path.string());
}

FieldFrames read_frames(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("field container: cannot open " + path.string());
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw Error("field container: bad magic");
  if (get<std::uint32_t>(is) != kVersion) throw Error("field container: unsupported version");
  const auto dim = get<std::uint32_t>(is);
  const auto n = get<std::uint64_t>(is);
  const auto half_width = get<double>(is);
  const auto rep = get<std::uint8_t>(is);
  const auto precision = get<std::uint8_t>(is);
  const auto has_gamma = get<std::uint8_t>(is);
  get<std::uint8_t>(is);
  get<std::uint32_t>(is);
  const auto gamma = get<double>(is);
  const auto count = get<std::uint64_t>(is);
  if (precision != 1 && precision != 2) throw Error("field container: bad precision tag");
  if (rep > 1) throw Error("field container: bad representation tag");

  const Grid grid = make_grid(static_cast<int>(dim), n, half_width);
  FieldFrames out;
  if (has_gamma) out.gamma = gamma;
  for (std::uint64_t f = 0; f < count; ++f) {
    out.times.push_back(get<double>(is));
    std::vector<cplx> values(grid.size());
    for (auto& z : values) {
      if (precision == 2) {
        const double re = get<double>(is);
        z = {re, get<double>(is)};
      } else {
        const float re = get<float>(is);
        z = {re, get<float>(is)};
      }
    }
    out.fields.emplace_back(grid, std::move(values), rep == 0 ? Representation::position : Representation::frequency);
  }
  return out;
}

void write_field(const std::filesystem::path& path, const ComplexField& field, std::optional<double> gamma,
                 Precision precision) {
  write_frames(path, FieldFrames{{0.0}, {field}, gamma}, precision);
}

ComplexField read_field(const std::filesystem::path& path) {
  auto frames = read_frames(path);
  if (frames.fields.empty()) throw Error("field container: file holds no frames");
  return std::move(frames.fields.front());
}

}  // namespace hartree

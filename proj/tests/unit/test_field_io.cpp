#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "hartree/error.hpp"
#include "hartree/field_io.hpp"

using namespace hartree;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "hartree_unit";
  fs::create_directories(dir);
  return dir / name;
}
}  // namespace

TEST_SUITE("field_io") {
  TEST_CASE("single field round trip is bit exact") {
    const Grid g = make_grid(2, 16, 3.0);
    const ComplexField f = testing::random_field(g, 21);
    const auto p = scratch("one.fld");
    write_field(p, f, 1.5);
    const ComplexField h = read_field(p);
    CHECK(h.grid() == g);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(h[i] == f[i]);
    CHECK(read_frames(p).gamma.value() == 1.5);
    CHECK(fs::file_size(p) == 56 + 8 + 16 * g.size());
  }

  TEST_CASE("trajectory frames and single precision") {
    const Grid g = make_grid(1, 32, 3.0);
    FieldFrames frames;
    for (int k = 0; k < 3; ++k) {
      frames.times.push_back(0.5 * k);
      frames.fields.push_back(testing::random_field(g, 30 + k));
    }
    const auto p = scratch("traj.fld");
    write_frames(p, frames, Precision::complex64);
    const FieldFrames back = read_frames(p);
    REQUIRE(back.fields.size() == 3);
    CHECK(back.times[2] == 1.0);
    CHECK(!back.gamma.has_value());
    CHECK(relative_l2_error(back.fields[1], frames.fields[1]) < 1e-7);
  }

  TEST_CASE("corrupt files are rejected") {
    const auto p = scratch("bad.fld");
    {
      std::ofstream out(p, std::ios::binary);
      out << "NOTAFILE and some more bytes to pass the header length check.......";
    }
    CHECK_THROWS_AS(read_field(p), Error);
    const Grid g = make_grid(1, 16, 1.0);
    const auto q = scratch("short.fld");
    write_field(q, testing::random_field(g, 5));
    fs::resize_file(q, fs::file_size(q) - 8);
    CHECK_THROWS_AS(read_field(q), Error);
    CHECK_THROWS_AS(read_field(scratch("missing.fld")), Error);
  }
}

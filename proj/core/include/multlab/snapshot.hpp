#pragma once

#include <filesystem>

#include "multlab/grid.hpp"

namespace multlab {

// Binary field snapshot, little-endian:
//   char[4] "MLF1", uint32 dim, uint32 M, float64 L, uint32 domain (0 space, 1 frequency),
//   then M^dim samples as complex64 (float32 real, float32 imaginary), row-major.
void write_snapshot(const std::filesystem::path& path, const SampledField& f);
SampledField read_snapshot(const std::filesystem::path& path);

} // namespace multlab

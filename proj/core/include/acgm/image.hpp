#pragma once

#include <cstdint>
#include <string>

#include "acgm/types.hpp"

namespace acgm {

// Grayscale image with nominal intensity range [0, 1]; degraded images may
// leave that range.  Pixels are flattened row-major: pixel (i, j) sits at
// index i * cols + j.
struct ImageGray {
  int rows = 0;
  int cols = 0;
  Vector pixels;
};

// Deterministic synthetic test scene: a two-way intensity ramp with seeded
// random rectangles, plus one bright and one dark block at fixed corners so
// the dynamic range is at least 0.9 regardless of the seed.
ImageGray synth_test_image(int rows, int cols, std::uint64_t seed);

// Adds iid gaussian noise of the given standard deviation, pixel by pixel in
// row-major order from a fresh generator with the given seed.
ImageGray add_gaussian_noise(const ImageGray& img, double stddev, std::uint64_t seed);

// PGM input: both ASCII (P2) and binary (P5) variants, any maxval in
// [1, 65535] (two-byte big-endian samples above 255), header comments
// allowed.  Intensities are scaled to [0, 1].  Throws std::runtime_error on
// malformed or truncated files.
ImageGray pgm_read(const std::string& path);

// PGM output: binary P5 at maxval 255; intensities are clamped to [0, 1] and
// rounded.
void pgm_write(const ImageGray& img, const std::string& path);

}  // namespace acgm

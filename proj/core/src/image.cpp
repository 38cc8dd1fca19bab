#include "acgm/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

#include "acgm/rng.hpp"

namespace acgm {

ImageGray synth_test_image(int rows, int cols, std::uint64_t seed) {
  if (rows < 8 || cols < 8) {
    throw std::invalid_argument("test scenes need at least an 8x8 grid");
  }
  ImageGray img{rows, cols, Vector(rows * cols)};
  // Smooth two-way ramp background.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      img.pixels[i * cols + j] =
          0.15 + 0.25 * i / (rows - 1.0) + 0.15 * j / (cols - 1.0);
    }
  }
  // Seeded rectangles of varying intensity.
  SplitMix64 rng(seed);
  auto fill_rect = [&](int i0, int j0, int h, int w, double level) {
    const int i1 = std::min(rows, i0 + h);
    const int j1 = std::min(cols, j0 + w);
    for (int i = i0; i < i1; ++i) {
      for (int j = j0; j < j1; ++j) {
        img.pixels[i * cols + j] = level;
      }
    }
  };
  for (int r = 0; r < 6; ++r) {
    const int i0 = static_cast<int>(rng.next_uniform() * rows * 0.8);
    const int j0 = static_cast<int>(rng.next_uniform() * cols * 0.8);
    const int h = 2 + static_cast<int>(rng.next_uniform() * rows * 0.3);
    const int w = 2 + static_cast<int>(rng.next_uniform() * cols * 0.3);
    fill_rect(i0, j0, h, w, 0.05 + 0.9 * rng.next_uniform());
  }
  // Fixed-contrast blocks at opposite corners guarantee dynamic range >= 0.9
  // no matter what the seeded rectangles painted.
  fill_rect(0, 0, std::max(2, rows / 8), std::max(2, cols / 8), 0.95);
  fill_rect(rows - std::max(2, rows / 8), cols - std::max(2, cols / 8), rows, cols, 0.05);
  for (int i = 0; i < rows * cols; ++i) {
    img.pixels[i] = std::clamp(img.pixels[i], 0.0, 1.0);
  }
  return img;
}

ImageGray add_gaussian_noise(const ImageGray& img, double stddev, std::uint64_t seed) {
  if (stddev < 0.0) {
    throw std::invalid_argument("noise level must be nonnegative");
  }
  ImageGray out = img;
  if (stddev == 0.0) return out;
  SplitMix64 rng(seed);
  for (Eigen::Index i = 0; i < out.pixels.size(); ++i) {
    out.pixels[i] += stddev * rng.next_gaussian();
  }
  return out;
}

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      break;
    }
  }
  while ((c = in.get()) != EOF && !std::isspace(c) && c != '#') {
    tok.push_back(static_cast<char>(c));
  }
  if (c == '#') in.unget();
  if (tok.empty()) {
    throw std::runtime_error("pgm: truncated header");
  }
  return tok;
}

int parse_header_int(std::istream& in, const char* what) {
  const std::string tok = next_token(in);
  try {
    std::size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("pgm: malformed ") + what + ": '" + tok + "'");
  }
}

}  // namespace

ImageGray pgm_read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("pgm: cannot open " + path);
  }
  const std::string magic = next_token(in);
  if (magic != "P2" && magic != "P5") {
    throw std::runtime_error("pgm: unsupported magic '" + magic + "' in " + path);
  }
  const int cols = parse_header_int(in, "width");
  const int rows = parse_header_int(in, "height");
  const int maxval = parse_header_int(in, "maxval");
  if (cols <= 0 || rows <= 0 || maxval <= 0 || maxval > 65535) {
    throw std::runtime_error("pgm: invalid dimensions or maxval in " + path);
  }

  ImageGray img{rows, cols, Vector(rows * cols)};
  const double scale = 1.0 / maxval;
  if (magic == "P2") {
    for (int i = 0; i < rows * cols; ++i) {
      const int v = parse_header_int(in, "sample");
      if (v < 0 || v > maxval) {
        throw std::runtime_error("pgm: sample out of range in " + path);
      }
      img.pixels[i] = v * scale;
    }
  } else {
    // Binary samples follow a single whitespace byte after maxval, which
    // next_token's trailing-delimiter consumption already swallowed.
    const int bytes = maxval < 256 ? 1 : 2;
    std::string raw(static_cast<std::size_t>(rows) * cols * bytes, '\0');
    in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
      throw std::runtime_error("pgm: truncated pixel data in " + path);
    }
    for (int i = 0; i < rows * cols; ++i) {
      int v;
      if (bytes == 1) {
        v = static_cast<unsigned char>(raw[i]);
      } else {
        v = (static_cast<unsigned char>(raw[2 * i]) << 8) |
            static_cast<unsigned char>(raw[2 * i + 1]);
      }
      if (v > maxval) {
        throw std::runtime_error("pgm: sample out of range in " + path);
      }
      img.pixels[i] = v * scale;
    }
  }
  return img;
}

void pgm_write(const ImageGray& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("pgm: cannot write " + path);
  }
  out << "P5\n" << img.cols << " " << img.rows << "\n255\n";
  std::string raw(static_cast<std::size_t>(img.rows) * img.cols, '\0');
  for (Eigen::Index i = 0; i < img.pixels.size(); ++i) {
    const double v = std::clamp(img.pixels[i], 0.0, 1.0);
    raw[static_cast<std::size_t>(i)] = static_cast<char>(std::lround(v * 255.0));
  }
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (!out) {
    throw std::runtime_error("pgm: write failed for " + path);
  }
}

}  // namespace acgm

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace srmc {

/// Single 8-bit luma raster, row-major.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> samples;

  Plane() = default;
  Plane(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), samples(static_cast<std::size_t>(w) * h, fill) {
    if (w <= 0 || h <= 0)
      throw std::invalid_argument("Plane: dimensions must be positive");
  }

  std::uint8_t at(int row, int col) const {
    return samples[static_cast<std::size_t>(row) * width + col];
  }
  std::uint8_t& at(int row, int col) {
    return samples[static_cast<std::size_t>(row) * width + col];
  }

  // Reads with edge replication; any coordinate is valid.
  std::uint8_t at_clamped(int row, int col) const {
    if (row < 0) row = 0;
    if (row >= height) row = height - 1;
    if (col < 0) col = 0;
    if (col >= width) col = width - 1;
    return at(row, col);
  }

  bool operator==(const Plane& o) const = default;
};

/// Ordered list of equally sized planes.
struct Sequence {
  std::vector<Plane> frames;
  double frame_rate = 30.0;

  int width() const { return frames.empty() ? 0 : frames.front().width; }
  int height() const { return frames.empty() ? 0 : frames.front().height; }

  void validate() const {
    if (frames.empty()) throw std::invalid_argument("Sequence: no frames");
    for (const Plane& f : frames)
      if (f.width != width() || f.height != height())
        throw std::invalid_argument("Sequence: frame dimensions differ");
  }

  bool operator==(const Sequence& o) const { return frames == o.frames; }
};

}  // namespace srmc

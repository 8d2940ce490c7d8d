#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "srmc/plane.hpp"

namespace srmc {

namespace detail {

// Band-limited random texture in [low, high]: a sum of random cosine waves
// plus mild per-pixel noise, so block matching and spectral refinement both
// have structure to work with. `step` rescales the sampling lattice: with
// step = 1/4 the grid is oversampled four-fold, which lets callers cut out
// quarter-pel-shifted windows.
inline std::vector<double> make_texture(int width, int height, std::uint32_t seed,
                                        double low = 40.0, double high = 200.0,
                                        double step = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> freq(0.01, 0.25);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> amp(0.3, 1.0);
  std::normal_distribution<double> noise(0.0, 0.05);

  constexpr int waves = 12;
  std::vector<double> fx(waves), fy(waves), ph(waves), am(waves);
  for (int i = 0; i < waves; ++i) {
    fx[i] = freq(rng);
    fy[i] = freq(rng);
    ph[i] = phase(rng);
    am[i] = amp(rng);
  }
  std::vector<double> tex(static_cast<std::size_t>(width) * height);
  double lo = 1e30, hi = -1e30;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double v = 0.0;
      for (int i = 0; i < waves; ++i)
        v += am[i] * std::cos(2.0 * std::numbers::pi * (fx[i] * x + fy[i] * y) * step + ph[i]);
      v += noise(rng);
      tex[static_cast<std::size_t>(y) * width + x] = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double scale = (high - low) / (hi - lo);
  for (double& v : tex) v = low + (v - lo) * scale;
  return tex;
}

}  // namespace detail

/// Clip whose frames are windows of one master texture shifted by
/// shift_qx/shift_qy QUARTER-PEL units per frame (4 = one full pixel), with
/// an optional global luminance offset per frame added cumulatively and
/// clamped to 8 bit. Fractional shifts are cut from a four-fold oversampled
/// lattice, so they are exact scene motion, not interpolation.
inline Sequence make_synthetic_clip(int width, int height, int frames, std::uint32_t seed,
                                    int shift_qx = 0, int shift_qy = 0, int luma_step = 0,
                                    double frame_rate = 30.0) {
  constexpr int S = 4;
  const int margin_x = (std::abs(shift_qx) * frames + S - 1) / S + 8;
  const int margin_y = (std::abs(shift_qy) * frames + S - 1) / S + 8;
  const int tw = (width + 2 * margin_x) * S;
  const int th = (height + 2 * margin_y) * S;
  const std::vector<double> tex = detail::make_texture(tw, th, seed, 40.0, 200.0, 1.0 / S);

  Sequence seq;
  seq.frame_rate = frame_rate;
  for (int f = 0; f < frames; ++f) {
    const int ox = margin_x * S + f * shift_qx;
    const int oy = margin_y * S + f * shift_qy;
    const double offset = static_cast<double>(luma_step) * f;
    Plane p(width, height);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) {
        const double v =
            tex[static_cast<std::size_t>(oy + S * y) * tw + ox + S * x] + offset;
        const long q = std::lround(v);
        p.at(y, x) = static_cast<std::uint8_t>(q < 0 ? 0 : (q > 255 ? 255 : q));
      }
    seq.frames.push_back(std::move(p));
  }
  return seq;
}

inline Sequence make_static_clip(int width, int height, int frames, std::uint32_t seed) {
  return make_synthetic_clip(width, height, frames, seed);
}

/// shift_x/shift_y in whole pixels per frame: motion a block matcher can
/// compensate exactly.
inline Sequence make_translation_clip(int width, int height, int frames, std::uint32_t seed,
                                      int shift_x = 1, int shift_y = 0) {
  return make_synthetic_clip(width, height, frames, seed, 4 * shift_x, 4 * shift_y);
}

/// Fractional translation (quarter-pel units) plus a global luminance ramp;
/// both defeat pure motion compensation while the spatial surroundings stay
/// informative.
inline Sequence make_luma_ramp_clip(int width, int height, int frames, std::uint32_t seed,
                                    int shift_qx = 5, int shift_qy = 0, int luma_step = 2) {
  return make_synthetic_clip(width, height, frames, seed, shift_qx, shift_qy, luma_step);
}

}  // namespace srmc

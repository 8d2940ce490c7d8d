#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "srmc/plane.hpp"

namespace srmc {

inline double mse(const Plane& a, const Plane& b) {
  if (a.width != b.width || a.height != b.height)
    throw std::invalid_argument("mse: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double d = static_cast<double>(a.samples[i]) - b.samples[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.samples.size());
}

inline double psnr_from_mse(double m) {
  if (m <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / m);
}

inline double psnr(const Plane& a, const Plane& b) { return psnr_from_mse(mse(a, b)); }

/// Sequence PSNR over all luma samples (pooled MSE, not per-frame average).
inline double psnr(const Sequence& a, const Sequence& b) {
  if (a.frames.size() != b.frames.size())
    throw std::invalid_argument("psnr: frame count mismatch");
  double acc = 0.0;
  std::size_t n = 0;
  for (std::size_t f = 0; f < a.frames.size(); ++f) {
    acc += mse(a.frames[f], b.frames[f]) * a.frames[f].samples.size();
    n += a.frames[f].samples.size();
  }
  return psnr_from_mse(acc / static_cast<double>(n));
}

}  // namespace srmc

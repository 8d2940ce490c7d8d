#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace srmc {

using cplx = std::complex<double>;

namespace detail {

inline bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey on strided data. sign = -1 forward.
inline void fft_1d(cplx* data, int n, int stride, int sign,
                   const std::vector<cplx>& twiddle) {
  // bit reversal
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i * stride], data[j * stride]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const int step = n / len;
    for (int i = 0; i < n; i += len) {
      for (int k = 0; k < len / 2; ++k) {
        cplx w = twiddle[static_cast<std::size_t>(k) * step];
        if (sign > 0) w = std::conj(w);
        cplx* a = data + (i + k) * stride;
        cplx* b = data + (i + k + len / 2) * stride;
        cplx t = *b * w;
        *b = *a - t;
        *a += t;
      }
    }
  }
}

inline std::vector<cplx> make_twiddle(int n) {
  std::vector<cplx> tw(n / 2);
  for (int k = 0; k < n / 2; ++k) {
    double ang = -2.0 * std::numbers::pi * k / n;
    tw[k] = {std::cos(ang), std::sin(ang)};
  }
  return tw;
}

}  // namespace detail

/// In-place 2D DFT of a row-major rows x cols buffer. Forward uses the
/// exp(-j...) kernel, matching conj(basis) projections. Both dimensions
/// must be powers of two.
inline void fft2(std::vector<cplx>& data, int rows, int cols, bool inverse = false) {
  if (!detail::is_pow2(rows) || !detail::is_pow2(cols))
    throw std::invalid_argument("fft2: dimensions must be powers of two");
  if (data.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("fft2: buffer size mismatch");
  const int sign = inverse ? 1 : -1;
  const std::vector<cplx> tw_col = detail::make_twiddle(cols);
  for (int r = 0; r < rows; ++r)
    detail::fft_1d(data.data() + static_cast<std::size_t>(r) * cols, cols, 1, sign, tw_col);
  const std::vector<cplx> tw_row = detail::make_twiddle(rows);
  for (int c = 0; c < cols; ++c)
    detail::fft_1d(data.data() + c, rows, cols, sign, tw_row);
  if (inverse) {
    const double scale = 1.0 / (static_cast<double>(rows) * cols);
    for (cplx& v : data) v *= scale;
  }
}

}  // namespace srmc

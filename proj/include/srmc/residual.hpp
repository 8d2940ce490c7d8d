#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include "srmc/motion.hpp"

namespace srmc {

namespace detail {

// Orthonormal 8x8 DCT-II matrix.
inline const std::array<std::array<double, 8>, 8>& dct8_matrix() {
  static const auto mat = [] {
    std::array<std::array<double, 8>, 8> m{};
    for (int u = 0; u < 8; ++u) {
      const double alpha = (u == 0) ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int x = 0; x < 8; ++x)
        m[u][x] = alpha * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
    }
    return m;
  }();
  return mat;
}

inline void dct8x8(const double* in, double* out, bool inverse) {
  const auto& c = dct8_matrix();
  double tmp[64];
  // rows
  for (int r = 0; r < 8; ++r) {
    for (int u = 0; u < 8; ++u) {
      double acc = 0.0;
      for (int x = 0; x < 8; ++x)
        acc += (inverse ? c[x][u] : c[u][x]) * in[r * 8 + x];
      tmp[r * 8 + u] = acc;
    }
  }
  // columns
  for (int col = 0; col < 8; ++col) {
    for (int u = 0; u < 8; ++u) {
      double acc = 0.0;
      for (int x = 0; x < 8; ++x)
        acc += (inverse ? c[x][u] : c[u][x]) * tmp[x * 8 + col];
      out[u * 8 + col] = acc;
    }
  }
}

}  // namespace detail

/// Quantized residual of one block: transform indices for full 8x8 tiles,
/// pixel-domain indices for edge tiles smaller than 8x8, all in tile raster
/// order.
struct BlockResidualCode {
  std::vector<std::int32_t> indices;
};

struct CodedResidual {
  BlockResidualCode code;
  std::vector<double> dequantized;  // block_h x block_w
};

/// DCT + uniform mid-tread quantization per 8x8 tile. The dequantized
/// residual is what both encoder and decoder add back to the prediction.
inline CodedResidual code_residual(const std::vector<double>& residual, int block_h,
                                   int block_w, double quant_step) {
  if (quant_step <= 0.0) throw std::invalid_argument("code_residual: quant_step must be > 0");
  CodedResidual out;
  out.dequantized.assign(residual.size(), 0.0);
  for (int tr = 0; tr < block_h; tr += 8) {
    for (int tc = 0; tc < block_w; tc += 8) {
      const int th = std::min(8, block_h - tr), tw = std::min(8, block_w - tc);
      if (th == 8 && tw == 8) {
        double tile[64], coef[64];
        for (int r = 0; r < 8; ++r)
          for (int c = 0; c < 8; ++c)
            tile[r * 8 + c] = residual[static_cast<std::size_t>(tr + r) * block_w + tc + c];
        detail::dct8x8(tile, coef, false);
        double deq[64];
        for (int i = 0; i < 64; ++i) {
          const auto idx = static_cast<std::int32_t>(std::lround(coef[i] / quant_step));
          out.code.indices.push_back(idx);
          deq[i] = idx * quant_step;
        }
        detail::dct8x8(deq, tile, true);
        for (int r = 0; r < 8; ++r)
          for (int c = 0; c < 8; ++c)
            out.dequantized[static_cast<std::size_t>(tr + r) * block_w + tc + c] = tile[r * 8 + c];
      } else {
        // edge tile: pixel-domain quantization
        for (int r = 0; r < th; ++r) {
          for (int c = 0; c < tw; ++c) {
            const double v = residual[static_cast<std::size_t>(tr + r) * block_w + tc + c];
            const auto idx = static_cast<std::int32_t>(std::lround(v / quant_step));
            out.code.indices.push_back(idx);
            out.dequantized[static_cast<std::size_t>(tr + r) * block_w + tc + c] = idx * quant_step;
          }
        }
      }
    }
  }
  return out;
}

/// Reconstructs the dequantized residual from indices alone (decoder path).
inline std::vector<double> decode_residual(const BlockResidualCode& code, int block_h,
                                           int block_w, double quant_step) {
  std::vector<double> out(static_cast<std::size_t>(block_h) * block_w, 0.0);
  std::size_t pos = 0;
  for (int tr = 0; tr < block_h; tr += 8) {
    for (int tc = 0; tc < block_w; tc += 8) {
      const int th = std::min(8, block_h - tr), tw = std::min(8, block_w - tc);
      if (th == 8 && tw == 8) {
        double deq[64], tile[64];
        for (int i = 0; i < 64; ++i) deq[i] = code.indices.at(pos++) * quant_step;
        detail::dct8x8(deq, tile, true);
        for (int r = 0; r < 8; ++r)
          for (int c = 0; c < 8; ++c)
            out[static_cast<std::size_t>(tr + r) * block_w + tc + c] = tile[r * 8 + c];
      } else {
        for (int r = 0; r < th; ++r)
          for (int c = 0; c < tw; ++c)
            out[static_cast<std::size_t>(tr + r) * block_w + tc + c] =
                code.indices.at(pos++) * quant_step;
      }
    }
  }
  return out;
}

/// Length in bits of the order-0 exp-Golomb code of u >= 0.
inline int exp_golomb_len(std::uint32_t u) {
  int bits = 0;
  std::uint64_t v = static_cast<std::uint64_t>(u) + 1;
  while (v >>= 1) ++bits;
  return 2 * bits + 1;
}

/// Signed exp-Golomb length: positive s maps to 2s-1, non-positive to -2s.
inline int exp_golomb_signed_len(int s) {
  const std::uint32_t u = (s > 0) ? static_cast<std::uint32_t>(2 * s - 1)
                                  : static_cast<std::uint32_t>(-2 * s);
  return exp_golomb_len(u);
}

/// Rate of a motion vector: signed exp-Golomb of both components, no prediction.
inline int mv_bits(MotionVector mv) {
  return exp_golomb_signed_len(mv.dx) + exp_golomb_signed_len(mv.dy);
}

/// Zeroth-order entropy in bits of a symbol histogram.
inline double entropy_bits(const std::map<std::int32_t, std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (const auto& [sym, c] : counts) total += c;
  if (total == 0) return 0.0;
  double bits = 0.0;
  for (const auto& [sym, c] : counts)
    if (c > 0) bits += c * std::log2(static_cast<double>(total) / c);
  return bits;
}

}  // namespace srmc

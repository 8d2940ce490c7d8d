#pragma once

#include <cstdint>
#include <cstdlib>
#include <tuple>
#include <vector>

#include "srmc/plane.hpp"

namespace srmc {

/// Displacement in quarter-pel integer units; dx = +4 is one full pixel
/// to the right, dy = +4 one full pixel down.
struct MotionVector {
  int dx = 0;
  int dy = 0;
  bool operator==(const MotionVector&) const = default;
};

struct SearchConfig {
  enum class Subpel { Full, Half };
  int search_range = 16;  // full pixels
  Subpel subpel = Subpel::Half;

  void validate() const {
    if (search_range < 0)
      throw std::invalid_argument("SearchConfig: search_range must be >= 0");
  }
};

/// Bilinear sample at (row + dy/4, col + dx/4) with edge replication.
/// Rounding is fixed half-up: (sum + 8) >> 4.
inline std::uint8_t sample_subpel(const Plane& ref, int row, int col,
                                  MotionVector mv) {
  const int r4 = row * 4 + mv.dy;
  const int c4 = col * 4 + mv.dx;
  // floor division by 4 for negative positions
  const int ri = (r4 >= 0) ? r4 / 4 : -((-r4 + 3) / 4);
  const int ci = (c4 >= 0) ? c4 / 4 : -((-c4 + 3) / 4);
  const int fr = r4 - ri * 4;
  const int fc = c4 - ci * 4;
  if (fr == 0 && fc == 0) return ref.at_clamped(ri, ci);
  const int a = ref.at_clamped(ri, ci);
  const int b = ref.at_clamped(ri, ci + 1);
  const int c = ref.at_clamped(ri + 1, ci);
  const int d = ref.at_clamped(ri + 1, ci + 1);
  const int v = (4 - fr) * ((4 - fc) * a + fc * b) + fr * ((4 - fc) * c + fc * d);
  return static_cast<std::uint8_t>((v + 8) >> 4);
}

/// Sum of absolute differences between the current block and the displaced
/// reference block. Aborts once `abort_above` is exceeded (result is then
/// only guaranteed to be > abort_above).
inline long block_sad(const Plane& cur, const Plane& ref, int block_row,
                      int block_col, int block_h, int block_w, MotionVector mv,
                      long abort_above = -1) {
  long sad = 0;
  const bool integer_mv = (mv.dx % 4 == 0) && (mv.dy % 4 == 0);
  if (integer_mv) {
    const int dr = mv.dy / 4, dc = mv.dx / 4;
    for (int r = 0; r < block_h; ++r) {
      for (int c = 0; c < block_w; ++c) {
        int diff = cur.at(block_row + r, block_col + c) -
                   ref.at_clamped(block_row + r + dr, block_col + c + dc);
        sad += std::abs(diff);
      }
      if (abort_above >= 0 && sad > abort_above) return sad;
    }
  } else {
    for (int r = 0; r < block_h; ++r) {
      for (int c = 0; c < block_w; ++c) {
        int diff = cur.at(block_row + r, block_col + c) -
                   sample_subpel(ref, block_row + r, block_col + c, mv);
        sad += std::abs(diff);
      }
      if (abort_above >= 0 && sad > abort_above) return sad;
    }
  }
  return sad;
}

struct SearchResult {
  MotionVector mv;
  long sad = 0;
};

namespace detail {

// Tie-break order: smallest |dx|+|dy|, then smallest dy, then smallest dx.
inline std::tuple<int, int, int> mv_rank(MotionVector mv) {
  return {std::abs(mv.dx) + std::abs(mv.dy), mv.dy, mv.dx};
}

inline bool mv_beats(long sad, MotionVector mv, long best_sad, MotionVector best) {
  if (sad != best_sad) return sad < best_sad;
  return mv_rank(mv) < mv_rank(best);
}

}  // namespace detail

/// Exhaustive integer search over [-range, range]^2 against the reference
/// frame, optionally refined over the eight half-pel neighbors of the
/// integer optimum.
inline SearchResult motion_search(const Plane& cur, const Plane& ref,
                                  int block_row, int block_col, int block_h,
                                  int block_w, const SearchConfig& cfg) {
  cfg.validate();
  MotionVector best{0, 0};
  long best_sad = block_sad(cur, ref, block_row, block_col, block_h, block_w, best);
  for (int dy = -cfg.search_range; dy <= cfg.search_range; ++dy) {
    for (int dx = -cfg.search_range; dx <= cfg.search_range; ++dx) {
      MotionVector mv{dx * 4, dy * 4};
      if (mv == best) continue;
      long sad = block_sad(cur, ref, block_row, block_col, block_h, block_w, mv, best_sad);
      if (sad > best_sad) continue;
      if (detail::mv_beats(sad, mv, best_sad, best)) {
        best = mv;
        best_sad = sad;
      }
    }
  }
  if (cfg.subpel == SearchConfig::Subpel::Half) {
    const MotionVector center = best;
    for (int dy = -2; dy <= 2; dy += 2) {
      for (int dx = -2; dx <= 2; dx += 2) {
        if (dx == 0 && dy == 0) continue;
        MotionVector mv{center.dx + dx, center.dy + dy};
        long sad = block_sad(cur, ref, block_row, block_col, block_h, block_w, mv, best_sad);
        if (sad > best_sad) continue;
        if (detail::mv_beats(sad, mv, best_sad, best)) {
          best = mv;
          best_sad = sad;
        }
      }
    }
  }
  return {best, best_sad};
}

/// Displaced (interpolated) reference block, row-major block_h x block_w.
inline std::vector<std::uint8_t> motion_compensate(const Plane& ref, int block_row,
                                                   int block_col, int block_h,
                                                   int block_w, MotionVector mv) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(block_h) * block_w);
  for (int r = 0; r < block_h; ++r)
    for (int c = 0; c < block_w; ++c)
      out[static_cast<std::size_t>(r) * block_w + c] =
          sample_subpel(ref, block_row + r, block_col + c, mv);
  return out;
}

}  // namespace srmc

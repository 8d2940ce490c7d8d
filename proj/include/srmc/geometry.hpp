#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "srmc/plane.hpp"

namespace srmc {

enum class Region : std::uint8_t { Padding, Recon, Block };

/// Geometry parameters of the projection window.
struct LayoutConfig {
  int p_rows = 64;           // M
  int p_cols = 64;           // N
  int block_size = 16;
  double rho_hat = 0.8;      // isotropic decay base
  double mu = 0.5;           // weight of the motion compensated block
  int decision_bar = 4;      // width of the decision bar left of / above the block

  void validate() const {
    auto pow2 = [](int v) { return v > 0 && (v & (v - 1)) == 0; };
    if (!pow2(p_rows) || !pow2(p_cols))
      throw std::invalid_argument("LayoutConfig: window dimensions must be powers of two");
    if (block_size <= 0 || p_rows < 2 * block_size || p_cols < 2 * block_size)
      throw std::invalid_argument("LayoutConfig: window must hold the block and its neighborhood");
    if (!(rho_hat > 0.0 && rho_hat <= 1.0))
      throw std::invalid_argument("LayoutConfig: rho_hat must lie in (0,1]");
    if (mu < 0.0)
      throw std::invalid_argument("LayoutConfig: mu must be non-negative");
    if (decision_bar < 0 || decision_bar > block_size)
      throw std::invalid_argument("LayoutConfig: decision bar out of range");
  }
};

/// Which of the four causal neighbor blocks exist inside the frame.
struct NeighborAvailability {
  bool left = false;
  bool top_left = false;
  bool top = false;
  bool top_right = false;

  static NeighborAvailability all() { return {true, true, true, true}; }
  static NeighborAvailability none() { return {}; }

  bool any() const { return left || top_left || top || top_right; }
  int bits() const {
    return (left ? 1 : 0) | (top_left ? 2 : 0) | (top ? 4 : 0) | (top_right ? 8 : 0);
  }
};

/// Region partition and per-pixel weights of one projection window.
/// Immutable once built.
struct ProjectionLayout {
  LayoutConfig config;
  NeighborAvailability availability;
  int block_row = 0;  // origin of the block inside the window
  int block_col = 0;
  std::vector<Region> region;      // p_rows * p_cols, row-major
  std::vector<std::uint8_t> d_flag;  // 1 where the pixel belongs to the decision bar
  std::vector<double> weight;

  int rows() const { return config.p_rows; }
  int cols() const { return config.p_cols; }
  std::size_t index(int m, int n) const {
    return static_cast<std::size_t>(m) * config.p_cols + n;
  }
  Region region_at(int m, int n) const { return region[index(m, n)]; }

  double weight_at(int m, int n) const {
    if (m < 0 || m >= rows() || n < 0 || n >= cols())
      throw std::out_of_range("weight_at: coordinates outside the window");
    return weight[index(m, n)];
  }

  std::size_t count(Region r) const {
    std::size_t c = 0;
    for (Region v : region) c += (v == r);
    return c;
  }

  /// Decision-bar coordinates, row-major order.
  std::vector<std::pair<int, int>> decision_pixels() const {
    std::vector<std::pair<int, int>> out;
    for (int m = 0; m < rows(); ++m)
      for (int n = 0; n < cols(); ++n)
        if (d_flag[index(m, n)]) out.emplace_back(m, n);
    return out;
  }

  /// Weight map scaled to 8 bit for debugging.
  Plane weight_plane() const {
    Plane p(cols(), rows());
    for (std::size_t i = 0; i < weight.size(); ++i)
      p.samples[i] = static_cast<std::uint8_t>(std::lround(weight[i] * 255.0));
    return p;
  }
};

/// Builds the window partition: block centered, available neighbor blocks
/// adjacent to it, decision bar clipped to the reconstructed region, and
/// the isotropic weight map.
inline ProjectionLayout build_layout(const LayoutConfig& cfg,
                                     const NeighborAvailability& avail) {
  cfg.validate();
  ProjectionLayout lay;
  lay.config = cfg;
  lay.availability = avail;
  const int M = cfg.p_rows, N = cfg.p_cols, b = cfg.block_size;
  lay.block_row = (M - b) / 2;
  lay.block_col = (N - b) / 2;
  lay.region.assign(static_cast<std::size_t>(M) * N, Region::Padding);
  lay.d_flag.assign(lay.region.size(), 0);
  lay.weight.assign(lay.region.size(), 0.0);

  auto mark = [&](int row0, int col0, Region r) {
    for (int m = row0; m < row0 + b; ++m)
      for (int n = col0; n < col0 + b; ++n) lay.region[lay.index(m, n)] = r;
  };
  mark(lay.block_row, lay.block_col, Region::Block);
  if (avail.left) mark(lay.block_row, lay.block_col - b, Region::Recon);
  if (avail.top_left) mark(lay.block_row - b, lay.block_col - b, Region::Recon);
  if (avail.top) mark(lay.block_row - b, lay.block_col, Region::Recon);
  if (avail.top_right) mark(lay.block_row - b, lay.block_col + b, Region::Recon);

  // Decision bar: `decision_bar` pixels directly above (including the
  // corner) and to the left of the block, kept only where reconstructed.
  const int d = cfg.decision_bar;
  auto flag_d = [&](int m, int n) {
    if (lay.region[lay.index(m, n)] == Region::Recon) lay.d_flag[lay.index(m, n)] = 1;
  };
  for (int m = lay.block_row - d; m < lay.block_row; ++m)
    for (int n = lay.block_col - d; n < lay.block_col + b; ++n) flag_d(m, n);
  for (int m = lay.block_row; m < lay.block_row + b; ++m)
    for (int n = lay.block_col - d; n < lay.block_col; ++n) flag_d(m, n);

  const double cm = (M - 1) / 2.0, cn = (N - 1) / 2.0;
  for (int m = 0; m < M; ++m) {
    for (int n = 0; n < N; ++n) {
      switch (lay.region[lay.index(m, n)]) {
        case Region::Block:
          lay.weight[lay.index(m, n)] = cfg.mu;
          break;
        case Region::Recon:
          lay.weight[lay.index(m, n)] =
              std::pow(cfg.rho_hat, std::sqrt((m - cm) * (m - cm) + (n - cn) * (n - cn)));
          break;
        case Region::Padding:
          break;
      }
    }
  }
  return lay;
}

}  // namespace srmc

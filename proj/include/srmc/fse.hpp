#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "srmc/fft.hpp"
#include "srmc/geometry.hpp"

namespace srmc {

struct ApproxConfig {
  int iterations = 200;
  double gamma = 0.5;          // orthogonality deficiency compensation
  double energy_floor = 1e-6;  // stop early once weighted residual energy drops below

  void validate() const {
    if (iterations < 1) throw std::invalid_argument("ApproxConfig: iterations must be >= 1");
    if (!(gamma > 0.0 && gamma <= 1.0))
      throw std::invalid_argument("ApproxConfig: gamma must lie in (0,1]");
  }
};

/// phi_k[m,n] = exp(+j 2pi (k1 m / M + k2 n / N))
inline cplx basis_function(int k1, int k2, int m, int n, int M, int N) {
  if (k1 < 0 || k1 >= M || k2 < 0 || k2 >= N)
    throw std::out_of_range("basis_function: frequency index out of range");
  const double ang = 2.0 * std::numbers::pi *
                     (static_cast<double>(k1) * m / M + static_cast<double>(k2) * n / N);
  return {std::cos(ang), std::sin(ang)};
}

struct ProjectionSet {
  std::vector<cplx> numerators;  // p_num(k) = sum w * residual * conj(phi_k)
  double normalization = 0.0;    // n(k) = sum w, identical for every DFT index
  int rows = 0, cols = 0;
};

/// Weighted projections onto every basis function at once: one forward FFT
/// of the weighted residual.
inline ProjectionSet weighted_projection_all(const std::vector<double>& residual,
                                             const std::vector<double>& weights,
                                             int rows, int cols) {
  const std::size_t size = static_cast<std::size_t>(rows) * cols;
  if (residual.size() != size || weights.size() != size)
    throw std::invalid_argument("weighted_projection_all: dimension mismatch");
  ProjectionSet ps;
  ps.rows = rows;
  ps.cols = cols;
  ps.numerators.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    ps.numerators[i] = weights[i] * residual[i];
    ps.normalization += weights[i];
  }
  fft2(ps.numerators, rows, cols);
  return ps;
}

struct ParametricModel {
  int rows = 0, cols = 0;
  std::vector<cplx> coefficients;              // dense, rows*cols
  std::vector<std::pair<int, int>> selected;   // (k1,k2) per iteration
  std::vector<double> model;                   // g[m,n]

  /// Direct superposition of the stored coefficients; independent of the
  /// incrementally maintained raster. Used for consistency checks.
  std::vector<cplx> render_from_coefficients() const {
    std::vector<cplx> out(static_cast<std::size_t>(rows) * cols, cplx{0.0, 0.0});
    for (int k1 = 0; k1 < rows; ++k1) {
      for (int k2 = 0; k2 < cols; ++k2) {
        const cplx c = coefficients[static_cast<std::size_t>(k1) * cols + k2];
        if (c == cplx{0.0, 0.0}) continue;
        for (int m = 0; m < rows; ++m)
          for (int n = 0; n < cols; ++n)
            out[static_cast<std::size_t>(m) * cols + n] +=
                c * basis_function(k1, k2, m, n, rows, cols);
      }
    }
    return out;
  }
};

/// Iterative weighted selective approximation state. One step() selects the
/// basis function with the largest weighted-energy decrease, updates its
/// coefficient (jointly with its conjugate partner) and keeps the residual,
/// the model raster and the residual spectrum consistent.
///
/// The spectrum of the weighted residual is updated incrementally via the
/// spectrum of the weight map: subtracting dc*phi_k from the residual shifts
/// the weight spectrum by k in the transform domain.
class FseState {
 public:
  FseState(std::vector<double> signal, std::vector<double> weights, int rows, int cols)
      : rows_(rows), cols_(cols), w_(std::move(weights)), r_(std::move(signal)) {
    const std::size_t size = static_cast<std::size_t>(rows_) * cols_;
    if (w_.size() != size || r_.size() != size)
      throw std::invalid_argument("FseState: dimension mismatch");
    g_.assign(size, 0.0);
    coeff_.assign(size, cplx{0.0, 0.0});

    std::vector<cplx> tmp(size);
    for (std::size_t i = 0; i < size; ++i) tmp[i] = w_[i];
    fft2(tmp, rows_, cols_);
    wf_re_.resize(size);
    wf_im_.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      wf_re_[i] = tmp[i].real();
      wf_im_[i] = tmp[i].imag();
    }

    norm_ = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      tmp[i] = w_[i] * r_[i];
      norm_ += w_[i];
    }
    fft2(tmp, rows_, cols_);
    // the weighted residual is real, so its spectrum is conjugate-symmetric
    // and the scan/update below only ever needs rows 0..M/2: the lower
    // linearized index of any conjugate pair always falls in that half
    spec_rows_ = rows_ / 2 + 1;
    const std::size_t half = static_cast<std::size_t>(spec_rows_) * cols_;
    rf_re_.resize(half);
    rf_im_.resize(half);
    for (std::size_t i = 0; i < half; ++i) {
      rf_re_[i] = tmp[i].real();
      rf_im_[i] = tmp[i].imag();
    }

    energy_ = 0.0;
    for (std::size_t i = 0; i < size; ++i) energy_ += w_[i] * r_[i] * r_[i];
    rescan_argmax();
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double normalization() const { return norm_; }
  const std::vector<double>& model() const { return g_; }
  const std::vector<double>& residual() const { return r_; }
  const std::vector<cplx>& coefficients() const { return coeff_; }
  const std::vector<std::pair<int, int>>& selected() const { return selected_; }

  double weighted_energy() const { return energy_; }

  /// One selection + coefficient update. Returns the magnitude of the
  /// coefficient increment (zero when nothing can be selected).
  double step(double gamma) {
    if (norm_ <= 0.0) return 0.0;
    const int M = rows_, N = cols_;
    // argmax |p_num(k)|^2, ties to the lowest linearized index; conjugate
    // partners carry equal energy so the scan lands on the pair
    // representative. Maintained incrementally by update_spectrum().
    const std::size_t best = best_;
    const int k1 = static_cast<int>(best) / N;
    const int k2 = static_cast<int>(best) % N;
    const bool self_conjugate = ((2 * k1) % M == 0) && ((2 * k2) % N == 0);

    cplx dc{gamma * rf_re_[best] / norm_, gamma * rf_im_[best] / norm_};
    if (self_conjugate) dc = cplx{dc.real(), 0.0};  // those bins are real by symmetry

    coeff_[best] += dc;
    const int p1 = (M - k1) % M, p2 = (N - k2) % N;
    if (!self_conjugate)
      coeff_[static_cast<std::size_t>(p1) * N + p2] += std::conj(dc);

    update_spatial(k1, k2, dc, self_conjugate);
    update_spectrum(k1, k2, dc, self_conjugate);

    selected_.emplace_back(k1, k2);
    return std::abs(dc);
  }

 private:
  // residual/model update with u = dc*phi_k (+ conjugate partner term);
  // recomputes the weighted residual energy on the same pass
  void update_spatial(int k1, int k2, cplx dc, bool self_conjugate) {
    const int M = rows_, N = cols_;
    row_re_.resize(M);
    row_im_.resize(M);
    col_re_.resize(N);
    col_im_.resize(N);
    for (int m = 0; m < M; ++m) {
      const double ang = 2.0 * std::numbers::pi * k1 * m / M;
      const double c = std::cos(ang), s = std::sin(ang);
      row_re_[m] = dc.real() * c - dc.imag() * s;
      row_im_[m] = dc.real() * s + dc.imag() * c;
    }
    for (int n = 0; n < N; ++n) {
      const double ang = 2.0 * std::numbers::pi * k2 * n / N;
      col_re_[n] = std::cos(ang);
      col_im_[n] = std::sin(ang);
    }
    const double fac = self_conjugate ? 1.0 : 2.0;
    double energy = 0.0;
    for (int m = 0; m < M; ++m) {
      const double are = fac * row_re_[m], aim = fac * row_im_[m];
      double* rrow = r_.data() + static_cast<std::size_t>(m) * N;
      double* grow = g_.data() + static_cast<std::size_t>(m) * N;
      const double* wrow = w_.data() + static_cast<std::size_t>(m) * N;
      for (int n = 0; n < N; ++n) {
        const double u = are * col_re_[n] - aim * col_im_[n];
        rrow[n] -= u;
        grow[n] += u;
        energy += wrow[n] * rrow[n] * rrow[n];
      }
    }
    energy_ = energy;
  }

  void rescan_argmax() {
    best_ = 0;
    double best_e = rf_re_[0] * rf_re_[0] + rf_im_[0] * rf_im_[0];
    for (std::size_t i = 1; i < rf_re_.size(); ++i) {
      const double e = rf_re_[i] * rf_re_[i] + rf_im_[i] * rf_im_[i];
      if (e > best_e) {
        best_e = e;
        best_ = i;
      }
    }
  }

  // rf[k] -= dc*Wf[k-k*] (+ conj(dc)*Wf[k+k*]); the circular column shifts
  // are split at their wrap points so every inner segment is contiguous.
  // The argmax for the next selection is refreshed on the same pass, in
  // ascending linearized order so ties keep resolving to the lowest index.
  void update_spectrum(int k1, int k2, cplx dc, bool self_conjugate) {
    const int M = rows_, N = cols_;
    const double dre = dc.real(), dim = dc.imag();
    int cuts[4] = {0, k2, N - k2, N};
    if (cuts[1] > cuts[2]) std::swap(cuts[1], cuts[2]);
    std::size_t best = 0;
    double best_e = -1.0;
    for (int m = 0; m < spec_rows_; ++m) {
      const std::size_t row_m = static_cast<std::size_t>((m - k1 + M) & (M - 1)) * N;
      const std::size_t row_p = static_cast<std::size_t>((m + k1) & (M - 1)) * N;
      double* rre = rf_re_.data() + static_cast<std::size_t>(m) * N;
      double* rim = rf_im_.data() + static_cast<std::size_t>(m) * N;
      for (int seg = 0; seg < 3; ++seg) {
        const int lo = cuts[seg], hi = cuts[seg + 1];
        if (lo >= hi) continue;
        const int off_m = lo - k2 + (lo < k2 ? N : 0);
        const double* wm_re = wf_re_.data() + row_m + off_m - lo;
        const double* wm_im = wf_im_.data() + row_m + off_m - lo;
        if (self_conjugate) {
          for (int n = lo; n < hi; ++n) {
            rre[n] -= dre * wm_re[n] - dim * wm_im[n];
            rim[n] -= dre * wm_im[n] + dim * wm_re[n];
          }
        } else {
          const int off_p = lo + k2 - (lo + k2 >= N ? N : 0);
          const double* wp_re = wf_re_.data() + row_p + off_p - lo;
          const double* wp_im = wf_im_.data() + row_p + off_p - lo;
          for (int n = lo; n < hi; ++n) {
            // dc*wm + conj(dc)*wp
            rre[n] -= dre * (wm_re[n] + wp_re[n]) - dim * (wm_im[n] - wp_im[n]);
            rim[n] -= dre * (wm_im[n] + wp_im[n]) + dim * (wm_re[n] - wp_re[n]);
          }
        }
        for (int n = lo; n < hi; ++n) {
          const double e = rre[n] * rre[n] + rim[n] * rim[n];
          if (e > best_e) {
            best_e = e;
            best = static_cast<std::size_t>(m) * N + n;
          }
        }
      }
    }
    best_ = best;
  }

  int rows_, cols_;
  int spec_rows_ = 0;
  double norm_ = 0.0;
  double energy_ = 0.0;
  std::size_t best_ = 0;
  std::vector<double> w_, r_, g_;
  std::vector<double> rf_re_, rf_im_, wf_re_, wf_im_;
  std::vector<cplx> coeff_;
  std::vector<double> row_re_, row_im_, col_re_, col_im_;
  std::vector<std::pair<int, int>> selected_;
};

struct ApproxInput {
  std::vector<double> signal;  // layout-sized raster, padding zeroed
  const ProjectionLayout* layout = nullptr;
};

/// Per-iteration trace: iteration index, selected k1/k2, |coefficient
/// increment|, weighted residual energy after the update.
using IterationTrace =
    std::function<void(int, int, int, double, double)>;

inline ParametricModel generate_model(const ApproxInput& input, const ApproxConfig& cfg,
                                      const IterationTrace& trace = nullptr) {
  cfg.validate();
  if (input.layout == nullptr) throw std::invalid_argument("generate_model: missing layout");
  const ProjectionLayout& lay = *input.layout;
  FseState state(input.signal, lay.weight, lay.rows(), lay.cols());
  for (int it = 0; it < cfg.iterations; ++it) {
    if (state.weighted_energy() < cfg.energy_floor) break;
    const double inc = state.step(cfg.gamma);
    if (trace) {
      const auto [k1, k2] = state.selected().back();
      trace(it, k1, k2, inc, state.weighted_energy());
    }
  }
  ParametricModel model;
  model.rows = lay.rows();
  model.cols = lay.cols();
  model.coefficients = state.coefficients();
  model.selected = state.selected();
  model.model = state.model();
  return model;
}

/// Block samples cut out of the model: rounded to nearest, clamped to 8 bit.
inline std::vector<std::uint8_t> extract_block(const ParametricModel& model,
                                               const ProjectionLayout& lay) {
  const int b = lay.config.block_size;
  std::vector<std::uint8_t> out(static_cast<std::size_t>(b) * b);
  for (int r = 0; r < b; ++r) {
    for (int c = 0; c < b; ++c) {
      const double v = model.model[lay.index(lay.block_row + r, lay.block_col + c)];
      const long q = std::lround(v);
      out[static_cast<std::size_t>(r) * b + c] =
          static_cast<std::uint8_t>(q < 0 ? 0 : (q > 255 ? 255 : q));
    }
  }
  return out;
}

/// Model samples over the decision bar, in decision_pixels() order.
inline std::vector<double> model_on_decision(const ParametricModel& model,
                                             const ProjectionLayout& lay) {
  std::vector<double> out;
  for (const auto& [m, n] : lay.decision_pixels()) out.push_back(model.model[lay.index(m, n)]);
  return out;
}

}  // namespace srmc

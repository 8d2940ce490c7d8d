#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace srmc {

struct RdPoint {
  double quant_step = 0.0;  // informational
  double rate_kbps = 0.0;
  double psnr_db = 0.0;
};

struct RdCurve {
  std::string label;
  std::vector<RdPoint> points;  // sorted by rate, strictly increasing

  void validate() const {
    if (points.size() < 4)
      throw std::invalid_argument("RdCurve: need at least 4 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!(points[i].rate_kbps > 0.0) || !(points[i].psnr_db > 0.0) ||
          !std::isfinite(points[i].psnr_db))
        throw std::invalid_argument("RdCurve: points must have finite positive rate and PSNR");
      if (i > 0 && points[i].rate_kbps <= points[i - 1].rate_kbps)
        throw std::invalid_argument("RdCurve: rate must be strictly increasing");
    }
  }
};

namespace detail {

// Least-squares cubic y(x); x is shifted by its mean for conditioning.
struct CubicFit {
  double shift = 0.0;
  std::array<double, 4> coef{};  // c0 + c1 x + c2 x^2 + c3 x^3

  double eval(double x) const {
    const double t = x - shift;
    return coef[0] + t * (coef[1] + t * (coef[2] + t * coef[3]));
  }
  double derivative(double x) const {
    const double t = x - shift;
    return coef[1] + t * (2 * coef[2] + t * 3 * coef[3]);
  }
  double integral(double lo, double hi) const {
    auto anti = [&](double x) {
      const double t = x - shift;
      return t * (coef[0] + t * (coef[1] / 2 + t * (coef[2] / 3 + t * coef[3] / 4)));
    };
    return anti(hi) - anti(lo);
  }
};

inline CubicFit fit_cubic(const std::vector<double>& x, const std::vector<double>& y) {
  CubicFit fit;
  for (double v : x) fit.shift += v;
  fit.shift /= static_cast<double>(x.size());

  // normal equations for degree 3
  double a[4][5] = {};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = x[i] - fit.shift;
    double powers[7] = {1, t, t * t, t * t * t, 0, 0, 0};
    powers[4] = powers[3] * t;
    powers[5] = powers[4] * t;
    powers[6] = powers[5] * t;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) a[r][c] += powers[r + c];
      a[r][4] += powers[r] * y[i];
    }
  }
  // Gaussian elimination with partial pivoting
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    for (int c = 0; c < 5; ++c) std::swap(a[col][c], a[pivot][c]);
    if (std::abs(a[col][col]) < 1e-14)
      throw std::runtime_error("bd_rate: singular polynomial fit");
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
    }
  }
  for (int r = 0; r < 4; ++r) fit.coef[r] = a[r][4] / a[r][r];
  return fit;
}

// Monotone piecewise-cubic Hermite (Fritsch-Carlson slopes).
struct Pchip {
  std::vector<double> x, y, d;

  static Pchip build(const std::vector<double>& xs, const std::vector<double>& ys) {
    Pchip p;
    p.x = xs;
    p.y = ys;
    const std::size_t n = xs.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = xs[i + 1] - xs[i];
      delta[i] = (ys[i + 1] - ys[i]) / h[i];
    }
    p.d.assign(n, 0.0);
    p.d[0] = delta[0];
    p.d[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        p.d[i] = 0.0;
      } else {
        const double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
        p.d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    return p;
  }

  // integral of the interpolant over [lo,hi]; extrapolates linearly outside
  double integral(double lo, double hi) const {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double a = std::max(lo, x[i]), b = std::min(hi, x[i + 1]);
      if (a >= b) continue;
      const double h = x[i + 1] - x[i];
      // Hermite basis integrated on normalized coordinates
      auto seg = [&](double t) {
        const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
        const double H00 = t - t3 + t4 / 2.0;
        const double H10 = t2 / 2.0 - 2.0 * t3 / 3.0 + t4 / 4.0;
        const double H01 = t3 - t4 / 2.0;
        const double H11 = -t3 / 3.0 + t4 / 4.0;
        return h * (y[i] * H00 + h * d[i] * H10 + y[i + 1] * H01 + h * d[i + 1] * H11);
      };
      acc += seg((b - x[i]) / h) - seg((a - x[i]) / h);
    }
    return acc;
  }
};

}  // namespace detail

struct BdResult {
  double percent = 0.0;
  enum class Method { Polynomial, Pchip } method = Method::Polynomial;
};

/// Bjontegaard delta rate: cubic fits of log10(rate) over PSNR, integrated
/// over the common PSNR interval. Negative means the test curve saves rate.
/// Non-monotone polynomial fits fall back to monotone Hermite interpolation.
inline BdResult bd_rate(const RdCurve& anchor, const RdCurve& test) {
  anchor.validate();
  test.validate();

  auto extract = [](const RdCurve& c) {
    std::vector<double> x, y;
    for (const RdPoint& p : c.points) {
      x.push_back(p.psnr_db);
      y.push_back(std::log10(p.rate_kbps));
    }
    // sort by PSNR for interpolation
    std::vector<std::size_t> order(x.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> xs, ys;
    for (std::size_t i : order) {
      if (!xs.empty() && x[i] <= xs.back())
        throw std::invalid_argument("bd_rate: PSNR values must be distinct");
      xs.push_back(x[i]);
      ys.push_back(y[i]);
    }
    return std::pair{xs, ys};
  };
  const auto [ax, ay] = extract(anchor);
  const auto [tx, ty] = extract(test);

  const double lo = std::max(ax.front(), tx.front());
  const double hi = std::min(ax.back(), tx.back());
  if (!(hi > lo)) throw std::invalid_argument("bd_rate: PSNR ranges do not overlap");

  const detail::CubicFit fa = detail::fit_cubic(ax, ay);
  const detail::CubicFit ft = detail::fit_cubic(tx, ty);

  bool monotone = true;
  for (int i = 0; i <= 128 && monotone; ++i) {
    const double p = lo + (hi - lo) * i / 128.0;
    if (fa.derivative(p) < -1e-9 || ft.derivative(p) < -1e-9) monotone = false;
  }

  BdResult res;
  double diff;
  if (monotone) {
    diff = (ft.integral(lo, hi) - fa.integral(lo, hi)) / (hi - lo);
    res.method = BdResult::Method::Polynomial;
  } else {
    const auto pa = detail::Pchip::build(ax, ay);
    const auto pt = detail::Pchip::build(tx, ty);
    diff = (pt.integral(lo, hi) - pa.integral(lo, hi)) / (hi - lo);
    res.method = BdResult::Method::Pchip;
  }
  res.percent = 100.0 * (std::pow(10.0, diff) - 1.0);
  return res;
}

}  // namespace srmc

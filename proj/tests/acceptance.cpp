// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <vector>

#include "srmc/bdrate.hpp"
#include "srmc/codec.hpp"
#include "srmc/decision.hpp"
#include "srmc/fse.hpp"
#include "srmc/metrics.hpp"
#include "srmc/motion.hpp"
#include "srmc/synthetic.hpp"

using namespace srmc;

namespace {

int failures = 0;

void report(int criterion, bool pass, const char* label, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, label,
              detail.c_str());
  if (!pass) ++failures;
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> random_raster(std::size_t n, std::uint32_t seed, double lo, double hi) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(n);
  for (double& v : out) v = dist(rng);
  return out;
}

// ---- criterion 1: FFT projections vs direct double-loop sums ----
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  double max_err = 0.0;
  int pairs = 0;
  for (int size : {8, 16}) {
    for (std::uint32_t trial = 0; trial < 50; ++trial) {  // 50 per size, 100 total
      const auto residual =
          random_raster(static_cast<std::size_t>(size) * size, 11 + trial, -255.0, 255.0);
      const auto weights =
          random_raster(static_cast<std::size_t>(size) * size, 77 + trial, 0.0, 1.0);
      const ProjectionSet ps = weighted_projection_all(residual, weights, size, size);
      for (int k1 = 0; k1 < size; ++k1)
        for (int k2 = 0; k2 < size; ++k2) {
          cplx acc{0.0, 0.0};
          for (int m = 0; m < size; ++m)
            for (int n = 0; n < size; ++n)
              acc += weights[static_cast<std::size_t>(m) * size + n] *
                     residual[static_cast<std::size_t>(m) * size + n] *
                     std::conj(basis_function(k1, k2, m, n, size, size));
          max_err = std::max(max_err,
                             std::abs(ps.numerators[static_cast<std::size_t>(k1) * size + k2] - acc));
        }
      ++pairs;
    }
  }
  const double dt = seconds_since(t0);
  report(1, max_err < 1e-9 && dt < 10.0, "FSE projection oracle equivalence",
         std::to_string(pairs) + " pairs, max |err| = " + std::to_string(max_err) + ", " +
             std::to_string(dt) + " s");
}

// ---- criteria 2 + 3: monotone convergence, realness, rendered-sum ----
void criteria_2_3() {
  LayoutConfig lcfg;  // 64x64, rho_hat 0.8, mu 0.5
  const ProjectionLayout lay = build_layout(lcfg, NeighborAvailability::all());
  int energy_violations = 0;
  double max_imag = 0.0, max_render_err = 0.0;
  for (std::uint32_t run = 0; run < 50; ++run) {
    std::vector<double> signal(lay.weight.size(), 0.0);
    const auto values = random_raster(signal.size(), 500 + run, 0.0, 255.0);
    for (std::size_t i = 0; i < signal.size(); ++i)
      if (lay.region[i] != Region::Padding) signal[i] = values[i];

    FseState state(signal, lay.weight, lay.rows(), lay.cols());
    double prev = state.weighted_energy();
    for (int it = 0; it < 200; ++it) {
      state.step(0.5);
      const double e = state.weighted_energy();
      if (e > prev * (1.0 + 1e-12) + 1e-9) ++energy_violations;
      prev = e;
    }

    ParametricModel model;
    model.rows = lay.rows();
    model.cols = lay.cols();
    model.coefficients = state.coefficients();
    model.model = state.model();
    const auto rendered = model.render_from_coefficients();
    for (std::size_t i = 0; i < rendered.size(); ++i) {
      max_imag = std::max(max_imag, std::abs(rendered[i].imag()));
      max_render_err = std::max(max_render_err, std::abs(rendered[i].real() - model.model[i]));
    }
  }
  report(2, energy_violations == 0, "monotone weighted residual energy",
         "50 runs x 200 iterations, violations = " + std::to_string(energy_violations));
  report(3, max_imag < 1e-9 && max_render_err < 1e-9, "realness and rendered-sum consistency",
         "max imag = " + std::to_string(max_imag) +
             ", max |g - sum| = " + std::to_string(max_render_err));
}

// ---- criterion 4: decision correctness ----
void criterion_4() {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> v(0.0, 255.0);
  std::uniform_int_distribution<std::size_t> len(0, 144);
  std::uniform_int_distribution<int> tie(0, 4);
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = len(rng);
    std::vector<double> s(n), g(n), mc(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = v(rng);
      g[i] = v(rng);
      mc[i] = (tie(rng) == 0) ? g[i] : v(rng);  // occasional exact ties
    }
    const DecisionOutcome out = decide(s, g, mc);
    if (out.chosen == DecisionOutcome::Choice::Refined) {
      if (!(out.sad_refined < out.sad_direct)) ++bad;
    } else {
      if (out.sad_direct > out.sad_refined) ++bad;
    }
    if (n == 0 && out.chosen != DecisionOutcome::Choice::Direct) ++bad;
    if (out.sad_refined == out.sad_direct && out.chosen != DecisionOutcome::Choice::Direct)
      ++bad;
  }
  report(4, bad == 0, "implicit decision correctness",
         "1000 randomized triples, violations = " + std::to_string(bad));
}

// ---- criterion 5: decoder replay ----
void criterion_5() {
  const Sequence seq = make_luma_ramp_clip(96, 96, 10, 31337);
  CodecConfig cfg;
  const EncodeResult res = encode_sequence(seq, cfg);
  const Sequence replay = decode_stream(res.stream);
  std::size_t mismatches = 0;
  for (std::size_t f = 0; f < seq.frames.size(); ++f)
    for (std::size_t i = 0; i < res.reconstructed.frames[f].samples.size(); ++i)
      if (res.reconstructed.frames[f].samples[i] != replay.frames[f].samples[i]) ++mismatches;
  report(5, mismatches == 0, "decoder replay bit-exact",
         "10 frames, sample mismatches = " + std::to_string(mismatches));
}

// ---- criterion 6: motion search optimality ----
void criterion_6() {
  SearchConfig cfg;
  cfg.search_range = 4;
  cfg.subpel = SearchConfig::Subpel::Full;
  int bad = 0;
  for (std::uint32_t trial = 0; trial < 20; ++trial) {
    std::mt19937 rng(4000 + trial);
    std::uniform_int_distribution<int> dist(0, 255);
    Plane cur(64, 64), ref(64, 64);
    for (auto& s : cur.samples) s = static_cast<std::uint8_t>(dist(rng));
    for (auto& s : ref.samples) s = static_cast<std::uint8_t>(dist(rng));
    const auto [mv, sad] = motion_search(cur, ref, 24, 24, 16, 16, cfg);
    long best = -1;
    for (int dy = -4; dy <= 4; ++dy)
      for (int dx = -4; dx <= 4; ++dx) {
        const long s = block_sad(cur, ref, 24, 24, 16, 16, {dx * 4, dy * 4});
        if (best < 0 || s < best) best = s;
      }
    if (sad != best) ++bad;
  }
  report(6, bad == 0, "full-search optimality at range 4",
         "20 frame pairs, mismatches = " + std::to_string(bad));
}

// ---- criterion 7: directional reproduction on synthetic clips ----
struct SweepOutcome {
  RdCurve direct, refined;
  double mean_pred_direct = 0.0, mean_pred_refined = 0.0;
};

SweepOutcome sweep(const Sequence& seq, const std::vector<double>& grid) {
  SweepOutcome out;
  out.direct.label = "direct";
  out.refined.label = "refined";
  for (double q : grid) {
    for (bool refine : {false, true}) {
      CodecConfig cfg;
      cfg.quant_step = q;
      cfg.refinement_enabled = refine;
      const EncodeResult res = encode_sequence(seq, cfg);

      double bits = 0.0, sse = 0.0, pred_direct = 0.0, pred_final = 0.0;
      std::size_t samples = 0;
      for (std::size_t f = 0; f < res.reports.size(); ++f) {
        bits += res.reports[f].rate_bits;
        if (f == 0) continue;
        sse += mse(seq.frames[f], res.reconstructed.frames[f]) * seq.frames[f].samples.size();
        samples += seq.frames[f].samples.size();
        pred_direct += res.reports[f].prediction_psnr_direct;
        pred_final += res.reports[f].prediction_psnr_final;
      }
      RdPoint p;
      p.quant_step = q;
      p.rate_kbps = bits * seq.frame_rate / static_cast<double>(seq.frames.size()) / 1000.0;
      p.psnr_db = psnr_from_mse(sse / static_cast<double>(samples));
      if (std::isfinite(p.psnr_db)) (refine ? out.refined : out.direct).points.push_back(p);
      if (q == 16.0) {
        const double frames = static_cast<double>(res.reports.size() - 1);
        if (refine)
          out.mean_pred_refined = pred_final / frames;
        else
          out.mean_pred_direct = pred_direct / frames;
      }
    }
  }
  auto by_rate = [](const RdPoint& a, const RdPoint& b) { return a.rate_kbps < b.rate_kbps; };
  std::sort(out.direct.points.begin(), out.direct.points.end(), by_rate);
  std::sort(out.refined.points.begin(), out.refined.points.end(), by_rate);
  return out;
}

void criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> grid = {4, 8, 16, 32, 64};

  const Sequence ramp = make_luma_ramp_clip(352, 288, 30, 7001, 5, 0, 2);
  const SweepOutcome ramp_out = sweep(ramp, grid);
  const double gain = ramp_out.mean_pred_refined - ramp_out.mean_pred_direct;
  const double ramp_bd = bd_rate(ramp_out.direct, ramp_out.refined).percent;

  const Sequence trans = make_translation_clip(352, 288, 30, 7002, 1, 0);
  const SweepOutcome trans_out = sweep(trans, grid);
  const double trans_bd = bd_rate(trans_out.direct, trans_out.refined).percent;

  const double dt = seconds_since(t0);
  const bool pass = gain >= 0.1 && ramp_bd < 0.0 && std::abs(trans_bd) <= 1.0 && dt < 600.0;
  report(7, pass, "directional reproduction on synthetic clips",
         "luma-ramp pred gain = " + std::to_string(gain) + " dB, ramp BD-rate = " +
             std::to_string(ramp_bd) + "%, translation BD-rate = " + std::to_string(trans_bd) +
             "%, " + std::to_string(dt) + " s");
}

// ---- criterion 8: BD-rate oracle ----
void criterion_8() {
  RdCurve anchor;
  anchor.label = "anchor";
  anchor.points = {{64, 400, 31.0}, {32, 800, 34.5}, {16, 1500, 37.2},
                   {8, 2600, 39.8}, {4, 4100, 41.9}};
  RdCurve doubled = anchor;
  for (RdPoint& p : doubled.points) p.rate_kbps *= 2.0;

  const double identical = bd_rate(anchor, anchor).percent;
  const double twice = bd_rate(anchor, doubled).percent;
  report(8, identical == 0.0 && std::abs(twice - 100.0) <= 0.01, "BD-rate oracle",
         "identical = " + std::to_string(identical) + "%, doubled = " + std::to_string(twice) +
             "%");
}

// ---- criterion 9: ablation identity ----
void criterion_9() {
  const Sequence seq = make_translation_clip(128, 96, 6, 9001, 2, 1);
  CodecConfig cfg;
  cfg.refinement_enabled = false;
  const EncodeResult res = encode_sequence(seq, cfg);

  // independent pure-MC path
  Sequence reference;
  reference.frame_rate = seq.frame_rate;
  reference.frames.push_back(seq.frames[0]);
  const int bs = cfg.layout.block_size;
  for (std::size_t t = 1; t < seq.frames.size(); ++t) {
    const Plane& cur = seq.frames[t];
    const Plane& prev = reference.frames.back();
    Plane out(seq.width(), seq.height());
    for (int br = 0; br < seq.height(); br += bs)
      for (int bc = 0; bc < seq.width(); bc += bs) {
        const int bh = std::min(bs, seq.height() - br), bw = std::min(bs, seq.width() - bc);
        const auto [mv, sad] = motion_search(cur, prev, br, bc, bh, bw, cfg.search);
        const auto pred = motion_compensate(prev, br, bc, bh, bw, mv);
        std::vector<double> residual(pred.size());
        for (int r = 0; r < bh; ++r)
          for (int c = 0; c < bw; ++c)
            residual[r * bw + c] =
                static_cast<double>(cur.at(br + r, bc + c)) - pred[r * bw + c];
        const CodedResidual coded = code_residual(residual, bh, bw, cfg.quant_step);
        for (int r = 0; r < bh; ++r)
          for (int c = 0; c < bw; ++c) {
            const long v = std::lround(pred[r * bw + c] + coded.dequantized[r * bw + c]);
            out.at(br + r, bc + c) =
                static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
          }
      }
    reference.frames.push_back(std::move(out));
  }
  report(9, res.reconstructed == reference, "ablation identity against pure MC",
         res.reconstructed == reference ? "bit-identical" : "reconstructions differ");
}

}  // namespace

int main() {
  criterion_1();
  criteria_2_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_8();
  criterion_9();
  criterion_7();  // longest run last
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}

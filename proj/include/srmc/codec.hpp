#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "srmc/decision.hpp"
#include "srmc/fse.hpp"
#include "srmc/geometry.hpp"
#include "srmc/metrics.hpp"
#include "srmc/motion.hpp"
#include "srmc/plane.hpp"
#include "srmc/residual.hpp"

namespace srmc {

struct CodecConfig {
  enum class Loop { Closed, Open };
  LayoutConfig layout;
  SearchConfig search;
  ApproxConfig approx;
  double quant_step = 16.0;
  bool refinement_enabled = true;
  Loop loop = Loop::Closed;

  void validate() const {
    layout.validate();
    search.validate();
    approx.validate();
    if (quant_step <= 0.0) throw std::invalid_argument("CodecConfig: quant_step must be > 0");
  }
};

struct BlockRecord {
  int block_row = 0;
  int block_col = 0;
  MotionVector mv;
  bool refinement_attempted = false;
  DecisionOutcome decision;
  double sse_direct = 0.0;  // original vs direct MC prediction
  double sse_final = 0.0;   // original vs chosen prediction
};

struct FrameReport {
  int frame_index = 0;
  std::vector<BlockRecord> blocks;
  double prediction_psnr_direct = 0.0;
  double prediction_psnr_final = 0.0;
  double reconstruction_psnr = 0.0;
  double rate_bits = 0.0;
};

struct BlockCode {
  MotionVector mv;
  BlockResidualCode residual;
};

struct EncodedFrame {
  std::vector<BlockCode> blocks;
};

/// Everything a decoder needs to replay the reconstruction bit-exactly.
struct EncodedStream {
  CodecConfig config;
  double frame_rate = 30.0;
  Plane intra_frame;  // frame 0, coded as-is
  std::vector<EncodedFrame> frames;
};

struct EncodeResult {
  Sequence reconstructed;
  Sequence predicted;
  std::vector<FrameReport> reports;
  EncodedStream stream;
};

namespace detail {

inline NeighborAvailability neighbor_availability(int block_row, int block_col,
                                                  int width, int height, int bs) {
  (void)height;
  NeighborAvailability a;
  a.left = block_col >= bs;
  a.top = block_row >= bs;
  a.top_left = a.left && a.top;
  a.top_right = a.top && (block_col + 2 * bs <= width);
  return a;
}

using LayoutCache = std::map<int, ProjectionLayout>;

inline const ProjectionLayout& cached_layout(LayoutCache& cache, const LayoutConfig& cfg,
                                             const NeighborAvailability& avail) {
  auto it = cache.find(avail.bits());
  if (it == cache.end()) it = cache.emplace(avail.bits(), build_layout(cfg, avail)).first;
  return it->second;
}

struct BlockPrediction {
  std::vector<std::uint8_t> direct;
  std::vector<std::uint8_t> final;
  DecisionOutcome decision;
  bool refinement_attempted = false;
};

// Shared by encoder and decoder: given the motion vector, produce the direct
// and (when possible) refined candidates and run the implicit decision.
// `neighbors` is the source of the spatial surroundings: the partially
// reconstructed current frame in closed loop, the original in open loop.
inline BlockPrediction predict_block(const Plane& prev_recon, const Plane& neighbors,
                                     int block_row, int block_col, int block_h, int block_w,
                                     MotionVector mv, const CodecConfig& cfg,
                                     LayoutCache& layouts) {
  BlockPrediction out;
  out.direct = motion_compensate(prev_recon, block_row, block_col, block_h, block_w, mv);
  out.final = out.direct;

  const int bs = cfg.layout.block_size;
  const bool full_block = (block_h == bs && block_w == bs);
  if (!cfg.refinement_enabled || !full_block) return out;
  const NeighborAvailability avail =
      neighbor_availability(block_row, block_col, neighbors.width, neighbors.height, bs);
  if (!avail.any()) return out;

  const ProjectionLayout& lay = cached_layout(layouts, cfg.layout, avail);
  const int origin_row = block_row - lay.block_row;
  const int origin_col = block_col - lay.block_col;

  std::vector<double> signal(lay.weight.size(), 0.0);
  for (int m = 0; m < lay.rows(); ++m) {
    for (int n = 0; n < lay.cols(); ++n) {
      switch (lay.region_at(m, n)) {
        case Region::Recon:
          signal[lay.index(m, n)] = neighbors.at(origin_row + m, origin_col + n);
          break;
        case Region::Block:
          signal[lay.index(m, n)] =
              out.direct[static_cast<std::size_t>(m - lay.block_row) * bs + (n - lay.block_col)];
          break;
        case Region::Padding:
          break;
      }
    }
  }

  out.refinement_attempted = true;
  const ParametricModel model = generate_model({std::move(signal), &lay}, cfg.approx);
  std::vector<std::uint8_t> refined = extract_block(model, lay);

  const std::vector<double> g_on_d = model_on_decision(model, lay);
  std::vector<double> s_on_d, mc_on_d;
  for (const auto& [m, n] : lay.decision_pixels()) {
    s_on_d.push_back(neighbors.at(origin_row + m, origin_col + n));
    mc_on_d.push_back(sample_subpel(prev_recon, origin_row + m, origin_col + n, mv));
  }
  out.decision = decide(s_on_d, g_on_d, mc_on_d);
  if (out.decision.chosen == DecisionOutcome::Choice::Refined) out.final = std::move(refined);
  return out;
}

inline double block_sse(const Plane& orig, int block_row, int block_col, int block_h,
                        int block_w, const std::vector<std::uint8_t>& pred) {
  double acc = 0.0;
  for (int r = 0; r < block_h; ++r)
    for (int c = 0; c < block_w; ++c) {
      const double d = static_cast<double>(orig.at(block_row + r, block_col + c)) -
                       pred[static_cast<std::size_t>(r) * block_w + c];
      acc += d * d;
    }
  return acc;
}

inline void store_block(Plane& frame, int block_row, int block_col, int block_h,
                        int block_w, const std::vector<std::uint8_t>& samples) {
  for (int r = 0; r < block_h; ++r)
    for (int c = 0; c < block_w; ++c)
      frame.at(block_row + r, block_col + c) =
          samples[static_cast<std::size_t>(r) * block_w + c];
}

inline std::vector<std::uint8_t> reconstruct_block(const std::vector<std::uint8_t>& pred,
                                                   const std::vector<double>& deq) {
  std::vector<std::uint8_t> out(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const long v = std::lround(pred[i] + deq[i]);
    out[i] = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
  }
  return out;
}

}  // namespace detail

/// Closed-loop encode: frame 0 passes through as the intra anchor, every
/// later frame is predicted block-by-block in line scan order (motion
/// search, spatial refinement, implicit decision), the residual is
/// transform-coded, and the reconstruction immediately feeds later blocks.
inline EncodeResult encode_sequence(const Sequence& seq, const CodecConfig& cfg) {
  cfg.validate();
  seq.validate();
  if (seq.frames.size() < 2)
    throw std::invalid_argument("encode_sequence: need at least two frames");

  const int w = seq.width(), h = seq.height(), bs = cfg.layout.block_size;
  detail::LayoutCache layouts;

  EncodeResult res;
  res.stream.config = cfg;
  res.stream.frame_rate = seq.frame_rate;
  res.stream.intra_frame = seq.frames[0];
  res.reconstructed.frame_rate = seq.frame_rate;
  res.predicted.frame_rate = seq.frame_rate;
  res.reconstructed.frames.push_back(seq.frames[0]);
  res.predicted.frames.push_back(seq.frames[0]);

  FrameReport intra;
  intra.frame_index = 0;
  intra.rate_bits = 8.0 * static_cast<double>(w) * h;
  intra.prediction_psnr_direct = std::numeric_limits<double>::infinity();
  intra.prediction_psnr_final = std::numeric_limits<double>::infinity();
  intra.reconstruction_psnr = std::numeric_limits<double>::infinity();
  res.reports.push_back(std::move(intra));

  for (std::size_t t = 1; t < seq.frames.size(); ++t) {
    const Plane& cur = seq.frames[t];
    const Plane& prev_recon = res.reconstructed.frames[t - 1];
    Plane recon(w, h);
    Plane pred_frame(w, h);
    FrameReport report;
    report.frame_index = static_cast<int>(t);
    EncodedFrame coded;
    std::map<std::int32_t, std::uint64_t> index_hist;
    double mv_rate = 0.0;
    double sse_direct_sum = 0.0, sse_final_sum = 0.0;

    for (int br = 0; br < h; br += bs) {
      for (int bc = 0; bc < w; bc += bs) {
        const int bh = std::min(bs, h - br), bw = std::min(bs, w - bc);
        const auto [mv, sad] =
            motion_search(cur, prev_recon, br, bc, bh, bw, cfg.search);
        const Plane& neighbors = (cfg.loop == CodecConfig::Loop::Closed) ? recon : cur;
        detail::BlockPrediction bp =
            detail::predict_block(prev_recon, neighbors, br, bc, bh, bw, mv, cfg, layouts);

        std::vector<double> residual(static_cast<std::size_t>(bh) * bw);
        for (int r = 0; r < bh; ++r)
          for (int c = 0; c < bw; ++c)
            residual[static_cast<std::size_t>(r) * bw + c] =
                static_cast<double>(cur.at(br + r, bc + c)) -
                bp.final[static_cast<std::size_t>(r) * bw + c];
        CodedResidual coded_res = code_residual(residual, bh, bw, cfg.quant_step);

        detail::store_block(recon, br, bc, bh, bw,
                            detail::reconstruct_block(bp.final, coded_res.dequantized));
        detail::store_block(pred_frame, br, bc, bh, bw, bp.final);

        for (std::int32_t idx : coded_res.code.indices) ++index_hist[idx];
        mv_rate += mv_bits(mv);
        coded.blocks.push_back({mv, std::move(coded_res.code)});

        BlockRecord rec;
        rec.block_row = br;
        rec.block_col = bc;
        rec.mv = mv;
        rec.refinement_attempted = bp.refinement_attempted;
        rec.decision = bp.decision;
        rec.sse_direct = detail::block_sse(cur, br, bc, bh, bw, bp.direct);
        rec.sse_final = detail::block_sse(cur, br, bc, bh, bw, bp.final);
        sse_direct_sum += rec.sse_direct;
        sse_final_sum += rec.sse_final;
        report.blocks.push_back(std::move(rec));
      }
    }

    const double n_samples = static_cast<double>(w) * h;
    report.prediction_psnr_direct = psnr_from_mse(sse_direct_sum / n_samples);
    report.prediction_psnr_final = psnr_from_mse(sse_final_sum / n_samples);
    report.reconstruction_psnr = psnr(cur, recon);
    report.rate_bits = entropy_bits(index_hist) + mv_rate;

    res.reconstructed.frames.push_back(std::move(recon));
    res.predicted.frames.push_back(std::move(pred_frame));
    res.reports.push_back(std::move(report));
    res.stream.frames.push_back(std::move(coded));
  }
  return res;
}

/// Decoder-side replay: reproduces the reconstruction from motion vectors
/// and residual codes alone, re-running refinement and the implicit
/// decision on decoded data.
inline Sequence decode_stream(const EncodedStream& stream) {
  const CodecConfig& cfg = stream.config;
  cfg.validate();
  if (cfg.loop != CodecConfig::Loop::Closed)
    throw std::invalid_argument("decode_stream: only closed-loop streams are decodable");

  const int w = stream.intra_frame.width, h = stream.intra_frame.height;
  const int bs = cfg.layout.block_size;
  detail::LayoutCache layouts;

  Sequence out;
  out.frame_rate = stream.frame_rate;
  out.frames.push_back(stream.intra_frame);

  for (const EncodedFrame& coded : stream.frames) {
    const Plane& prev_recon = out.frames.back();
    Plane recon(w, h);
    std::size_t block_idx = 0;
    for (int br = 0; br < h; br += bs) {
      for (int bc = 0; bc < w; bc += bs) {
        const int bh = std::min(bs, h - br), bw = std::min(bs, w - bc);
        const BlockCode& bcode = coded.blocks.at(block_idx++);
        detail::BlockPrediction bp =
            detail::predict_block(prev_recon, recon, br, bc, bh, bw, bcode.mv, cfg, layouts);
        const std::vector<double> deq =
            decode_residual(bcode.residual, bh, bw, cfg.quant_step);
        detail::store_block(recon, br, bc, bh, bw,
                            detail::reconstruct_block(bp.final, deq));
      }
    }
    out.frames.push_back(std::move(recon));
  }
  return out;
}

}  // namespace srmc

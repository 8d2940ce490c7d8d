#include <random>

#include <catch_amalgamated.hpp>

#include "srmc/codec.hpp"
#include "srmc/synthetic.hpp"

using namespace srmc;

namespace {

// Small configuration keeping unit tests quick; acceptance runs defaults.
CodecConfig small_cfg() {
  CodecConfig cfg;
  cfg.search.search_range = 4;
  cfg.approx.iterations = 40;
  return cfg;
}

// Independent pure motion compensation pipeline: the reference for the
// ablation identity. Deliberately written without predict_block.
Sequence pure_mc_reference(const Sequence& seq, const CodecConfig& cfg) {
  const int w = seq.width(), h = seq.height(), bs = cfg.layout.block_size;
  Sequence recon;
  recon.frame_rate = seq.frame_rate;
  recon.frames.push_back(seq.frames[0]);
  for (std::size_t t = 1; t < seq.frames.size(); ++t) {
    const Plane& cur = seq.frames[t];
    const Plane& prev = recon.frames.back();
    Plane out(w, h);
    for (int br = 0; br < h; br += bs)
      for (int bc = 0; bc < w; bc += bs) {
        const int bh = std::min(bs, h - br), bw = std::min(bs, w - bc);
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
            out.at(br + r, bc + c) = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
          }
      }
    recon.frames.push_back(std::move(out));
  }
  return recon;
}

}  // namespace

TEST_CASE("zero residual codes to all-zero indices") {
  const std::vector<double> residual(256, 0.0);
  const CodedResidual coded = code_residual(residual, 16, 16, 8.0);
  for (auto idx : coded.code.indices) CHECK(idx == 0);
  for (double v : coded.dequantized) CHECK(v == 0.0);
}

TEST_CASE("constant residual concentrates in the DC index") {
  const std::vector<double> residual(64, 5.0);
  const CodedResidual coded = code_residual(residual, 8, 8, 4.0);
  // orthonormal DCT of a constant c has DC = 8c
  CHECK(coded.code.indices[0] == 10);
  for (std::size_t i = 1; i < coded.code.indices.size(); ++i)
    CHECK(coded.code.indices[i] == 0);
}

TEST_CASE("quantization round trip error is bounded by half a step") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-255.0, 255.0);
  std::vector<double> residual(64);
  for (double& v : residual) v = dist(rng);
  const double q = 16.0;
  const CodedResidual coded= code_residual(residual, 8, 8, q);
  // per-coefficient bound, checked in the transform domain
  double coef[64], tile[64];
  for (int i = 0; i < 64; ++i) tile[i] = residual[i];
  srmc::detail::dct8x8(tile, coef, false);
  for (int i = 0; i < 64; ++i)
    CHECK(std::abs(coef[i] - coded.code.indices[i] * q) <= q / 2 + 1e-9);
}

TEST_CASE("decode_residual inverts code_residual") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> dist(-100.0, 100.0);
  std::vector<double> residual(16 * 16);
  for (double& v : residual) v = dist(rng);
  const CodedResidual coded = code_residual(residual, 16, 16, 8.0);
  const auto decoded = decode_residual(coded.code, 16, 16, 8.0);
  for (std::size_t i = 0; i < decoded.size(); ++i)
    CHECK(decoded[i] == Catch::Approx(coded.dequantized[i]).margin(1e-12));
}

TEST_CASE("edge tiles use pixel-domain quantization") {
  std::vector<double> residual(12 * 12, 9.0);
  const CodedResidual coded = code_residual(residual, 12, 12, 4.0);
  const auto decoded = decode_residual(coded.code, 12, 12, 4.0);
  for (std::size_t i = 0; i < decoded.size(); ++i)
    CHECK(decoded[i] == Catch::Approx(coded.dequantized[i]).margin(1e-12));
  // pixel-domain cells reconstruct round(9/4)*4 = 8
  CHECK(decoded[11] == Catch::Approx(8.0));
}

TEST_CASE("motion vector rate follows exp-Golomb lengths") {
  CHECK(mv_bits({0, 0}) == 2);
  CHECK(exp_golomb_signed_len(4) == 7);  // maps to 7, codeword 0001000
  CHECK(mv_bits({4, 0}) == 7 + 1);
  // symmetry of the signed mapping's length
  for (int dx = -20; dx <= 20; ++dx)
    for (int dy = -20; dy <= 20; ++dy)
      CHECK(mv_bits({dx, dy}) == mv_bits({-dx, -dy}));
}

TEST_CASE("static sequence: zero vectors, zero residual, mv-only rate") {
  const Sequence seq = make_static_clip(64, 64, 3, 21);
  const EncodeResult res = encode_sequence(seq, small_cfg());
  for (std::size_t f = 1; f < res.reports.size(); ++f) {
    const FrameReport& fr = res.reports[f];
    CHECK(std::isinf(fr.reconstruction_psnr));
    double mv_rate = 0.0;
    for (const BlockRecord& b : fr.blocks) {
      CHECK(b.mv == MotionVector{0, 0});
      mv_rate += mv_bits(b.mv);
    }
    // all-zero index distribution has zero entropy
    CHECK(fr.rate_bits == Catch::Approx(mv_rate));
  }
  CHECK(res.reconstructed == seq);
}

TEST_CASE("ablation: disabled refinement equals the pure MC reference bit-exactly") {
  const Sequence seq = make_translation_clip(80, 48, 4, 22);
  CodecConfig cfg = small_cfg();
  cfg.refinement_enabled = false;
  const EncodeResult res = encode_sequence(seq, cfg);
  const Sequence reference = pure_mc_reference(seq, cfg);
  CHECK(res.reconstructed == reference);
  for (std::size_t f = 1; f < res.reports.size(); ++f)
    CHECK(res.reports[f].prediction_psnr_final == res.reports[f].prediction_psnr_direct);
}

TEST_CASE("decoder replay reproduces the reconstruction bit-exactly") {
  const Sequence seq = make_luma_ramp_clip(64, 64, 4, 23);
  const EncodeResult res = encode_sequence(seq, small_cfg());
  const Sequence replay = decode_stream(res.stream);
  REQUIRE(replay.frames.size() == res.reconstructed.frames.size());
  CHECK(replay == res.reconstructed);
}

TEST_CASE("open-loop streams are not decodable") {
  const Sequence seq = make_static_clip(64, 64, 2, 24);
  CodecConfig cfg = small_cfg();
  cfg.loop = CodecConfig::Loop::Open;
  const EncodeResult res = encode_sequence(seq, cfg);
  CHECK_THROWS(decode_stream(res.stream));
}

TEST_CASE("luminance step: refinement improves mean prediction quality") {
  const Sequence seq = make_luma_ramp_clip(96, 96, 5, 25, /*shift_qx=*/5, /*shift_qy=*/0,
                                           /*luma_step=*/10);
  CodecConfig cfg = small_cfg();
  cfg.approx.iterations = 100;
  const EncodeResult res = encode_sequence(seq, cfg);
  double direct = 0.0, refined = 0.0;
  for (std::size_t f = 1; f < res.reports.size(); ++f) {
    direct += res.reports[f].prediction_psnr_direct;
    refined += res.reports[f].prediction_psnr_final;
  }
  CHECK(refined > direct);
}

TEST_CASE("partial edge blocks are coded direct-only") {
  const Sequence seq = make_translation_clip(72, 40, 3, 26);  // not divisible by 16
  const EncodeResult res = encode_sequence(seq, small_cfg());
  for (std::size_t f = 1; f < res.reports.size(); ++f)
    for (const BlockRecord& b : res.reports[f].blocks) {
      const bool partial = (b.block_row + 16 > 40) || (b.block_col + 16 > 72);
      if (partial) CHECK_FALSE(b.refinement_attempted);
    }
  // replay still matches
  CHECK(decode_stream(res.stream) == res.reconstructed);
}

TEST_CASE("sequences shorter than two frames are rejected") {
  Sequence seq;
  seq.frames.emplace_back(32, 32);
  CHECK_THROWS(encode_sequence(seq, small_cfg()));
}

TEST_CASE("closed loop causality: encoder output decodable without originals") {
  // decode_stream never sees the original frames; equality with the encoder
  // reconstruction is the causality witness
  const Sequence seq = make_translation_clip(64, 64, 3, 27, 2, 1);
  CodecConfig cfg = small_cfg();
  cfg.quant_step = 32.0;
  const EncodeResult res = encode_sequence(seq, cfg);
  CHECK(decode_stream(res.stream) == res.reconstructed);
}

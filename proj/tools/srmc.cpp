// Command-line front end: single-shot prediction runs, quantizer sweeps into
// rate-distortion curves, BD-rate between curve files, and model-generation
// debugging on still images.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "srmc/bdrate.hpp"
#include "srmc/codec.hpp"
#include "srmc/reports.hpp"
#include "srmc/synthetic.hpp"
#include "srmc/video_io.hpp"

namespace {

struct CommonOptions {
  std::string input;
  int width = 0;
  int height = 0;
  bool raw_luma_only = false;
  int frames = 30;
  std::uint32_t seed = 1;
  std::string out_dir = ".";
  srmc::CodecConfig codec;
  bool no_refine = false;
  std::string loop = "closed";
  std::string subpel = "half";
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool needs_input) {
  auto* in = cmd->add_option("--input", opt.input,
                             "Input clip: .y4m, raw .yuv (needs --width/--height), or "
                             "synth:{static,translate,ramp}");
  if (needs_input) in->required();
  cmd->add_option("--width", opt.width, "Frame width for raw YUV / synthetic input");
  cmd->add_option("--height", opt.height, "Frame height for raw YUV / synthetic input");
  cmd->add_flag("--raw-luma-only", opt.raw_luma_only, "Raw input has no chroma planes");
  cmd->add_option("--frames", opt.frames, "Frame count for synthetic input");
  cmd->add_option("--seed", opt.seed, "Seed for synthetic-clip generation");
  cmd->add_option("--block-size", opt.codec.layout.block_size, "Block size in pixels");
  cmd->add_option("--search-range", opt.codec.search.search_range, "Motion search range");
  cmd->add_option("--subpel", opt.subpel, "Motion accuracy: full or half")
      ->check(CLI::IsMember({"full", "half"}));
  cmd->add_option("--iterations", opt.codec.approx.iterations, "Approximation iterations");
  cmd->add_option("--rho-hat", opt.codec.layout.rho_hat, "Isotropic decay base");
  cmd->add_option("--mu", opt.codec.layout.mu, "Weight of the motion compensated block");
  cmd->add_option("--gamma", opt.codec.approx.gamma, "Orthogonality compensation factor");
  cmd->add_option("--decision-bar", opt.codec.layout.decision_bar, "Decision bar width");
  cmd->add_option("--quant-step", opt.codec.quant_step, "Quantizer step size");
  cmd->add_flag("--no-refine", opt.no_refine, "Disable the spatial refinement stage");
  cmd->add_option("--loop", opt.loop, "Prediction loop: closed or open")
      ->check(CLI::IsMember({"closed", "open"}));
  cmd->add_option("--out-dir", opt.out_dir, "Output directory");
}

srmc::CodecConfig finish_config(CommonOptions& opt) {
  opt.codec.refinement_enabled = !opt.no_refine;
  opt.codec.loop = (opt.loop == "open") ? srmc::CodecConfig::Loop::Open
                                        : srmc::CodecConfig::Loop::Closed;
  opt.codec.search.subpel = (opt.subpel == "full") ? srmc::SearchConfig::Subpel::Full
                                                   : srmc::SearchConfig::Subpel::Half;
  return opt.codec;
}

srmc::Sequence load_clip(const CommonOptions& opt) {
  if (opt.input.rfind("synth:", 0) == 0) {
    const std::string kind = opt.input.substr(6);
    const int w = opt.width > 0 ? opt.width : 352;
    const int h = opt.height > 0 ? opt.height : 288;
    if (kind == "static") return srmc::make_static_clip(w, h, opt.frames, opt.seed);
    if (kind == "translate") return srmc::make_translation_clip(w, h, opt.frames, opt.seed);
    if (kind == "ramp") return srmc::make_luma_ramp_clip(w, h, opt.frames, opt.seed);
    throw std::runtime_error("unknown synthetic clip kind: " + kind);
  }
  const std::string bytes = srmc::read_file(opt.input);
  if (opt.input.size() >= 4 && opt.input.substr(opt.input.size() - 4) == ".y4m")
    return srmc::read_y4m(bytes);
  if (opt.width <= 0 || opt.height <= 0)
    throw std::runtime_error("raw YUV input needs --width and --height");
  return srmc::read_raw_yuv(bytes, opt.width, opt.height, !opt.raw_luma_only);
}

double sequence_rate_kbps(const std::vector<srmc::FrameReport>& reports, double frame_rate) {
  double bits = 0.0;
  for (const srmc::FrameReport& r : reports) bits += r.rate_bits;
  return bits * frame_rate / static_cast<double>(reports.size()) / 1000.0;
}

// Pooled reconstruction PSNR over the predicted frames (frame 0 is the
// lossless anchor and excluded).
double sequence_recon_psnr(const srmc::Sequence& orig, const srmc::Sequence& recon) {
  double sse = 0.0;
  std::size_t n = 0;
  for (std::size_t f = 1; f < orig.frames.size(); ++f) {
    sse += srmc::mse(orig.frames[f], recon.frames[f]) * orig.frames[f].samples.size();
    n += orig.frames[f].samples.size();
  }
  return srmc::psnr_from_mse(sse / static_cast<double>(n));
}

nlohmann::json aggregate_json(const srmc::EncodeResult& res, const srmc::Sequence& orig) {
  double direct_sum = 0.0, final_sum = 0.0;
  std::size_t p_frames = 0, refined_blocks = 0, total_blocks = 0;
  for (std::size_t f = 1; f < res.reports.size(); ++f) {
    direct_sum += res.reports[f].prediction_psnr_direct;
    final_sum += res.reports[f].prediction_psnr_final;
    ++p_frames;
    for (const srmc::BlockRecord& b : res.reports[f].blocks) {
      ++total_blocks;
      if (b.refinement_attempted &&
          b.decision.chosen == srmc::DecisionOutcome::Choice::Refined)
        ++refined_blocks;
    }
  }
  return {
      {"mean_prediction_psnr_direct", direct_sum / static_cast<double>(p_frames)},
      {"mean_prediction_psnr_final", final_sum / static_cast<double>(p_frames)},
      {"reconstruction_psnr", sequence_recon_psnr(orig, res.reconstructed)},
      {"rate_kbps", sequence_rate_kbps(res.reports, orig.frame_rate)},
      {"blocks_total", total_blocks},
      {"blocks_refined", refined_blocks},
  };
}

int run_predict(CommonOptions& opt) {
  const srmc::CodecConfig cfg = finish_config(opt);
  const srmc::Sequence seq = load_clip(opt);
  const srmc::EncodeResult res = srmc::encode_sequence(seq, cfg);

  std::filesystem::create_directories(opt.out_dir);
  const std::filesystem::path dir(opt.out_dir);
  srmc::write_file((dir / "recon.y4m").string(), srmc::write_y4m(res.reconstructed));
  srmc::write_file((dir / "predicted.y4m").string(), srmc::write_y4m(res.predicted));
  srmc::write_file((dir / "blocks.csv").string(), srmc::blocks_csv(res.reports));
  srmc::write_file((dir / "frames.csv").string(), srmc::frames_csv(res.reports));

  nlohmann::json summary = {{"config", srmc::config_json(cfg)},
                            {"metrics", aggregate_json(res, seq)}};
  srmc::write_file((dir / "summary.json").string(), summary.dump(2) + "\n");
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int run_rd_sweep(CommonOptions& opt, std::vector<double>& grid) {
  srmc::CodecConfig cfg = finish_config(opt);
  const srmc::Sequence seq = load_clip(opt);
  std::sort(grid.begin(), grid.end(), std::greater<>());  // coarse first -> rate increasing

  srmc::RdCurve direct{"direct", {}}, refined{"refined", {}};
  for (double q : grid) {
    for (bool refine : {false, true}) {
      srmc::CodecConfig run_cfg = cfg;
      run_cfg.quant_step = q;
      run_cfg.refinement_enabled = refine;
      const srmc::EncodeResult res = srmc::encode_sequence(seq, run_cfg);
      srmc::RdPoint p;
      p.quant_step = q;
      p.rate_kbps = sequence_rate_kbps(res.reports, seq.frame_rate);
      p.psnr_db = sequence_recon_psnr(seq, res.reconstructed);
      if (!std::isfinite(p.psnr_db)) {
        std::cerr << "note: dropping lossless point at quant_step " << q << '\n';
        continue;
      }
      (refine ? refined : direct).points.push_back(p);
    }
  }

  std::filesystem::create_directories(opt.out_dir);
  const std::filesystem::path dir(opt.out_dir);
  srmc::write_file((dir / "rd_direct.csv").string(), srmc::rd_csv(direct));
  srmc::write_file((dir / "rd_refined.csv").string(), srmc::rd_csv(refined));

  const srmc::BdResult bd = srmc::bd_rate(direct, refined);
  nlohmann::json summary = {
      {"config", srmc::config_json(cfg)},
      {"quant_grid", grid},
      {"bd_rate_refined_vs_direct_percent", bd.percent},
      {"bd_method", bd.method == srmc::BdResult::Method::Polynomial ? "polynomial" : "pchip"},
  };
  srmc::write_file((dir / "summary.json").string(), summary.dump(2) + "\n");
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int run_bdrate(const std::string& anchor_path, const std::string& test_path) {
  const srmc::RdCurve anchor = srmc::parse_rd_csv(srmc::read_file(anchor_path), "anchor");
  const srmc::RdCurve test = srmc::parse_rd_csv(srmc::read_file(test_path), "test");
  const srmc::BdResult bd = srmc::bd_rate(anchor, test);
  nlohmann::json out = {
      {"bd_rate_percent", bd.percent},
      {"method", bd.method == srmc::BdResult::Method::Polynomial ? "polynomial" : "pchip"},
  };
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_extrapolate(CommonOptions& opt) {
  const srmc::CodecConfig cfg = finish_config(opt);
  const srmc::Plane image = srmc::read_pgm(srmc::read_file(opt.input));
  if (image.width != cfg.layout.p_cols || image.height != cfg.layout.p_rows)
    throw std::runtime_error("extrapolate: image must match the projection window size");

  const srmc::ProjectionLayout lay =
      srmc::build_layout(cfg.layout, srmc::NeighborAvailability::all());
  std::vector<double> signal(lay.weight.size(), 0.0);
  for (int m = 0; m < lay.rows(); ++m)
    for (int n = 0; n < lay.cols(); ++n)
      if (lay.region_at(m, n) != srmc::Region::Padding)
        signal[lay.index(m, n)] = image.at(m, n);

  std::ostringstream iter_csv;
  iter_csv << "iteration,k1,k2,coefficient_increment,residual_energy\n" << std::setprecision(10);
  const srmc::ParametricModel model = srmc::generate_model(
      {std::move(signal), &lay}, cfg.approx,
      [&](int it, int k1, int k2, double inc, double energy) {
        iter_csv << it << ',' << k1 << ',' << k2 << ',' << inc << ',' << energy << '\n';
      });

  srmc::Plane rendered(lay.cols(), lay.rows());
  for (std::size_t i = 0; i < model.model.size(); ++i) {
    const long v = std::lround(model.model[i]);
    rendered.samples[i] = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
  }

  std::filesystem::create_directories(opt.out_dir);
  const std::filesystem::path dir(opt.out_dir);
  srmc::write_file((dir / "model.pgm").string(), srmc::write_pgm(rendered));
  srmc::write_file((dir / "weights.pgm").string(), srmc::write_pgm(lay.weight_plane()));
  srmc::write_file((dir / "iterations.csv").string(), iter_csv.str());
  srmc::write_file((dir / "layout.json").string(), srmc::layout_json(lay).dump(2) + "\n");
  std::cout << srmc::layout_json(lay).dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatio-temporal prediction lab: motion compensation with "
               "frequency-selective spatial refinement"};
  app.require_subcommand(1);

  CommonOptions predict_opt, sweep_opt, extra_opt, info_opt;
  std::vector<double> grid = {4, 8, 16, 32, 64};
  std::string anchor_path, test_path;

  CLI::App* predict = app.add_subcommand("predict", "Encode one clip and write outputs");
  add_common_flags(predict, predict_opt, true);

  CLI::App* sweep = app.add_subcommand(
      "rd-sweep", "Sweep quantizer steps with refinement on and off; report BD-rate");
  add_common_flags(sweep, sweep_opt, true);
  sweep->add_option("--quant-grid", grid, "Quantizer steps for the sweep")->delimiter(',');

  CLI::App* bd = app.add_subcommand("bdrate", "BD-rate between two rate-distortion CSV files");
  bd->add_option("anchor", anchor_path, "Anchor curve CSV")->required();
  bd->add_option("test", test_path, "Test curve CSV")->required();

  CLI::App* extra = app.add_subcommand(
      "extrapolate", "Run model generation on one window-sized PGM image");
  add_common_flags(extra, extra_opt, true);

  CLI::App* info = app.add_subcommand("info", "Print the effective configuration");
  add_common_flags(info, info_opt, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (predict->parsed()) return run_predict(predict_opt);
    if (sweep->parsed()) return run_rd_sweep(sweep_opt, grid);
    if (bd->parsed()) return run_bdrate(anchor_path, test_path);
    if (extra->parsed()) return run_extrapolate(extra_opt);
    if (info->parsed()) {
      std::cout << srmc::config_json(finish_config(info_opt)).dump(2) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

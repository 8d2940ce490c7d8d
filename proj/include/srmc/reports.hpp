#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "srmc/bdrate.hpp"
#include "srmc/codec.hpp"

namespace srmc {

/// Per-block decision log: frame, block position, vector, both decision
/// SADs and the outcome.
inline std::string blocks_csv(const std::vector<FrameReport>& reports) {
  std::ostringstream out;
  out << "frame,block_row,block_col,mv_dx,mv_dy,sad_refined_d,sad_direct_d,decision\n";
  out << std::setprecision(10);
  for (const FrameReport& fr : reports) {
    for (const BlockRecord& b : fr.blocks) {
      const char* outcome = !b.refinement_attempted ? "direct_only"
                            : (b.decision.chosen == DecisionOutcome::Choice::Refined ? "refined"
                                                                                     : "direct");
      out << fr.frame_index << ',' << b.block_row << ',' << b.block_col << ',' << b.mv.dx
          << ',' << b.mv.dy << ',' << b.decision.sad_refined << ',' << b.decision.sad_direct
          << ',' << outcome << '\n';
    }
  }
  return out.str();
}

inline std::string frames_csv(const std::vector<FrameReport>& reports) {
  std::ostringstream out;
  out << "frame,pred_psnr_direct,pred_psnr_final,recon_psnr,rate_bits\n";
  out << std::setprecision(10);
  for (const FrameReport& fr : reports)
    out << fr.frame_index << ',' << fr.prediction_psnr_direct << ','
        << fr.prediction_psnr_final << ',' << fr.reconstruction_psnr << ',' << fr.rate_bits
        << '\n';
  return out.str();
}

inline std::string rd_csv(const RdCurve& curve) {
  std::ostringstream out;
  out << "quant_step,rate_kbps,psnr_db\n";
  out << std::setprecision(12);
  for (const RdPoint& p : curve.points)
    out << p.quant_step << ',' << p.rate_kbps << ',' << p.psnr_db << '\n';
  return out.str();
}

inline RdCurve parse_rd_csv(const std::string& text, const std::string& label = {}) {
  RdCurve curve;
  curve.label = label;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("rd csv: empty input");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    RdPoint p;
    char comma;
    if (!(row >> p.quant_step >> comma >> p.rate_kbps >> comma >> p.psnr_db))
      throw std::runtime_error("rd csv: malformed row: " + line);
    curve.points.push_back(p);
  }
  return curve;
}

inline nlohmann::json config_json(const CodecConfig& cfg) {
  return {
      {"layout",
       {{"p_rows", cfg.layout.p_rows},
        {"p_cols", cfg.layout.p_cols},
        {"block_size", cfg.layout.block_size},
        {"rho_hat", cfg.layout.rho_hat},
        {"mu", cfg.layout.mu},
        {"decision_bar", cfg.layout.decision_bar}}},
      {"search",
       {{"search_range", cfg.search.search_range},
        {"subpel", cfg.search.subpel == SearchConfig::Subpel::Half ? "half" : "full"}}},
      {"approx", {{"iterations", cfg.approx.iterations}, {"gamma", cfg.approx.gamma}}},
      {"quant_step", cfg.quant_step},
      {"refinement_enabled", cfg.refinement_enabled},
      {"loop", cfg.loop == CodecConfig::Loop::Closed ? "closed" : "open"},
  };
}

inline nlohmann::json layout_json(const ProjectionLayout& lay) {
  return {
      {"p_rows", lay.config.p_rows},
      {"p_cols", lay.config.p_cols},
      {"block_size", lay.config.block_size},
      {"rho_hat", lay.config.rho_hat},
      {"mu", lay.config.mu},
      {"block_row", lay.block_row},
      {"block_col", lay.block_col},
      {"counts",
       {{"padding", lay.count(Region::Padding)},
        {"recon", lay.count(Region::Recon)},
        {"block", lay.count(Region::Block)},
        {"decision", lay.decision_pixels().size()}}},
  };
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace srmc

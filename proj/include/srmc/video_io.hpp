#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "srmc/plane.hpp"

namespace srmc {

namespace detail {

inline std::string y4m_error(const std::string& what) {
  return "y4m: " + what;
}

}  // namespace detail

/// Parses a YUV4MPEG2 stream and keeps the luma planes only.
/// Accepts 4:2:0 (chroma skipped) and mono color spaces.
inline Sequence read_y4m(std::string_view bytes) {
  constexpr std::string_view magic = "YUV4MPEG2";
  if (bytes.substr(0, magic.size()) != magic)
    throw std::runtime_error(detail::y4m_error("missing YUV4MPEG2 signature"));

  std::size_t header_end = bytes.find('\n');
  if (header_end == std::string_view::npos)
    throw std::runtime_error(detail::y4m_error("unterminated stream header"));

  int width = 0, height = 0;
  double fps = 30.0;
  bool mono = false;
  std::istringstream tokens{std::string(bytes.substr(magic.size(), header_end - magic.size()))};
  std::string tok;
  while (tokens >> tok) {
    switch (tok[0]) {
      case 'W': width = std::stoi(tok.substr(1)); break;
      case 'H': height = std::stoi(tok.substr(1)); break;
      case 'F': {
        std::size_t colon = tok.find(':');
        if (colon != std::string::npos) {
          double num = std::stod(tok.substr(1, colon - 1));
          double den = std::stod(tok.substr(colon + 1));
          if (den > 0) fps = num / den;
        }
        break;
      }
      case 'C': {
        std::string cs = tok.substr(1);
        if (cs == "mono")
          mono = true;
        else if (cs.rfind("420", 0) != 0)
          throw std::runtime_error(detail::y4m_error("unsupported color space C" + cs));
        break;
      }
      default: break;  // interlacing/aspect/extension tokens ignored
    }
  }
  if (width <= 0 || height <= 0)
    throw std::runtime_error(detail::y4m_error("missing or invalid W/H tokens"));

  const std::size_t luma_size = static_cast<std::size_t>(width) * height;
  const std::size_t chroma_size = mono ? 0 : 2 * ((width / 2) * static_cast<std::size_t>(height / 2));

  Sequence seq;
  seq.frame_rate = fps;
  std::size_t pos = header_end + 1;
  while (pos < bytes.size()) {
    constexpr std::string_view frame_magic = "FRAME";
    if (bytes.substr(pos, frame_magic.size()) != frame_magic)
      throw std::runtime_error(detail::y4m_error("bad frame header"));
    std::size_t frame_header_end = bytes.find('\n', pos);
    if (frame_header_end == std::string_view::npos)
      throw std::runtime_error(detail::y4m_error("unterminated frame header"));
    pos = frame_header_end + 1;
    if (pos + luma_size + chroma_size > bytes.size())
      throw std::runtime_error(detail::y4m_error("truncated frame payload"));
    Plane p(width, height);
    std::string_view luma = bytes.substr(pos, luma_size);
    std::copy(luma.begin(), luma.end(), reinterpret_cast<char*>(p.samples.data()));
    seq.frames.push_back(std::move(p));
    pos += luma_size + chroma_size;
  }
  if (seq.frames.empty())
    throw std::runtime_error(detail::y4m_error("stream holds no frames"));
  return seq;
}

/// Extracts luma planes from raw planar YUV. `chroma_420` selects I420
/// layout; false means Y-only data.
inline Sequence read_raw_yuv(std::string_view bytes, int width, int height,
                             bool chroma_420) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("raw yuv: dimensions must be positive");
  const std::size_t luma_size = static_cast<std::size_t>(width) * height;
  const std::size_t frame_size =
      luma_size + (chroma_420 ? 2 * ((width / 2) * static_cast<std::size_t>(height / 2)) : 0);
  if (bytes.size() % frame_size != 0)
    throw std::runtime_error("raw yuv: byte count is not a multiple of the frame size");

  Sequence seq;
  for (std::size_t pos = 0; pos < bytes.size(); pos += frame_size) {
    Plane p(width, height);
    std::string_view luma = bytes.substr(pos, luma_size);
    std::copy(luma.begin(), luma.end(), reinterpret_cast<char*>(p.samples.data()));
    seq.frames.push_back(std::move(p));
  }
  if (seq.frames.empty())
    throw std::runtime_error("raw yuv: stream holds no frames");
  return seq;
}

/// Serializes as mono Y4M (luma only). Frame rate is written as a
/// rational with denominator 1000.
inline std::string write_y4m(const Sequence& seq) {
  seq.validate();
  std::string out = "YUV4MPEG2 W" + std::to_string(seq.width()) + " H" +
                    std::to_string(seq.height()) + " F" +
                    std::to_string(static_cast<long>(seq.frame_rate * 1000 + 0.5)) +
                    ":1000 Ip A1:1 Cmono\n";
  for (const Plane& f : seq.frames) {
    out += "FRAME\n";
    out.append(reinterpret_cast<const char*>(f.samples.data()), f.samples.size());
  }
  return out;
}

/// Binary PGM (P5, maxval 255).
inline std::string write_pgm(const Plane& p) {
  std::string out = "P5\n" + std::to_string(p.width) + " " +
                    std::to_string(p.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(p.samples.data()), p.samples.size());
  return out;
}

inline Plane read_pgm(std::string_view bytes) {
  std::istringstream head{std::string(bytes.substr(0, 64))};
  std::string magic;
  int width = 0, height = 0, maxval = 0;
  head >> magic >> width >> height >> maxval;
  if (magic != "P5" || width <= 0 || height <= 0 || maxval != 255)
    throw std::runtime_error("pgm: expected binary P5 with maxval 255");
  std::size_t pos = static_cast<std::size_t>(head.tellg()) + 1;  // single whitespace after maxval
  Plane p(width, height);
  if (pos + p.samples.size() > bytes.size())
    throw std::runtime_error("pgm: truncated payload");
  std::string_view payload = bytes.substr(pos, p.samples.size());
  std::copy(payload.begin(), payload.end(), reinterpret_cast<char*>(p.samples.data()));
  return p;
}

}  // namespace srmc

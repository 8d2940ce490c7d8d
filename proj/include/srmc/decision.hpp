#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace srmc {

/// Implicit mode decision over the decision bar: strict SAD comparison
/// between the model and the directly motion compensated candidate.
struct DecisionOutcome {
  enum class Choice { Direct, Refined };
  Choice chosen = Choice::Direct;
  double sad_refined = 0.0;
  double sad_direct = 0.0;
  std::size_t d_pixel_count = 0;
};

/// `s` holds reconstructed samples over the decision bar, `g` the model
/// samples there, `s_mc` the motion compensated samples fetched from the
/// previous reconstructed frame with the block's vector. Ties and an empty
/// bar select Direct.
inline DecisionOutcome decide(const std::vector<double>& s, const std::vector<double>& g,
                              const std::vector<double>& s_mc) {
  if (s.size() != g.size() || s.size() != s_mc.size())
    throw std::invalid_argument("decide: candidate sample sets cover different pixels");
  DecisionOutcome out;
  out.d_pixel_count = s.size();
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.sad_refined += std::abs(s[i] - g[i]);
    out.sad_direct += std::abs(s[i] - s_mc[i]);
  }
  out.chosen = (out.d_pixel_count > 0 && out.sad_refined < out.sad_direct)
                   ? DecisionOutcome::Choice::Refined
                   : DecisionOutcome::Choice::Direct;
  return out;
}

}  // namespace srmc

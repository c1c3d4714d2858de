#include "support/oracles.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace atcs::test {

namespace {

struct OracleCandidate {
  int dx;
  int dy;
  double raw;  // metric sum before any normalization
};

double raw_sum(const Image& a, const Image& b, int oy, int ox, int dy, int dx, int p,
               MatchMetric metric) {
  double sum = 0.0;
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < p; ++c) {
      const double diff = a(oy + r, ox + c) - b(oy + dy + r, ox + dx + c);
      sum += metric == MatchMetric::MSE ? diff * diff : std::abs(diff);
    }
  return sum;
}

bool oracle_better(const OracleCandidate& l, const OracleCandidate& r) {
  if (l.raw != r.raw) return l.raw < r.raw;
  const long lm = static_cast<long>(l.dx) * l.dx + static_cast<long>(l.dy) * l.dy;
  const long rm = static_cast<long>(r.dx) * r.dx + static_cast<long>(r.dy) * r.dy;
  if (lm != rm) return lm < rm;
  if (l.dy != r.dy) return l.dy < r.dy;
  return l.dx < r.dx;
}

}  // namespace

MotionField oracle_block_match(const Image& a, const Image& b, const BlockMatchParams& params) {
  const int p = params.block_size;
  const int radius = (params.window_size - p) / 2;
  MotionField field;
  field.block_size = p;
  field.grid_rows = a.height() / p;
  field.grid_cols = a.width() / p;
  for (int br = 0; br < field.grid_rows; ++br) {
    for (int bc = 0; bc < field.grid_cols; ++bc) {
      const int oy = br * p;
      const int ox = bc * p;
      std::vector<OracleCandidate> candidates;
      for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
          if (oy + dy < 0 || ox + dx < 0 || oy + dy + p > b.height() || ox + dx + p > b.width())
            continue;
          candidates.push_back({dx, dy, raw_sum(a, b, oy, ox, dy, dx, p, params.metric)});
        }
      OracleCandidate best = candidates.front();
      for (const OracleCandidate& cand : candidates)
        if (oracle_better(cand, best)) best = cand;
      BlockMotion out;
      out.block_row = br;
      out.block_col = bc;
      out.origin_y = oy;
      out.origin_x = ox;
      out.dx = best.dx;
      out.dy = best.dy;
      out.cost = params.metric == MatchMetric::MSE
                     ? best.raw / (static_cast<double>(p) * p)
                     : best.raw;
      field.blocks.push_back(out);
    }
  }
  return field;
}

Image oracle_forward(const std::vector<Frame>& frames, const Mask& mask, int shift_per_frame,
                     std::int64_t first_frame_index) {
  const int h = frames.front().height();
  const int w = frames.front().width();
  const int phases = mask.width - w + 1;
  Image sum(h, w, 0.0);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const auto global = first_frame_index + static_cast<std::int64_t>(t);
    const int phase = static_cast<int>((global * shift_per_frame) % phases);
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c)
        sum(r, c) += mask.at(r, phase + c) * frames[t](r, c);
  }
  return sum;
}

Frame oracle_static_least_squares(const Measurement& m, const CodeSchedule& schedule) {
  const Image energy = code_energy(m, schedule);
  Frame estimate(m.pixels.height(), m.pixels.width(), 0.0);
  for (int r = 0; r < estimate.height(); ++r)
    for (int c = 0; c < estimate.width(); ++c)
      if (energy(r, c) > 0.0) estimate(r, c) = m.pixels(r, c) / energy(r, c);
  return estimate;
}

Image random_image(int height, int width, std::uint64_t seed, double lo, double hi) {
  Image img(height, width);
  std::mt19937_64 rng(seed);
  for (double& v : img.pixels())
    v = lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  return img;
}

}  // namespace atcs::test

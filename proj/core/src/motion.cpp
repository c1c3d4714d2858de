#include "atcs/motion.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "atcs/textio.hpp"

namespace atcs {

namespace {

// Raw accumulated block difference: sum of squares (MSE) or absolute
// values (SAD), row-major accumulation order. Ties in the metric are ties
// in this raw sum; MSE divides by P^2 only in the reported cost.
double block_sum(const Image& a, int ay, int ax, const Image& b, int by, int bx, int p,
                 MatchMetric metric) {
  const int wa = a.width();
  const int wb = b.width();
  const double* pa = a.data() + static_cast<std::size_t>(ay) * wa + ax;
  const double* pb = b.data() + static_cast<std::size_t>(by) * wb + bx;
  double sum = 0.0;
  if (metric == MatchMetric::MSE) {
    for (int r = 0; r < p; ++r, pa += wa, pb += wb)
      for (int c = 0; c < p; ++c) {
        const double d = pa[c] - pb[c];
        sum += d * d;
      }
  } else {
    for (int r = 0; r < p; ++r, pa += wa, pb += wb)
      for (int c = 0; c < p; ++c) sum += std::abs(pa[c] - pb[c]);
  }
  return sum;
}

struct Candidate {
  int dx = 0;
  int dy = 0;
  double sum = std::numeric_limits<double>::infinity();
};

// Deterministic preference order: smaller raw sum, then smaller displacement
// magnitude, then smaller dy, then smaller dx (signed).
bool better(const Candidate& lhs, const Candidate& rhs) {
  if (lhs.sum != rhs.sum) return lhs.sum < rhs.sum;
  const long lm = static_cast<long>(lhs.dx) * lhs.dx + static_cast<long>(lhs.dy) * lhs.dy;
  const long rm = static_cast<long>(rhs.dx) * rhs.dx + static_cast<long>(rhs.dy) * rhs.dy;
  if (lm != rm) return lm < rm;
  if (lhs.dy != rhs.dy) return lhs.dy < rhs.dy;
  return lhs.dx < rhs.dx;
}

struct SearchContext {
  const Image& a;
  const Image& b;
  int p;       // block size
  int radius;  // (M - P) / 2
  MatchMetric metric;
  int oy = 0;  // current block origin
  int ox = 0;

  bool in_range(int dy, int dx) const {
    if (dy < -radius || dy > radius || dx < -radius || dx > radius) return false;
    const int ty = oy + dy;
    const int tx = ox + dx;
    return ty >= 0 && tx >= 0 && ty + p <= b.height() && tx + p <= b.width();
  }

  Candidate evaluate(int dy, int dx) const {
    return {dx, dy, block_sum(a, oy, ox, b, oy + dy, ox + dx, p, metric)};
  }
};

double reported_cost(double sum, int p, MatchMetric metric) {
  return metric == MatchMetric::MSE ? sum / (static_cast<double>(p) * p) : sum;
}

void check_inputs(const Image& a, const Image& b, const BlockMatchParams& params) {
  if (!a.same_size(b)) throw std::invalid_argument("block matching: image dimension mismatch");
  if (params.block_size < 2) throw std::invalid_argument("block size must be >= 2");
  if (params.window_size < params.block_size)
    throw std::invalid_argument("window size must be >= block size");
  if (a.height() < params.block_size || a.width() < params.block_size)
    throw std::invalid_argument("image smaller than one block");
}

MotionField make_grid(const Image& a, const BlockMatchParams& params) {
  MotionField field;
  field.block_size = params.block_size;
  field.grid_rows = a.height() / params.block_size;  // partial edge blocks dropped
  field.grid_cols = a.width() / params.block_size;
  field.blocks.resize(static_cast<std::size_t>(field.grid_rows) * field.grid_cols);
  return field;
}

Candidate full_search_block(const SearchContext& ctx) {
  Candidate best;
  for (int dy = -ctx.radius; dy <= ctx.radius; ++dy)
    for (int dx = -ctx.radius; dx <= ctx.radius; ++dx) {
      if (!ctx.in_range(dy, dx)) continue;
      Candidate cand = ctx.evaluate(dy, dx);
      if (better(cand, best)) best = cand;
    }
  return best;
}

// Candidate cache for the pattern search; one slot per displacement.
class EvalCache {
public:
  explicit EvalCache(int radius) : radius_(radius), side_(2 * radius + 1) {
    seen_.assign(static_cast<std::size_t>(side_) * side_, false);
  }

  // Evaluates (dy, dx) once; out-of-range points are ignored.
  void visit(const SearchContext& ctx, int dy, int dx, Candidate& best) {
    if (!ctx.in_range(dy, dx)) return;
    std::uint8_t& seen = seen_[static_cast<std::size_t>(dy + radius_) * side_ + (dx + radius_)];
    if (seen) return;
    seen = 1;
    Candidate cand = ctx.evaluate(dy, dx);
    if (better(cand, best)) best = cand;
  }

private:
  int radius_;
  int side_;
  std::vector<std::uint8_t> seen_;
};

Candidate cross_diamond_block(const SearchContext& ctx) {
  EvalCache cache(ctx.radius);
  Candidate best;

  // small cross around the origin
  cache.visit(ctx, 0, 0, best);
  cache.visit(ctx, 0, -1, best);
  cache.visit(ctx, 0, 1, best);
  cache.visit(ctx, -1, 0, best);
  cache.visit(ctx, 1, 0, best);
  if (best.dx == 0 && best.dy == 0) return best;  // halfway stop

  // large cross arms
  cache.visit(ctx, 0, -2, best);
  cache.visit(ctx, 0, 2, best);
  cache.visit(ctx, -2, 0, best);
  cache.visit(ctx, 2, 0, best);

  // large diamond steps, recentring on the running minimum
  static constexpr int kLargeDiamond[8][2] = {{-2, 0}, {2, 0},  {0, -2}, {0, 2},
                                              {-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  while (true) {
    const Candidate centre = best;
    for (const auto& off : kLargeDiamond)
      cache.visit(ctx, centre.dy + off[0], centre.dx + off[1], best);
    if (best.dx == centre.dx && best.dy == centre.dy) break;
  }

  // small diamond refinement, iterated until the centre is a local minimum
  static constexpr int kSmallDiamond[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  while (true) {
    const Candidate centre = best;
    for (const auto& off : kSmallDiamond)
      cache.visit(ctx, centre.dy + off[0], centre.dx + off[1], best);
    if (best.dx == centre.dx && best.dy == centre.dy) break;
  }
  return best;
}

template <typename PerBlock>
MotionField run_search(const Image& a, const Image& b, const BlockMatchParams& params,
                       PerBlock per_block) {
  check_inputs(a, b, params);
  MotionField field = make_grid(a, params);
  const int p = params.block_size;
  const int radius = (params.window_size - p) / 2;
  // blocks are independent; any evaluation order yields the same field
  for (int br = 0; br < field.grid_rows; ++br) {
    for (int bc = 0; bc < field.grid_cols; ++bc) {
      SearchContext ctx{a, b, p, radius, params.metric, br * p, bc * p};
      Candidate best = per_block(ctx);
      BlockMotion& out = field.blocks[static_cast<std::size_t>(br) * field.grid_cols + bc];
      out.block_row = br;
      out.block_col = bc;
      out.origin_y = ctx.oy;
      out.origin_x = ctx.ox;
      out.dx = best.dx;
      out.dy = best.dy;
      out.cost = reported_cost(best.sum, p, params.metric);
    }
  }
  return field;
}

}  // namespace

MotionField full_search(const Image& a, const Image& b, const BlockMatchParams& params) {
  return run_search(a, b, params, full_search_block);
}

MotionField cross_diamond_search(const Image& a, const Image& b, const BlockMatchParams& params) {
  return run_search(a, b, params, cross_diamond_block);
}

MotionField block_match(const Image& a, const Image& b, const BlockMatchParams& params) {
  return params.algorithm == SearchAlgorithm::FullSearch ? full_search(a, b, params)
                                                         : cross_diamond_search(a, b, params);
}

SegmentationMap segment(const MotionField& field, double threshold) {
  if (threshold < 0.0) throw std::invalid_argument("segment: threshold must be >= 0");
  SegmentationMap map;
  map.grid_rows = field.grid_rows;
  map.grid_cols = field.grid_cols;
  map.threshold = threshold;
  map.labels.reserve(field.blocks.size());
  for (const BlockMotion& b : field.blocks) {
    const double mag = std::hypot(static_cast<double>(b.dx), static_cast<double>(b.dy));
    map.labels.push_back(mag > threshold ? BlockLabel::Foreground : BlockLabel::Background);
  }
  return map;
}

SceneVelocity scene_velocity(const MotionField& field, int frames_spanned) {
  if (field.blocks.empty()) throw std::invalid_argument("scene_velocity: empty motion field");
  if (frames_spanned < 1) throw std::invalid_argument("scene_velocity: frames_spanned must be >= 1");
  double max_disp = 0.0;
  for (const BlockMotion& b : field.blocks)
    max_disp = std::max(max_disp, std::hypot(static_cast<double>(b.dx), static_cast<double>(b.dy)));
  SceneVelocity v;
  v.max_block_displacement = max_disp;
  v.frames_spanned = frames_spanned;
  v.v = max_disp / frames_spanned;
  return v;
}

void save_motion_csv(const MotionField& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# atcs motion-field v1\n";
  out << "block_row,block_col,dx,dy,cost\n";
  for (const BlockMotion& b : field.blocks)
    out << b.block_row << ',' << b.block_col << ',' << b.dx << ',' << b.dy << ','
        << format_double(b.cost) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace atcs

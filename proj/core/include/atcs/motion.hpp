#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "atcs/image.hpp"

namespace atcs {

enum class MatchMetric { MSE, SAD };
enum class SearchAlgorithm { FullSearch, CrossDiamond };

struct BlockMatchParams {
  int block_size = 16;   // P
  int window_size = 40;  // M
  MatchMetric metric = MatchMetric::MSE;
  SearchAlgorithm algorithm = SearchAlgorithm::CrossDiamond;
};

struct BlockMotion {
  int block_row = 0;
  int block_col = 0;
  int origin_y = 0;  // top-left pixel of the block in image a
  int origin_x = 0;
  int dx = 0;
  int dy = 0;
  double cost = 0.0;  // metric value at the chosen displacement
};

struct MotionField {
  int grid_rows = 0;
  int grid_cols = 0;
  int block_size = 0;
  std::vector<BlockMotion> blocks;  // row-major grid order
};

/// Exhaustive block matching. Blocks tile image a from the top-left
/// (partial edge blocks dropped); for each block every integer displacement
/// with |dx|,|dy| <= (M-P)/2 whose target block lies inside b is evaluated.
/// Ties break by smallest displacement magnitude, then smallest dy, then
/// smallest dx (signed). Throws std::invalid_argument on dimension mismatch
/// or images smaller than one block.
MotionField full_search(const Image& a, const Image& b, const BlockMatchParams& params);

/// Cross-diamond pattern search over the same displacement range:
/// small cross around (0,0) with a halfway stop when the centre wins,
/// then the large cross arms, then large-diamond steps recentring on the
/// running minimum, finished by small-diamond refinement iterated until the
/// centre is a local minimum. Same tie-breaking as full_search.
MotionField cross_diamond_search(const Image& a, const Image& b, const BlockMatchParams& params);

/// Dispatches on params.algorithm.
MotionField block_match(const Image& a, const Image& b, const BlockMatchParams& params);

enum class BlockLabel : std::uint8_t { Background = 0, Foreground = 1 };

struct SegmentationMap {
  int grid_rows = 0;
  int grid_cols = 0;
  double threshold = 0.0;
  std::vector<BlockLabel> labels;  // row-major grid order
};

/// Foreground iff sqrt(dx^2 + dy^2) > threshold (strict).
SegmentationMap segment(const MotionField& field, double threshold);

struct SceneVelocity {
  double v = 0.0;                       // pixels per high-speed frame
  double max_block_displacement = 0.0;  // pixels per measurement interval
  int frames_spanned = 1;
};

/// v = (max over blocks of displacement magnitude) / frames_spanned.
/// Throws std::invalid_argument on an empty field or frames_spanned < 1.
SceneVelocity scene_velocity(const MotionField& field, int frames_spanned);

/// CSV with columns block_row, block_col, dx, dy, cost.
void save_motion_csv(const MotionField& field, const std::filesystem::path& path);

}  // namespace atcs

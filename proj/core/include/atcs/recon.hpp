#pragma once

#include <filesystem>
#include <vector>

#include "atcs/coding.hpp"
#include "atcs/image.hpp"

namespace atcs {

/// Parameters of the alternating-projection reconstruction. The sparsifying
/// transform is a 3D DCT (2D spatial per frame + 1D across frames); shrinkage
/// acts on group_rows x group_cols x N_F coefficient blocks.
struct ReconParams {
  int max_iters = 100;
  double tol = 1e-4;             // relative-change stopping threshold
  int group_rows = 4;
  int group_cols = 4;
  double shrinkage_weight = 0.15;  // calibrated on the synthetic disk scene
};

struct ReconResult {
  std::vector<Frame> frames;            // length n_frames, clamped to [0, 1]
  int iterations_used = 0;
  std::vector<double> residual_history;  // measurement residual after each projection
  std::vector<double> change_history;    // relative iterate change per iteration
};

/// Recovers the n_frames high-speed frames behind one coded measurement by
/// alternating (1) exact projection onto {x : forward(x) = m} and (2) group
/// soft shrinkage of 3D-DCT coefficients, until the iterate's relative
/// change drops below tol or max_iters is reached. Pixels never covered by
/// any code (zero code energy) are unobserved: they keep their iterate value
/// and are excluded from residual norms.
ReconResult reconstruct(const Measurement& m, const CodeSchedule& schedule,
                        const ReconParams& params);

/// Peak signal-to-noise ratio in dB on [0, 1] intensities:
/// 10 log10(1 / MSE); +infinity when the frames are identical.
double psnr(const Frame& truth, const Frame& estimate);

/// Mean PSNR over a frame list (pairs compared elementwise).
double mean_psnr(const std::vector<Frame>& truth, const std::vector<Frame>& estimate);

/// CSV with columns iteration, residual, relative_change.
void save_residual_csv(const ReconResult& result, const std::filesystem::path& path);

}  // namespace atcs

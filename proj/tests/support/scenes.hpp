#pragma once

// Canonical synthetic scenes and rig configurations shared by the unit and
// acceptance suites. Parameter choices here are frozen: the motion and
// reconstruction thresholds in the tests were verified against exactly
// these scenes.

#include <cstdint>

#include "atcs/pipeline.hpp"
#include "atcs/synthetic.hpp"

namespace atcs::test {

/// High-contrast binary-textured shape on a bright textured background,
/// 96x192. Matchable in the measurement domain at low N_F.
VideoSequence velocity_scene(double speed, int n_frames, std::uint64_t seed, bool square = false);

/// Median per-pair scene velocity from consecutive N_F-frame measurements.
/// The mask repeats its shift cycle every exposure (n_f_max == n_f) and is
/// dense (0.8); blocks are 32 px with a +-28 px search window.
double measured_velocity(const VideoSequence& video, int n_f, std::uint64_t mask_seed);

/// Smoothly textured disk scene (lattice pitch 6), 64x192: static segment,
/// then a fast back-and-forth sweep at 3 px/frame.
VideoSequence mixed_motion_scene(std::uint64_t seed);

/// Constant-speed variant of the same 64x192 smooth scene.
VideoSequence smooth_scene(double speed, int n_frames, std::uint64_t seed);

/// The 64x64 smooth moving-disk scene used for reconstruction thresholds.
VideoSequence recon_disk_scene(int n_frames);

/// Static mildly textured 64x64 scene for the determined-system check.
VideoSequence recon_static_scene(int n_frames);

/// Pipeline rig matching the scenes above: dense shifted mask, 32 px blocks,
/// +-28 px window, exhaustive search, calibrated reconstruction defaults.
RunConfig pipeline_config(int frame_height, int frame_width, std::uint64_t mask_seed);

}  // namespace atcs::test

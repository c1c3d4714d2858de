#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "atcs/coding.hpp"
#include "atcs/controller.hpp"
#include "atcs/image.hpp"
#include "atcs/motion.hpp"
#include "atcs/recon.hpp"

namespace atcs {

struct CalibrationConfig {
  double target_psnr = 22.0;
  std::vector<int> framerate_multipliers{1, 2, 4};  // frame decimation factors
  std::vector<int> candidate_n_f{2, 4, 6, 8, 12, 16};
  std::vector<VideoSequence> training_videos;
  int probe_n_f = 6;  // compression ratio of the measurements used for velocity estimation
  double velocity_bucket_step = 0.25;  // velocities round to this grid before bucketing
  int max_eval_measurements = 0;       // cap per (video, multiplier, N_F); 0 = no cap
  BlockMatchParams bm_params{};
};

/// One audited decision input: mean reconstruction PSNR of one training
/// variant at one candidate N_F.
struct CalibrationRecord {
  int video_id = 0;
  int multiplier = 1;
  double estimated_v = 0.0;
  int n_f = 0;
  double mean_psnr = 0.0;
};

struct CalibrationResult {
  LookupTable table;
  std::vector<CalibrationRecord> log;
};

/// Learns a velocity -> N_F table targeting constant reconstruction quality:
/// each training video is decimated by each multiplier to vary apparent
/// motion, its velocity is estimated by block matching on probe measurements,
/// every candidate N_F is scored by coding + reconstruction PSNR, and each
/// velocity bucket keeps the largest candidate whose mean PSNR meets
/// target_psnr (the smallest candidate when none qualifies). Interval
/// boundaries fall at midpoints between adjacent bucket velocities; isotonic
/// clipping enforces that N_F never grows with velocity.
CalibrationResult calibrate(const CalibrationConfig& config, const CodeSchedule& schedule,
                            const ReconParams& recon_params);

/// Pure table construction from log rows; `calibrate` uses exactly this, so
/// re-deriving from a saved log reproduces the table.
LookupTable table_from_log(std::span<const CalibrationRecord> log,
                           const CalibrationConfig& config);

/// CSV with columns video_id, multiplier, estimated_v, n_f, mean_psnr.
void export_calibration_log(std::span<const CalibrationRecord> log,
                            const std::filesystem::path& path);
std::vector<CalibrationRecord> load_calibration_log(const std::filesystem::path& path);

}  // namespace atcs

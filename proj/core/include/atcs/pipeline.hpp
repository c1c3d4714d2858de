#pragma once

#include <filesystem>
#include <vector>

#include "atcs/coding.hpp"
#include "atcs/controller.hpp"
#include "atcs/image.hpp"
#include "atcs/motion.hpp"
#include "atcs/recon.hpp"

namespace atcs {

/// Where the controller's velocity estimate comes from: block matching on the
/// raw measurements themselves, or on reconstructed frames.
enum class VelocitySource { Compressed, Reconstructed };

struct RunConfig {
  CodeSchedule schedule;
  LookupTable table;
  int initial_n_f = 6;
  int n_f_min = 2;
  int n_f_max = 16;
  BlockMatchParams bm_params;
  ReconParams recon_params;
  bool reconstruct_every_measurement = true;  // also enables PSNR scoring
  VelocitySource velocity_source = VelocitySource::Compressed;
  /// When set, also runs block matching on the raw input frames and records
  /// the resulting reference velocity trace next to the estimated one.
  bool record_reference_velocity = false;
};

struct MeasurementRecord {
  std::int64_t index = 0;  // 1-based measurement number
  std::int64_t first_frame_index = 0;
  int n_f = 0;             // frames actually integrated
  bool truncated = false;  // final exposure cut short by the end of the video
  double v = 0.0;          // estimated velocity (NaN for the first exposure)
  double v_reference = 0.0;  // ground-truth-frames velocity (NaN unless enabled)
  double psnr_mean = 0.0;    // mean PSNR over this measurement's frames (NaN if unscored)
};

struct RunReport {
  std::vector<MeasurementRecord> records;
  std::vector<double> frame_psnr;  // per high-speed frame (empty when unscored)
  std::vector<HistoryRecord> controller_history;
  std::int64_t measurement_count = 0;
  std::int64_t frames_covered = 0;
  double mean_n_f = 0.0;
  double mean_psnr = 0.0;  // NaN when unscored
};

/// Runs the adaptive capture loop: codes frames into measurements at the
/// controller's current N_F, estimates velocity between consecutive
/// measurements, and lets the controller pick the N_F of the exposure after
/// next readout (one integration time of delay). The final exposure is
/// truncated to the remaining frames and excluded from velocity estimation.
RunReport run(const VideoSequence& video, const RunConfig& config);

/// Same loop with the controller bypassed: every exposure uses fixed_n_f.
RunReport compare_fixed(const VideoSequence& video, const RunConfig& config, int fixed_n_f);

/// CSV, one row per measurement:
/// index, first_frame_index, n_f, truncated, v, v_reference, psnr_mean.
void save_run_report_csv(const RunReport& report, const std::filesystem::path& path);

/// CSV with columns frame_index, psnr.
void save_frame_psnr_csv(const RunReport& report, const std::filesystem::path& path);

}  // namespace atcs

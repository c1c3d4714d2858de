#include "atcs/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>

#include "atcs/textio.hpp"

namespace atcs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Image normalized_pixels(const Measurement& m) {
  Image img = m.pixels;
  const double scale = 1.0 / m.n_frames;
  for (double& v : img.pixels()) v *= scale;
  return img;
}

struct Exposure {
  Measurement measurement;
  std::optional<ReconResult> recon;
};

// One loop for both the adaptive and the fixed-ratio runs.
RunReport run_loop(const VideoSequence& video, const RunConfig& config, int fixed_n_f) {
  validate_sequence(video);
  const bool adaptive = fixed_n_f == 0;
  const std::int64_t total_frames = static_cast<std::int64_t>(video.frames.size());
  const int first_n_f = adaptive ? config.initial_n_f : fixed_n_f;
  if (total_frames < 2LL * first_n_f)
    throw std::invalid_argument("pipeline: video shorter than two exposures");

  ControllerState controller =
      adaptive ? make_controller(config.initial_n_f, config.n_f_min, config.n_f_max)
               : ControllerState{};
  const bool score = config.reconstruct_every_measurement;
  const bool need_recon = score || config.velocity_source == VelocitySource::Reconstructed;

  RunReport report;
  if (score) report.frame_psnr.assign(static_cast<std::size_t>(total_frames), kNaN);

  std::optional<Exposure> previous;
  bool previous_truncated = false;
  std::int64_t cursor = 0;
  std::int64_t index = 0;

  while (cursor < total_frames) {
    ++index;
    int n_f = first_n_f;
    if (adaptive && index > 1) n_f = advance_exposure(controller);
    const bool truncated = cursor + n_f > total_frames;
    if (truncated) n_f = static_cast<int>(total_frames - cursor);

    Exposure exposure;
    exposure.measurement = forward(
        std::span<const Frame>(video.frames.data() + cursor, static_cast<std::size_t>(n_f)),
        config.schedule, cursor);
    if (need_recon)
      exposure.recon = reconstruct(exposure.measurement, config.schedule, config.recon_params);

    MeasurementRecord record;
    record.index = index;
    record.first_frame_index = cursor;
    record.n_f = n_f;
    record.truncated = truncated;
    record.v = kNaN;
    record.v_reference = kNaN;
    record.psnr_mean = kNaN;

    if (score) {
      double sum = 0.0;
      for (int t = 0; t < n_f; ++t) {
        const double p = psnr(video.frames[static_cast<std::size_t>(cursor + t)],
                              exposure.recon->frames[static_cast<std::size_t>(t)]);
        report.frame_psnr[static_cast<std::size_t>(cursor + t)] = p;
        sum += p;
      }
      record.psnr_mean = sum / n_f;
    }

    // velocity between the previous and this measurement; the truncated tail
    // exposure never enters the estimate
    if (previous && !previous_truncated && !truncated) {
      double v = kNaN;
      if (config.velocity_source == VelocitySource::Compressed) {
        // exposures of different N_F differ in brightness; compare per-frame means
        const Image a = normalized_pixels(previous->measurement);
        const Image b = normalized_pixels(exposure.measurement);
        v = scene_velocity(block_match(a, b, config.bm_params), n_f).v;
      } else {
        const Frame& a = previous->recon->frames.back();
        const Frame& b = exposure.recon->frames.back();
        v = scene_velocity(block_match(a, b, config.bm_params), n_f).v;
      }
      record.v = v;
      if (config.record_reference_velocity) {
        const Frame& a =
            video.frames[static_cast<std::size_t>(previous->measurement.first_frame_index +
                                                   previous->measurement.n_frames - 1)];
        const Frame& b = video.frames[static_cast<std::size_t>(cursor + n_f - 1)];
        record.v_reference = scene_velocity(block_match(a, b, config.bm_params), n_f).v;
      }
      if (adaptive) controller = step(std::move(controller), config.table, v, index);
    }

    report.records.push_back(record);
    previous = std::move(exposure);
    previous_truncated = truncated;
    cursor += n_f;
  }

  report.controller_history = std::move(controller.history);
  report.measurement_count = static_cast<std::int64_t>(report.records.size());
  report.frames_covered = total_frames;
  report.mean_n_f = static_cast<double>(total_frames) / report.measurement_count;
  if (score) {
    double sum = 0.0;
    for (double p : report.frame_psnr) sum += p;
    report.mean_psnr = sum / static_cast<double>(report.frame_psnr.size());
  } else {
    report.mean_psnr = kNaN;
  }
  return report;
}

}  // namespace

RunReport run(const VideoSequence& video, const RunConfig& config) {
  return run_loop(video, config, 0);
}

RunReport compare_fixed(const VideoSequence& video, const RunConfig& config, int fixed_n_f) {
  if (fixed_n_f < 1) throw std::invalid_argument("compare_fixed: fixed_n_f must be >= 1");
  return run_loop(video, config, fixed_n_f);
}

void save_run_report_csv(const RunReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# atcs run-report v1\n";
  out << "index,first_frame_index,n_f,truncated,v,v_reference,psnr_mean\n";
  for (const MeasurementRecord& r : report.records)
    out << r.index << ',' << r.first_frame_index << ',' << r.n_f << ',' << (r.truncated ? 1 : 0)
        << ',' << format_double(r.v) << ',' << format_double(r.v_reference) << ','
        << format_double(r.psnr_mean) << '\n';
  out << "# totals: measurements=" << report.measurement_count
      << " frames=" << report.frames_covered << " mean_n_f=" << format_double(report.mean_n_f)
      << " mean_psnr=" << format_double(report.mean_psnr) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void save_frame_psnr_csv(const RunReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# atcs frame-psnr v1\n";
  out << "frame_index,psnr\n";
  for (std::size_t i = 0; i < report.frame_psnr.size(); ++i)
    out << i << ',' << format_double(report.frame_psnr[i]) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace atcs

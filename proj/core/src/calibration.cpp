#include "atcs/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "atcs/textio.hpp"

namespace atcs {

namespace {

void validate_config(const CalibrationConfig& config) {
  if (config.training_videos.empty())
    throw std::invalid_argument("calibrate: empty training set");
  if (config.candidate_n_f.empty())
    throw std::invalid_argument("calibrate: empty candidate N_F list");
  if (!std::is_sorted(config.candidate_n_f.begin(), config.candidate_n_f.end()) ||
      config.candidate_n_f.front() < 1)
    throw std::invalid_argument("calibrate: candidate N_F must be positive and sorted ascending");
  if (config.framerate_multipliers.empty())
    throw std::invalid_argument("calibrate: empty multiplier list");
  for (int m : config.framerate_multipliers)
    if (m < 1) throw std::invalid_argument("calibrate: multipliers must be >= 1");
  if (!(config.target_psnr > 0.0))
    throw std::invalid_argument("calibrate: target_psnr must be positive");
  if (config.probe_n_f < 1) throw std::invalid_argument("calibrate: probe_n_f must be >= 1");
  if (!(config.velocity_bucket_step > 0.0))
    throw std::invalid_argument("calibrate: velocity_bucket_step must be positive");
}

std::vector<Frame> decimate(const VideoSequence& video, int multiplier) {
  std::vector<Frame> out;
  for (std::size_t i = 0; i < video.frames.size(); i += static_cast<std::size_t>(multiplier))
    out.push_back(video.frames[i]);
  return out;
}

Image normalized_pixels(const Measurement& m) {
  Image img = m.pixels;
  const double scale = 1.0 / m.n_frames;
  for (double& v : img.pixels()) v *= scale;
  return img;
}

// Probe measurements at a fixed N_F; median of per-pair velocities.
double estimate_variant_velocity(const std::vector<Frame>& frames,
                                 const CalibrationConfig& config,
                                 const CodeSchedule& schedule) {
  const int n_f = config.probe_n_f;
  const std::size_t groups = frames.size() / static_cast<std::size_t>(n_f);
  if (groups < 2)
    throw std::invalid_argument("calibrate: video too short for velocity probing");
  std::vector<double> velocities;
  Image prev;
  for (std::size_t g = 0; g < groups; ++g) {
    const Measurement m =
        forward(std::span<const Frame>(frames.data() + g * n_f, static_cast<std::size_t>(n_f)),
                schedule, static_cast<std::int64_t>(g * n_f));
    Image cur = normalized_pixels(m);
    if (g > 0)
      velocities.push_back(scene_velocity(block_match(prev, cur, config.bm_params), n_f).v);
    prev = std::move(cur);
  }
  std::sort(velocities.begin(), velocities.end());
  return velocities[(velocities.size() - 1) / 2];
}

double mean_group_psnr(const std::vector<Frame>& frames, int n_f,
                       const CalibrationConfig& config, const CodeSchedule& schedule,
                       const ReconParams& recon_params) {
  const std::size_t total_groups = frames.size() / static_cast<std::size_t>(n_f);
  if (total_groups < 1)
    throw std::invalid_argument("calibrate: video too short for candidate N_F");
  std::size_t groups = total_groups;
  if (config.max_eval_measurements > 0)
    groups = std::min(groups, static_cast<std::size_t>(config.max_eval_measurements));
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t g = 0; g < groups; ++g) {
    const std::span<const Frame> window(frames.data() + g * n_f, static_cast<std::size_t>(n_f));
    const Measurement m = forward(window, schedule, static_cast<std::int64_t>(g * n_f));
    const ReconResult recon = reconstruct(m, schedule, recon_params);
    for (int t = 0; t < n_f; ++t) {
      sum += psnr(window[static_cast<std::size_t>(t)], recon.frames[static_cast<std::size_t>(t)]);
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

double bucket_of(double v, double step) { return std::round(v / step) * step; }

}  // namespace

CalibrationResult calibrate(const CalibrationConfig& config, const CodeSchedule& schedule,
                            const ReconParams& recon_params) {
  validate_config(config);
  CalibrationResult result;
  for (std::size_t video_id = 0; video_id < config.training_videos.size(); ++video_id) {
    const VideoSequence& video = config.training_videos[video_id];
    validate_sequence(video);
    for (int multiplier : config.framerate_multipliers) {
      const std::vector<Frame> frames = decimate(video, multiplier);
      const double v = estimate_variant_velocity(frames, config, schedule);
      for (int n_f : config.candidate_n_f) {
        const double mean = mean_group_psnr(frames, n_f, config, schedule, recon_params);
        result.log.push_back({static_cast<int>(video_id), multiplier, v, n_f, mean});
      }
    }
  }
  result.table = table_from_log(result.log, config);
  return result;
}

LookupTable table_from_log(std::span<const CalibrationRecord> log,
                           const CalibrationConfig& config) {
  if (log.empty()) throw std::invalid_argument("table_from_log: empty calibration log");

  // bucket velocity -> candidate N_F -> PSNR samples
  std::map<double, std::map<int, std::vector<double>>> buckets;
  for (const CalibrationRecord& row : log)
    buckets[bucket_of(row.estimated_v, config.velocity_bucket_step)][row.n_f].push_back(
        row.mean_psnr);

  struct BucketChoice {
    double v;
    int n_f;
  };
  std::vector<BucketChoice> choices;
  for (const auto& [v, per_nf] : buckets) {
    int chosen = per_nf.begin()->first;  // fallback: smallest candidate seen
    for (const auto& [n_f, samples] : per_nf) {
      double mean = 0.0;
      for (double p : samples) mean += p;
      mean /= static_cast<double>(samples.size());
      if (mean >= config.target_psnr) chosen = std::max(chosen, n_f);
    }
    choices.push_back({v, chosen});
  }

  // never let N_F grow with velocity
  for (std::size_t i = 1; i < choices.size(); ++i)
    choices[i].n_f = std::min(choices[i].n_f, choices[i - 1].n_f);

  constexpr double inf = std::numeric_limits<double>::infinity();
  LookupTable table;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    const double low = i == 0 ? 0.0 : (choices[i - 1].v + choices[i].v) / 2.0;
    const double high = i + 1 < choices.size() ? (choices[i].v + choices[i + 1].v) / 2.0 : inf;
    if (!table.entries.empty() && table.entries.back().n_f == choices[i].n_f)
      table.entries.back().v_high = high;  // merge equal-ratio neighbours
    else
      table.entries.push_back({low, high, choices[i].n_f});
  }
  validate_table(table);
  return table;
}

void export_calibration_log(std::span<const CalibrationRecord> log,
                            const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# atcs calibration-log v1\n";
  out << "video_id,multiplier,estimated_v,n_f,mean_psnr\n";
  for (const CalibrationRecord& row : log)
    out << row.video_id << ',' << row.multiplier << ',' << format_double(row.estimated_v) << ','
        << row.n_f << ',' << format_double(row.mean_psnr) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<CalibrationRecord> load_calibration_log(const std::filesystem::path& path) {
  std::vector<CalibrationRecord> log;
  for (const auto& row : read_csv(path, "video_id,multiplier,estimated_v,n_f,mean_psnr")) {
    if (row.size() != 5)
      throw std::invalid_argument(path.string() + ": calibration log rows need 5 columns");
    log.push_back({static_cast<int>(parse_integer(row[0])), static_cast<int>(parse_integer(row[1])),
                   parse_double(row[2]), static_cast<int>(parse_integer(row[3])),
                   parse_double(row[4])});
  }
  return log;
}

}  // namespace atcs

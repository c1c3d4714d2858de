// Command-line front end: simulate / calibrate / reconstruct / motion / mask.
// Exit codes: 0 success, 2 configuration or usage error, 1 runtime failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atcs/calibration.hpp"
#include "atcs/coding.hpp"
#include "atcs/controller.hpp"
#include "atcs/motion.hpp"
#include "atcs/pipeline.hpp"
#include "atcs/recon.hpp"
#include "atcs/textio.hpp"
#include "atcs/video_io.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  std::uint64_t seed = 1;
};

struct BlockMatchCli {
  atcs::BlockMatchParams params;
  std::string algorithm = "cds";
  std::string metric = "mse";

  void add_to(CLI::App& cmd) {
    cmd.add_option("--block-size", params.block_size, "block size P in pixels")
        ->capture_default_str();
    cmd.add_option("--window-size", params.window_size, "search window M in pixels")
        ->capture_default_str();
    cmd.add_option("--algorithm", algorithm, "search algorithm: full or cds")
        ->check(CLI::IsMember({"full", "cds"}))
        ->capture_default_str();
    cmd.add_option("--metric", metric, "match metric: mse or sad")
        ->check(CLI::IsMember({"mse", "sad"}))
        ->capture_default_str();
  }

  atcs::BlockMatchParams resolve() const {
    atcs::BlockMatchParams out = params;
    out.algorithm = algorithm == "full" ? atcs::SearchAlgorithm::FullSearch
                                        : atcs::SearchAlgorithm::CrossDiamond;
    out.metric = metric == "sad" ? atcs::MatchMetric::SAD : atcs::MatchMetric::MSE;
    return out;
  }
};

struct ReconCli {
  atcs::ReconParams params;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--max-iters", params.max_iters, "reconstruction iteration cap")
        ->capture_default_str();
    cmd.add_option("--tol", params.tol, "relative-change stopping threshold")
        ->capture_default_str();
    cmd.add_option("--shrinkage-weight", params.shrinkage_weight,
                   "group soft-shrinkage weight")
        ->capture_default_str();
  }
};

struct MaskCli {
  std::string mask_path;
  double density = 0.5;
  int n_f_max = 16;
  int shift_per_frame = 1;

  void add_to(CLI::App& cmd, bool allow_load) {
    if (allow_load)
      cmd.add_option("--mask", mask_path, "existing mask PGM (with .meta sidecar)");
    cmd.add_option("--density", density, "Bernoulli rate of mask ones")->capture_default_str();
    cmd.add_option("--nf-max", n_f_max, "largest compression ratio the mask supports")
        ->capture_default_str();
    cmd.add_option("--shift-per-frame", shift_per_frame, "mask shift per high-speed frame")
        ->capture_default_str();
  }

  atcs::CodeSchedule resolve(int frame_height, int frame_width, std::uint64_t seed) const {
    atcs::CodeSchedule schedule;
    schedule.shift_per_frame = shift_per_frame;
    if (!mask_path.empty()) {
      schedule.base_mask = atcs::load_mask(mask_path);
      if (schedule.base_mask.height != frame_height ||
          schedule.base_mask.width < frame_width)
        throw std::invalid_argument("mask dimensions do not cover the input frames");
    } else {
      schedule.base_mask =
          atcs::generate_mask(frame_height, frame_width, n_f_max, density, seed);
    }
    return schedule;
  }
};

atcs::LookupTable resolve_table(const std::string& spec) {
  if (spec == "default") return atcs::default_table();
  return atcs::load_table(spec);
}

int run_mask(const CommonOptions& common, int height, int width, const MaskCli& mask_cli,
             const std::string& out) {
  const atcs::Mask mask =
      atcs::generate_mask(height, width, mask_cli.n_f_max, mask_cli.density, common.seed);
  atcs::save_mask(mask, out);
  std::cout << "mask " << mask.height << "x" << mask.width << " -> " << out << "\n";
  return 0;
}

int run_motion(const std::string& a_path, const std::string& b_path, const BlockMatchCli& bm,
               int frames_spanned, const std::string& out) {
  const atcs::Frame a = atcs::load_pgm(a_path);
  const atcs::Frame b = atcs::load_pgm(b_path);
  const atcs::MotionField field = atcs::block_match(a, b, bm.resolve());
  atcs::save_motion_csv(field, out);
  const atcs::SceneVelocity v = atcs::scene_velocity(field, frames_spanned);
  std::cout << "blocks " << field.grid_rows << "x" << field.grid_cols
            << " max_displacement " << atcs::format_double(v.max_block_displacement)
            << " velocity " << atcs::format_double(v.v) << "\n";
  return 0;
}

int run_reconstruct(const CommonOptions& common, const std::string& input,
                    const MaskCli& mask_cli, std::int64_t first_frame, int n_f,
                    const ReconCli& recon_cli, const std::string& out_dir,
                    const std::string& residuals, const std::string& save_measurement) {
  const atcs::VideoSequence video = atcs::load_sequence(input);
  if (first_frame < 0 ||
      first_frame + n_f > static_cast<std::int64_t>(video.frames.size()))
    throw std::invalid_argument("requested frames fall outside the input sequence");
  const atcs::Frame& f0 = video.frames.front();
  const atcs::CodeSchedule schedule = mask_cli.resolve(f0.height(), f0.width(), common.seed);

  const std::span<const atcs::Frame> window(video.frames.data() + first_frame,
                                            static_cast<std::size_t>(n_f));
  const atcs::Measurement m = atcs::forward(window, schedule, first_frame);
  const atcs::ReconResult result = atcs::reconstruct(m, schedule, recon_cli.params);

  atcs::VideoSequence recon_video;
  recon_video.frames = result.frames;
  atcs::save_sequence(recon_video, out_dir);
  if (!residuals.empty()) atcs::save_residual_csv(result, residuals);
  if (!save_measurement.empty()) {
    atcs::Frame preview = m.pixels;
    for (double& v : preview.pixels()) v /= m.n_frames;
    atcs::save_frame(preview, save_measurement);
  }

  std::vector<atcs::Frame> truth(window.begin(), window.end());
  std::cout << "iterations " << result.iterations_used << " mean_psnr "
            << atcs::format_double(atcs::mean_psnr(truth, result.frames)) << "\n";
  return 0;
}

int run_simulate(const CommonOptions& common, const std::string& input,
                 const std::string& out_dir, const MaskCli& mask_cli,
                 const std::string& table_spec, int initial_nf, int nf_min,
                 const BlockMatchCli& bm, const ReconCli& recon_cli,
                 const std::string& velocity_source, bool reference_velocity, bool no_recon,
                 int fixed_nf, bool save_frames) {
  const atcs::VideoSequence video = atcs::load_sequence(input);
  const atcs::Frame& f0 = video.frames.front();

  atcs::RunConfig config;
  config.schedule = mask_cli.resolve(f0.height(), f0.width(), common.seed);
  config.table = resolve_table(table_spec);
  config.initial_n_f = initial_nf;
  config.n_f_min = nf_min;
  config.n_f_max = mask_cli.n_f_max;
  config.bm_params = bm.resolve();
  config.recon_params = recon_cli.params;
  config.reconstruct_every_measurement = !no_recon;
  config.velocity_source = velocity_source == "reconstructed"
                               ? atcs::VelocitySource::Reconstructed
                               : atcs::VelocitySource::Compressed;
  config.record_reference_velocity = reference_velocity;

  const atcs::RunReport report = fixed_nf > 0 ? atcs::compare_fixed(video, config, fixed_nf)
                                              : atcs::run(video, config);

  fs::create_directories(out_dir);
  atcs::save_run_report_csv(report, fs::path(out_dir) / "run_report.csv");
  if (!no_recon) atcs::save_frame_psnr_csv(report, fs::path(out_dir) / "psnr.csv");
  if (fixed_nf == 0)
    atcs::save_history_csv(report.controller_history, fs::path(out_dir) / "history.csv");
  if (save_frames && !no_recon) {
    // re-run reconstructions measurement by measurement for frame output
    atcs::VideoSequence recon_video;
    for (const atcs::MeasurementRecord& rec : report.records) {
      const std::span<const atcs::Frame> window(
          video.frames.data() + rec.first_frame_index, static_cast<std::size_t>(rec.n_f));
      const atcs::Measurement m = atcs::forward(window, config.schedule, rec.first_frame_index);
      atcs::ReconResult r = atcs::reconstruct(m, config.schedule, config.recon_params);
      for (auto& f : r.frames) recon_video.frames.push_back(std::move(f));
    }
    atcs::save_sequence(recon_video, fs::path(out_dir) / "recon");
  }

  std::cout << "measurements " << report.measurement_count << " frames "
            << report.frames_covered << " mean_n_f " << atcs::format_double(report.mean_n_f)
            << " mean_psnr " << atcs::format_double(report.mean_psnr) << "\n";
  return 0;
}

int run_calibrate(const CommonOptions& common, const std::vector<std::string>& train_paths,
                  const std::string& out, const std::string& log_path, const MaskCli& mask_cli,
                  const BlockMatchCli& bm, const ReconCli& recon_cli,
                  atcs::CalibrationConfig config) {
  for (const std::string& path : train_paths)
    config.training_videos.push_back(atcs::load_sequence(path));
  config.bm_params = bm.resolve();
  const atcs::Frame& f0 = config.training_videos.front().frames.front();
  const atcs::CodeSchedule schedule = mask_cli.resolve(f0.height(), f0.width(), common.seed);

  const atcs::CalibrationResult result = atcs::calibrate(config, schedule, recon_cli.params);
  atcs::save_table(result.table, out);
  if (!log_path.empty()) atcs::export_calibration_log(result.log, log_path);
  std::cout << "table intervals " << result.table.entries.size() << " -> " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive temporal compressive sensing for video: coded exposures, "
               "compressed-domain motion estimation, N_F control, GAP reconstruction"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name
  app.set_config("--config", "", "flat key=value config file; command-line flags override it");
  app.get_config_formatter_base()->comment('#');

  CommonOptions common;
  app.add_option("--seed", common.seed, "global PRNG seed")->capture_default_str();

  // mask
  auto* mask_cmd = app.add_subcommand("mask", "generate and save a coding mask");
  int mask_height = 0, mask_width = 0;
  std::string mask_out;
  MaskCli mask_gen;
  mask_cmd->add_option("--height", mask_height, "frame height")->required();
  mask_cmd->add_option("--width", mask_width, "frame width")->required();
  mask_gen.add_to(*mask_cmd, false);
  mask_cmd->add_option("--out", mask_out, "output mask PGM path")->required();
  mask_cmd->callback([&] { run_mask(common, mask_height, mask_width, mask_gen, mask_out); });

  // motion
  auto* motion_cmd = app.add_subcommand("motion", "block matching between two images");
  std::string motion_a, motion_b, motion_out;
  int motion_span = 1;
  BlockMatchCli motion_bm;
  motion_cmd->add_option("--a", motion_a, "first image (PGM)")->required();
  motion_cmd->add_option("--b", motion_b, "second image (PGM)")->required();
  motion_bm.add_to(*motion_cmd);
  motion_cmd->add_option("--frames-spanned", motion_span,
                         "high-speed frames between the two images")
      ->capture_default_str();
  motion_cmd->add_option("--out", motion_out, "motion field CSV path")->required();
  motion_cmd->callback([&] { run_motion(motion_a, motion_b, motion_bm, motion_span, motion_out); });

  // reconstruct
  auto* recon_cmd = app.add_subcommand("reconstruct",
                                       "code one exposure from input frames and reconstruct it");
  std::string recon_input, recon_out, recon_residuals, recon_meas;
  std::int64_t recon_first = 0;
  int recon_nf = 0;
  MaskCli recon_mask;
  ReconCli recon_params;
  recon_cmd->add_option("--input", recon_input, "frame directory or raw manifest")->required();
  recon_mask.add_to(*recon_cmd, true);
  recon_cmd->add_option("--first-frame", recon_first, "index of the first integrated frame")
      ->capture_default_str();
  recon_cmd->add_option("--nf", recon_nf, "frames integrated into the measurement")->required();
  recon_params.add_to(*recon_cmd);
  recon_cmd->add_option("--out", recon_out, "directory for reconstructed frames")->required();
  recon_cmd->add_option("--residuals", recon_residuals, "residual history CSV path");
  recon_cmd->add_option("--save-measurement", recon_meas,
                        "save the N_F-normalized measurement as PGM");
  recon_cmd->callback([&] {
    run_reconstruct(common, recon_input, recon_mask, recon_first, recon_nf, recon_params,
                    recon_out, recon_residuals, recon_meas);
  });

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "adaptive capture loop over a video");
  std::string sim_input, sim_out_dir, sim_table = "default", sim_vsource = "compressed";
  int sim_initial_nf = 6, sim_nf_min = 2, sim_fixed_nf = 0;
  bool sim_reference_v = false, sim_no_recon = false, sim_save_frames = false;
  MaskCli sim_mask;
  BlockMatchCli sim_bm;
  ReconCli sim_recon;
  sim_cmd->add_option("--input", sim_input, "frame directory or raw manifest")->required();
  sim_cmd->add_option("--out-dir", sim_out_dir, "output directory for CSV artifacts")->required();
  sim_mask.add_to(*sim_cmd, true);
  sim_cmd->add_option("--table", sim_table, "lookup table CSV path, or 'default'")
      ->capture_default_str();
  sim_cmd->add_option("--initial-nf", sim_initial_nf, "compression ratio of the first exposure")
      ->capture_default_str();
  sim_cmd->add_option("--nf-min", sim_nf_min, "controller lower bound")->capture_default_str();
  sim_bm.add_to(*sim_cmd);
  sim_recon.add_to(*sim_cmd);
  sim_cmd->add_option("--velocity-source", sim_vsource,
                      "estimate velocity from 'compressed' measurements or 'reconstructed' frames")
      ->check(CLI::IsMember({"compressed", "reconstructed"}))
      ->capture_default_str();
  sim_cmd->add_flag("--reference-velocity", sim_reference_v,
                    "also record block-matching velocity on the raw input frames");
  sim_cmd->add_flag("--no-recon", sim_no_recon, "skip reconstruction and PSNR scoring");
  sim_cmd->add_option("--fixed-nf", sim_fixed_nf,
                      "bypass the controller and hold N_F constant (0 = adaptive)")
      ->capture_default_str();
  sim_cmd->add_flag("--save-frames", sim_save_frames,
                    "write reconstructed frames under <out-dir>/recon/");
  sim_cmd->callback([&] {
    run_simulate(common, sim_input, sim_out_dir, sim_mask, sim_table, sim_initial_nf, sim_nf_min,
                 sim_bm, sim_recon, sim_vsource, sim_reference_v, sim_no_recon, sim_fixed_nf,
                 sim_save_frames);
  });

  // calibrate
  auto* cal_cmd = app.add_subcommand("calibrate", "learn a velocity -> N_F lookup table");
  std::vector<std::string> cal_train;
  std::string cal_out, cal_log;
  MaskCli cal_mask;
  BlockMatchCli cal_bm;
  ReconCli cal_recon;
  atcs::CalibrationConfig cal_config;
  cal_cmd->add_option("--train", cal_train, "training video (repeatable)")->required();
  cal_cmd->add_option("--out", cal_out, "output table CSV path")->required();
  cal_cmd->add_option("--log", cal_log, "calibration log CSV path");
  cal_cmd->add_option("--target-psnr", cal_config.target_psnr, "PSNR floor in dB")
      ->capture_default_str();
  cal_cmd->add_option("--multipliers", cal_config.framerate_multipliers,
                      "frame decimation factors")
      ->delimiter(',')
      ->capture_default_str();
  cal_cmd->add_option("--candidates", cal_config.candidate_n_f, "candidate N_F values")
      ->delimiter(',')
      ->capture_default_str();
  cal_cmd->add_option("--probe-nf", cal_config.probe_n_f,
                      "N_F of the measurements used for velocity estimation")
      ->capture_default_str();
  cal_cmd->add_option("--bucket-step", cal_config.velocity_bucket_step,
                      "velocity rounding grid before bucketing")
      ->capture_default_str();
  cal_cmd->add_option("--max-eval-measurements", cal_config.max_eval_measurements,
                      "cap on scored measurements per variant (0 = all)")
      ->capture_default_str();
  cal_mask.add_to(*cal_cmd, true);
  cal_bm.add_to(*cal_cmd);
  cal_recon.add_to(*cal_cmd);
  cal_cmd->callback([&] {
    run_calibrate(common, cal_train, cal_out, cal_log, cal_mask, cal_bm, cal_recon, cal_config);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

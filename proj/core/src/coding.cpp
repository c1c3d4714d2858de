#include "atcs/coding.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "atcs/textio.hpp"
#include "atcs/video_io.hpp"

namespace atcs {

namespace {

// Uniform double in [0, 1) from the generator's top 53 bits. Distributions
// in <random> are implementation-defined; this mapping is not.
inline double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_schedule_frame(const CodeSchedule& schedule, int frame_height, int frame_width) {
  if (schedule.base_mask.height != frame_height)
    throw std::invalid_argument("mask height does not match frame height");
  if (schedule.base_mask.width < frame_width)
    throw std::invalid_argument("mask narrower than frame");
  if (schedule.shift_per_frame < 1)
    throw std::invalid_argument("shift_per_frame must be >= 1");
}

}  // namespace

Mask generate_mask(int frame_height, int frame_width, int n_f_max, double density,
                   std::uint64_t seed) {
  if (frame_height < 1 || frame_width < 1)
    throw std::invalid_argument("mask dimensions must be positive");
  if (n_f_max < 1) throw std::invalid_argument("n_f_max must be >= 1");
  if (!(density > 0.0 && density < 1.0))
    throw std::invalid_argument("density must lie in (0, 1)");

  Mask mask;
  mask.height = frame_height;
  mask.width = frame_width + n_f_max - 1;
  mask.seed = seed;
  mask.density = density;
  mask.n_f_max = n_f_max;
  mask.bits.resize(static_cast<std::size_t>(mask.height) * mask.width);

  std::mt19937_64 rng(seed);
  for (auto& bit : mask.bits) bit = uniform53(rng) < density ? 1 : 0;
  return mask;
}

int num_phases(const CodeSchedule& schedule, int frame_width) {
  return schedule.base_mask.width - frame_width + 1;
}

int phase_for_frame(const CodeSchedule& schedule, std::int64_t frame_index, int frame_width) {
  if (frame_index < 0) throw std::invalid_argument("frame index must be non-negative");
  const int phases = num_phases(schedule, frame_width);
  if (phases < 1) throw std::invalid_argument("mask narrower than frame");
  return static_cast<int>((frame_index * schedule.shift_per_frame) % phases);
}

Image code_for_frame(const CodeSchedule& schedule, int phase, int frame_height, int frame_width) {
  check_schedule_frame(schedule, frame_height, frame_width);
  if (phase < 0 || phase + frame_width > schedule.base_mask.width)
    throw std::out_of_range("code phase out of range");
  Image code(frame_height, frame_width);
  for (int r = 0; r < frame_height; ++r)
    for (int c = 0; c < frame_width; ++c)
      code(r, c) = schedule.base_mask.at(r, phase + c);
  return code;
}

Measurement forward(std::span<const Frame> frames, const CodeSchedule& schedule,
                    std::int64_t first_frame_index) {
  if (frames.empty()) throw std::invalid_argument("forward: empty frame list");
  const int h = frames.front().height();
  const int w = frames.front().width();
  check_schedule_frame(schedule, h, w);
  if (schedule.base_mask.n_f_max > 0 &&
      static_cast<int>(frames.size()) > schedule.base_mask.n_f_max)
    throw std::invalid_argument("forward: frame count exceeds the mask's n_f_max");

  Measurement m;
  m.pixels = Image(h, w, 0.0);
  m.n_frames = static_cast<int>(frames.size());
  m.first_frame_index = first_frame_index;
  m.schedule_phase = phase_for_frame(schedule, first_frame_index, w);

  const Mask& mask = schedule.base_mask;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (!frames[t].same_size(frames.front()))
      throw std::invalid_argument("forward: frame dimension mismatch");
    const int phase = phase_for_frame(schedule, first_frame_index + static_cast<std::int64_t>(t), w);
    const double* src = frames[t].data();
    double* dst = m.pixels.data();
    for (int r = 0; r < h; ++r) {
      const std::uint8_t* code_row = mask.bits.data() + static_cast<std::size_t>(r) * mask.width + phase;
      const double* src_row = src + static_cast<std::size_t>(r) * w;
      double* dst_row = dst + static_cast<std::size_t>(r) * w;
      for (int c = 0; c < w; ++c) dst_row[c] += code_row[c] * src_row[c];
    }
  }
  return m;
}

std::vector<Frame> adjoint(const Measurement& m, const CodeSchedule& schedule) {
  const int h = m.pixels.height();
  const int w = m.pixels.width();
  check_schedule_frame(schedule, h, w);
  if (m.n_frames < 1) throw std::invalid_argument("adjoint: measurement has no frames");

  const Mask& mask = schedule.base_mask;
  std::vector<Frame> frames;
  frames.reserve(static_cast<std::size_t>(m.n_frames));
  for (int t = 0; t < m.n_frames; ++t) {
    const int phase = phase_for_frame(schedule, m.first_frame_index + t, w);
    Frame f(h, w);
    const double* src = m.pixels.data();
    double* dst = f.data();
    for (int r = 0; r < h; ++r) {
      const std::uint8_t* code_row = mask.bits.data() + static_cast<std::size_t>(r) * mask.width + phase;
      for (int c = 0; c < w; ++c)
        dst[static_cast<std::size_t>(r) * w + c] =
            code_row[c] * src[static_cast<std::size_t>(r) * w + c];
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

Image code_energy(const Measurement& m, const CodeSchedule& schedule) {
  const int h = m.pixels.height();
  const int w = m.pixels.width();
  check_schedule_frame(schedule, h, w);
  const Mask& mask = schedule.base_mask;
  Image energy(h, w, 0.0);
  for (int t = 0; t < m.n_frames; ++t) {
    const int phase = phase_for_frame(schedule, m.first_frame_index + t, w);
    double* dst = energy.data();
    for (int r = 0; r < h; ++r) {
      const std::uint8_t* code_row = mask.bits.data() + static_cast<std::size_t>(r) * mask.width + phase;
      for (int c = 0; c < w; ++c) dst[static_cast<std::size_t>(r) * w + c] += code_row[c];
    }
  }
  return energy;
}

void save_mask(const Mask& mask, const std::filesystem::path& pgm_path) {
  Frame img(mask.height, mask.width);
  for (std::size_t i = 0; i < mask.bits.size(); ++i)
    img.pixels()[i] = mask.bits[i] ? 1.0 : 0.0;
  save_frame(img, pgm_path);
  write_key_value_file(std::filesystem::path(pgm_path.string() + ".meta"),
                       {{"seed", std::to_string(mask.seed)},
                        {"density", format_double(mask.density)},
                        {"n_f_max", std::to_string(mask.n_f_max)}});
}

Mask load_mask(const std::filesystem::path& pgm_path) {
  Frame img = load_pgm(pgm_path);
  Mask mask;
  mask.height = img.height();
  mask.width = img.width();
  mask.bits.resize(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) {
    double v = img.pixels()[i];
    if (v != 0.0 && v != 1.0)
      throw std::runtime_error(pgm_path.string() + ": mask pixels must be 0 or 255");
    mask.bits[i] = v == 1.0 ? 1 : 0;
  }
  for (const auto& [key, value] :
       read_key_value_file(std::filesystem::path(pgm_path.string() + ".meta"))) {
    if (key == "seed") mask.seed = static_cast<std::uint64_t>(parse_integer(value));
    else if (key == "density") mask.density = parse_double(value);
    else if (key == "n_f_max") mask.n_f_max = static_cast<int>(parse_integer(value));
  }
  return mask;
}

}  // namespace atcs

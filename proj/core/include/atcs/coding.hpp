#pragma once

#include <cstdint>
#include <filesystem>
#include <span>

#include "atcs/image.hpp"

namespace atcs {

/// Binary code pattern. Wider than the frame by at least n_f_max - 1 columns
/// so every horizontal shift stays a contiguous in-bounds window.
struct Mask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> bits;  // row-major, each entry 0 or 1

  // generation provenance; stored in the sidecar by save_mask
  std::uint64_t seed = 0;
  double density = 0.0;
  int n_f_max = 0;

  std::uint8_t at(int r, int c) const {
    return bits[static_cast<std::size_t>(r) * width + c];
  }
};

/// Shifted-mask code schedule: the base mask slides horizontally,
/// left to right, by shift_per_frame pixels per high-speed frame.
struct CodeSchedule {
  Mask base_mask;
  int shift_per_frame = 1;
};

/// One coded low-speed exposure: the sum of n_frames mask-modulated
/// high-speed frames. Pixels lie in [0, n_frames].
struct Measurement {
  Image pixels;
  int n_frames = 0;
  std::int64_t first_frame_index = 0;
  int schedule_phase = 0;  // shift offset of the first frame's code
};

/// Bernoulli(density) mask of size frame_height x (frame_width + n_f_max - 1),
/// drawn from a fixed PRNG (mt19937_64, top-53-bit uniform threshold) so the
/// same seed always yields the same mask. Throws std::invalid_argument on
/// non-positive dimensions or density outside (0, 1).
Mask generate_mask(int frame_height, int frame_width, int n_f_max, double density,
                   std::uint64_t seed);

/// Number of distinct shift offsets: mask_width - frame_width + 1.
int num_phases(const CodeSchedule& schedule, int frame_width);

/// Phase of global frame index t: (t * shift_per_frame) mod num_phases.
int phase_for_frame(const CodeSchedule& schedule, std::int64_t frame_index, int frame_width);

/// The frame_height x frame_width window of the base mask starting at column
/// offset `phase`, as a 0/1 matrix. Throws std::out_of_range if the window
/// leaves the mask.
Image code_for_frame(const CodeSchedule& schedule, int phase, int frame_height, int frame_width);

/// Coded-exposure forward model: pixelwise sum over t of
/// code_for_frame(first_frame_index + t) * frames[t].
Measurement forward(std::span<const Frame> frames, const CodeSchedule& schedule,
                    std::int64_t first_frame_index);

/// Adjoint of forward: frame t = code_for_frame(t) * measurement pixels.
/// Satisfies <forward(x), y> = <x, adjoint(y)>.
std::vector<Frame> adjoint(const Measurement& m, const CodeSchedule& schedule);

/// Per-pixel sum of squared code values across the measurement's n_frames
/// (for binary codes, the number of frames observing each pixel).
Image code_energy(const Measurement& m, const CodeSchedule& schedule);

/// Mask serialization: PGM with bits as {0, 255} plus a key-value sidecar at
/// `pgm_path + ".meta"` recording seed, density, n_f_max.
void save_mask(const Mask& mask, const std::filesystem::path& pgm_path);
Mask load_mask(const std::filesystem::path& pgm_path);

}  // namespace atcs

#pragma once

#include <cstdint>
#include <span>

#include "atcs/image.hpp"

namespace atcs {

/// Procedural test scene: a disk (or square) translating over a static
/// background. Texture amplitudes blend deterministic lattice noise into the
/// smooth profiles; the disk's noise is attached to the disk, so integer
/// per-frame speeds translate the pattern rigidly.
struct SceneParams {
  int height = 64;
  int width = 64;
  double radius = 10.0;  // disk radius, or half-side for the square
  double start_x = 0.0;  // centre at frame 0
  double start_y = 0.0;
  double bg_level = 0.3;      // background base intensity
  double bg_gradient = 0.3;   // amplitude of the smooth background ramp
  double disk_level = 0.9;    // shape intensity at its centre
  double disk_falloff = 0.5;  // radial intensity drop towards the rim
  double disk_texture = 0.0;  // noise amplitude on the moving shape
  double bg_texture = 0.0;    // noise amplitude on the background
  double texture_scale = 1.0;  // noise lattice pitch in pixels; >1 smooths the texture
  bool binary_texture = false;  // threshold the noise to {0,1}: maximal contrast
  bool square = false;
  std::uint64_t seed = 1;
};

/// Constant speed over the whole clip.
struct SceneSegment {
  int n_frames = 0;
  double speed_x = 0.0;  // pixels per frame
  double speed_y = 0.0;
};

VideoSequence disk_scene(const SceneParams& params, std::span<const SceneSegment> segments);
VideoSequence disk_scene(const SceneParams& params, int n_frames, double speed_x,
                         double speed_y = 0.0);

/// Deterministic lattice noise in [0, 1).
double lattice_noise(std::int64_t x, std::int64_t y, std::uint64_t seed);

/// Bilinear interpolation of the lattice noise with pitch `scale`; rigid
/// under translation of (x, y). scale == 1 at integer coordinates reduces to
/// the raw lattice.
double smooth_noise(double x, double y, double scale, std::uint64_t seed);

}  // namespace atcs

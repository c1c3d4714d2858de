#include "atcs/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace atcs {

double lattice_noise(std::int64_t x, std::int64_t y, std::uint64_t seed) {
  std::uint64_t h = seed;
  h ^= static_cast<std::uint64_t>(x) * 0x9e3779b97f4a7c15ULL;
  h ^= static_cast<std::uint64_t>(y) * 0xc2b2ae3d27d4eb4fULL;
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double smooth_noise(double x, double y, double scale, std::uint64_t seed) {
  const double u = x / scale;
  const double v = y / scale;
  const double fx = std::floor(u);
  const double fy = std::floor(v);
  const auto x0 = static_cast<std::int64_t>(fx);
  const auto y0 = static_cast<std::int64_t>(fy);
  const double tu = u - fx;
  const double tv = v - fy;
  const double n00 = lattice_noise(x0, y0, seed);
  const double n10 = lattice_noise(x0 + 1, y0, seed);
  const double n01 = lattice_noise(x0, y0 + 1, seed);
  const double n11 = lattice_noise(x0 + 1, y0 + 1, seed);
  return (n00 * (1.0 - tu) + n10 * tu) * (1.0 - tv) + (n01 * (1.0 - tu) + n11 * tu) * tv;
}

namespace {

constexpr std::uint64_t kDiskSeedSalt = 0x5851f42d4c957f2dULL;

double shape_distance(double dr, double dc, bool square) {
  if (square) return std::max(std::abs(dr), std::abs(dc));
  return std::hypot(dr, dc);
}

double texture_sample(const SceneParams& p, double x, double y, std::uint64_t seed) {
  const double n = smooth_noise(x, y, p.texture_scale, seed);
  return p.binary_texture ? (n < 0.5 ? 0.0 : 1.0) : n;
}

Frame render(const SceneParams& p, double cx, double cy) {
  Frame frame(p.height, p.width);
  const double edge = 2.0;  // soft rim half-width
  for (int r = 0; r < p.height; ++r) {
    for (int c = 0; c < p.width; ++c) {
      const double ramp = (p.height > 1 ? 2.0 / 3.0 * r / (p.height - 1) : 0.0) +
                          (p.width > 1 ? 1.0 / 3.0 * c / (p.width - 1) : 0.0);
      double bg = p.bg_level + p.bg_gradient * ramp;
      if (p.bg_texture > 0.0)
        bg += p.bg_texture * (texture_sample(p, c, r, p.seed) - 0.5);

      const double dr = r - cy;
      const double dc = c - cx;
      const double rho = shape_distance(dr, dc, p.square);
      double value = bg;
      if (rho < p.radius + edge) {
        double disk = p.disk_level - p.disk_falloff * (rho / p.radius) * (rho / p.radius);
        if (p.disk_texture > 0.0)
          disk += p.disk_texture * (texture_sample(p, dc, dr, p.seed ^ kDiskSeedSalt) - 0.5);
        // blend softly across the rim so spatial spectra stay tame
        double blend = 1.0;
        if (rho > p.radius - edge)
          blend = 0.5 * (1.0 + std::cos(std::numbers::pi * (rho - (p.radius - edge)) / (2.0 * edge)));
        value = blend * disk + (1.0 - blend) * bg;
      }
      frame(r, c) = std::clamp(value, 0.0, 1.0);
    }
  }
  return frame;
}

}  // namespace

VideoSequence disk_scene(const SceneParams& params, std::span<const SceneSegment> segments) {
  if (params.height < 1 || params.width < 1)
    throw std::invalid_argument("disk_scene: dimensions must be positive");
  if (!(params.radius > 0.0)) throw std::invalid_argument("disk_scene: radius must be positive");

  VideoSequence video;
  double cx = params.start_x;
  double cy = params.start_y;
  for (const SceneSegment& seg : segments) {
    for (int t = 0; t < seg.n_frames; ++t) {
      video.frames.push_back(render(params, cx, cy));
      cx += seg.speed_x;
      cy += seg.speed_y;
    }
  }
  if (video.frames.empty()) throw std::invalid_argument("disk_scene: no frames requested");
  return video;
}

VideoSequence disk_scene(const SceneParams& params, int n_frames, double speed_x, double speed_y) {
  const SceneSegment seg{n_frames, speed_x, speed_y};
  return disk_scene(params, std::span<const SceneSegment>(&seg, 1));
}

}  // namespace atcs

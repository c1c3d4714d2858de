#pragma once

#include <cstddef>
#include <vector>

namespace atcs {

/// Dense row-major matrix of pixel intensities.
class Image {
public:
  Image() = default;
  Image(int height, int width, double fill = 0.0)
      : height_(height), width_(width),
        data_(static_cast<std::size_t>(height) * static_cast<std::size_t>(width), fill) {}

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * width_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * width_ + c]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& pixels() { return data_; }
  const std::vector<double>& pixels() const { return data_; }

  bool same_size(const Image& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }

private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

/// One grayscale high-speed video frame. Intensities live in [0, 1];
/// validate_frame enforces that at the IO boundary.
using Frame = Image;

struct VideoSequence {
  std::vector<Frame> frames;
  double native_framerate = 0.0;  // metadata only
};

/// Throws std::invalid_argument if the frame is empty or any intensity is
/// non-finite or outside [0, 1].
void validate_frame(const Frame& frame);

/// Throws std::invalid_argument if the sequence is empty or frames disagree
/// in size, or any frame fails validate_frame.
void validate_sequence(const VideoSequence& video);

}  // namespace atcs

#include "atcs/dct3.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace atcs {

namespace {

// Orthonormal DCT-II basis: B[k*n + j] = s_k cos(pi (j + 1/2) k / n).
std::vector<double> dct_basis(int n) {
  std::vector<double> basis(static_cast<std::size_t>(n) * n);
  const double s0 = std::sqrt(1.0 / n);
  const double sk = std::sqrt(2.0 / n);
  for (int k = 0; k < n; ++k) {
    const double scale = k == 0 ? s0 : sk;
    for (int j = 0; j < n; ++j)
      basis[static_cast<std::size_t>(k) * n + j] =
          scale * std::cos(std::numbers::pi * (j + 0.5) * k / n);
  }
  return basis;
}

std::vector<double> transposed(const std::vector<double>& basis, int n) {
  std::vector<double> t(basis.size());
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      t[static_cast<std::size_t>(j) * n + k] = basis[static_cast<std::size_t>(k) * n + j];
  return t;
}

}  // namespace

Dct3::Dct3(int height, int width, int depth) : height_(height), width_(width), depth_(depth) {
  if (height < 1 || width < 1 || depth < 1)
    throw std::invalid_argument("Dct3: dimensions must be positive");
  row_basis_ = dct_basis(height);
  col_basis_ = dct_basis(width);
  time_basis_ = dct_basis(depth);
  row_basis_t_ = transposed(row_basis_, height);
  col_basis_t_ = transposed(col_basis_, width);
  time_basis_t_ = transposed(time_basis_, depth);
}

// Applies `matrix` (length x length) to every line along one axis. Lines are
// addressed as outer * outer_stride + inner, inner in [0, lines_inner), with
// elements spaced by `stride`.
void Dct3::apply_axis(std::vector<double>& cube, const std::vector<double>& matrix, int length,
                      int stride, int lines_outer, int outer_stride, int lines_inner) const {
  std::vector<double> line(static_cast<std::size_t>(length));
  for (int outer = 0; outer < lines_outer; ++outer) {
    for (int inner = 0; inner < lines_inner; ++inner) {
      double* base = cube.data() + static_cast<std::size_t>(outer) * outer_stride + inner;
      for (int j = 0; j < length; ++j) line[j] = base[static_cast<std::size_t>(j) * stride];
      for (int k = 0; k < length; ++k) {
        const double* row = matrix.data() + static_cast<std::size_t>(k) * length;
        double acc = 0.0;
        for (int j = 0; j < length; ++j) acc += row[j] * line[j];
        base[static_cast<std::size_t>(k) * stride] = acc;
      }
    }
  }
}

void Dct3::forward(std::vector<double>& cube) const {
  const std::size_t expected =
      static_cast<std::size_t>(height_) * width_ * depth_;
  if (cube.size() != expected) throw std::invalid_argument("Dct3: cube size mismatch");
  const int frame = height_ * width_;
  // columns within each row, rows within each frame, then across frames
  apply_axis(cube, col_basis_, width_, 1, depth_ * height_, width_, 1);
  apply_axis(cube, row_basis_, height_, width_, depth_, frame, width_);
  apply_axis(cube, time_basis_, depth_, frame, 1, 0, frame);
}

void Dct3::inverse(std::vector<double>& cube) const {
  const std::size_t expected =
      static_cast<std::size_t>(height_) * width_ * depth_;
  if (cube.size() != expected) throw std::invalid_argument("Dct3: cube size mismatch");
  const int frame = height_ * width_;
  apply_axis(cube, time_basis_t_, depth_, frame, 1, 0, frame);
  apply_axis(cube, row_basis_t_, height_, width_, depth_, frame, width_);
  apply_axis(cube, col_basis_t_, width_, 1, depth_ * height_, width_, 1);
}

}  // namespace atcs

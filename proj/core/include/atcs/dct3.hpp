#pragma once

#include <vector>

namespace atcs {

/// Separable orthonormal DCT-II / DCT-III over an h x w x depth cube stored
/// flat as cube[t*h*w + r*w + c]. inverse(forward(x)) == x up to roundoff.
class Dct3 {
public:
  Dct3(int height, int width, int depth);

  void forward(std::vector<double>& cube) const;
  void inverse(std::vector<double>& cube) const;

  int height() const { return height_; }
  int width() const { return width_; }
  int depth() const { return depth_; }

private:
  void apply_axis(std::vector<double>& cube, const std::vector<double>& matrix, int length,
                  int stride, int lines_outer, int outer_stride, int lines_inner) const;

  int height_;
  int width_;
  int depth_;
  std::vector<double> row_basis_;   // height x height
  std::vector<double> col_basis_;   // width x width
  std::vector<double> time_basis_;  // depth x depth
  std::vector<double> row_basis_t_;
  std::vector<double> col_basis_t_;
  std::vector<double> time_basis_t_;
};

}  // namespace atcs

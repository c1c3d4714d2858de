#include "atcs/recon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "atcs/dct3.hpp"
#include "atcs/textio.hpp"

namespace atcs {

namespace {

struct Operator {
  const CodeSchedule& schedule;
  const Measurement& m;
  int h, w, n;
  std::vector<const std::uint8_t*> code_rows;  // per frame, mask row pointers offset by phase

  Operator(const Measurement& meas, const CodeSchedule& sched)
      : schedule(sched), m(meas), h(meas.pixels.height()), w(meas.pixels.width()),
        n(meas.n_frames) {
    if (n < 1) throw std::invalid_argument("reconstruct: measurement has no frames");
    if (schedule.base_mask.height != h || schedule.base_mask.width < w)
      throw std::invalid_argument("reconstruct: measurement does not match schedule dimensions");
    code_rows.resize(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
      const int phase = phase_for_frame(schedule, m.first_frame_index + t, w);
      code_rows[t] = schedule.base_mask.bits.data() + phase;
    }
  }

  std::uint8_t code(int t, int r, int c) const {
    return code_rows[t][static_cast<std::size_t>(r) * schedule.base_mask.width + c];
  }

  // y = sum_t C_t .* x_t
  void apply_forward(const std::vector<double>& cube, std::vector<double>& y) const {
    std::fill(y.begin(), y.end(), 0.0);
    const int frame = h * w;
    for (int t = 0; t < n; ++t)
      for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
          y[static_cast<std::size_t>(r) * w + c] +=
              code(t, r, c) * cube[static_cast<std::size_t>(t) * frame + r * w + c];
  }
};

double relative_change(const std::vector<double>& now, const std::vector<double>& before) {
  double diff = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < now.size(); ++i) {
    const double d = now[i] - before[i];
    diff += d * d;
    ref += before[i] * before[i];
  }
  return std::sqrt(diff) / std::max(std::sqrt(ref), 1e-30);
}

// Scales each group_rows x group_cols x (depth-1) coefficient block by
// max(0, 1 - weight / ||block||_2). The temporal-DC plane is never shrunk:
// penalising the per-pixel time average would bias every reconstruction,
// and leaving it free makes static scenes exact fixed points of the
// shrink-project iteration at any N_F.
void shrink_groups(std::vector<double>& coeffs, int h, int w, int n, int group_rows,
                   int group_cols, double weight) {
  if (n < 2) return;
  const int frame = h * w;
  for (int gr = 0; gr < h; gr += group_rows) {
    const int r_end = std::min(gr + group_rows, h);
    for (int gc = 0; gc < w; gc += group_cols) {
      const int c_end = std::min(gc + group_cols, w);
      double norm_sq = 0.0;
      for (int t = 1; t < n; ++t)
        for (int r = gr; r < r_end; ++r)
          for (int c = gc; c < c_end; ++c) {
            const double v = coeffs[static_cast<std::size_t>(t) * frame + r * w + c];
            norm_sq += v * v;
          }
      const double norm = std::sqrt(norm_sq);
      if (norm == 0.0) continue;
      const double factor = std::max(0.0, 1.0 - weight / norm);
      for (int t = 1; t < n; ++t)
        for (int r = gr; r < r_end; ++r)
          for (int c = gc; c < c_end; ++c)
            coeffs[static_cast<std::size_t>(t) * frame + r * w + c] *= factor;
    }
  }
}

}  // namespace

ReconResult reconstruct(const Measurement& m, const CodeSchedule& schedule,
                        const ReconParams& params) {
  if (params.max_iters < 1) throw std::invalid_argument("reconstruct: max_iters must be >= 1");
  if (!(params.tol > 0.0)) throw std::invalid_argument("reconstruct: tol must be positive");

  const Operator op(m, schedule);
  const int h = op.h, w = op.w, n = op.n;
  const int frame = h * w;
  const std::size_t cube_size = static_cast<std::size_t>(n) * frame;

  // per-pixel code energy; zero marks unobserved pixels
  const Image energy = code_energy(m, schedule);
  const double* R = energy.data();
  const double* y = m.pixels.data();

  // x0 = adjoint(m) / R on observed pixels, zero elsewhere
  std::vector<double> x(cube_size, 0.0);
  for (int t = 0; t < n; ++t)
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) {
        const std::size_t p = static_cast<std::size_t>(r) * w + c;
        if (R[p] > 0.0)
          x[static_cast<std::size_t>(t) * frame + p] = op.code(t, r, c) * y[p] / R[p];
      }

  // projection onto {x : forward(x) = m}: x += adjoint((m - forward(x)) / R)
  std::vector<double> residual(static_cast<std::size_t>(frame));
  auto project = [&](std::vector<double>& iterate) {
    op.apply_forward(iterate, residual);
    double norm_sq = 0.0;
    for (int p = 0; p < frame; ++p) {
      if (R[p] > 0.0) {
        residual[p] = y[p] - residual[p];
        norm_sq += residual[p] * residual[p];
      } else {
        residual[p] = 0.0;
      }
    }
    for (int t = 0; t < n; ++t)
      for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
          const std::size_t p = static_cast<std::size_t>(r) * w + c;
          if (R[p] > 0.0)
            iterate[static_cast<std::size_t>(t) * frame + p] += op.code(t, r, c) * residual[p] / R[p];
        }
    return std::sqrt(norm_sq);
  };

  project(x);  // the initial iterate is data-consistent from the start

  const Dct3 dct(h, w, n);
  ReconResult result;
  std::vector<double> prev(cube_size);
  std::vector<double> coeffs;

  // each iteration: structured shrinkage in the 3D-DCT domain, then exact
  // projection back onto the measurement-consistent affine set
  int iter = 0;
  for (iter = 1; iter <= params.max_iters; ++iter) {
    prev = x;
    coeffs = std::move(x);
    dct.forward(coeffs);
    shrink_groups(coeffs, h, w, n, params.group_rows, params.group_cols,
                  params.shrinkage_weight);
    dct.inverse(coeffs);
    x = std::move(coeffs);
    project(x);

    // residual of the data-consistent iterate, for the history
    op.apply_forward(x, residual);
    double post_sq = 0.0;
    for (int p = 0; p < frame; ++p)
      if (R[p] > 0.0) {
        const double d = y[p] - residual[p];
        post_sq += d * d;
      }
    result.residual_history.push_back(std::sqrt(post_sq));

    const double change = relative_change(x, prev);
    result.change_history.push_back(change);
    if (change < params.tol) break;
  }
  result.iterations_used = std::min(iter, params.max_iters);
  result.frames.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    Frame f(h, w);
    for (int p = 0; p < frame; ++p)
      f.pixels()[static_cast<std::size_t>(p)] =
          std::clamp(x[static_cast<std::size_t>(t) * frame + p], 0.0, 1.0);
    result.frames.push_back(std::move(f));
  }
  return result;
}

double psnr(const Frame& truth, const Frame& estimate) {
  if (!truth.same_size(estimate)) throw std::invalid_argument("psnr: dimension mismatch");
  double mse = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = truth.pixels()[i] - estimate.pixels()[i];
    mse += d * d;
  }
  mse /= static_cast<double>(truth.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

double mean_psnr(const std::vector<Frame>& truth, const std::vector<Frame>& estimate) {
  if (truth.size() != estimate.size() || truth.empty())
    throw std::invalid_argument("mean_psnr: frame count mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) sum += psnr(truth[i], estimate[i]);
  return sum / static_cast<double>(truth.size());
}

void save_residual_csv(const ReconResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# atcs recon-residuals v1\n";
  out << "iteration,residual,relative_change\n";
  for (std::size_t i = 0; i < result.residual_history.size(); ++i)
    out << (i + 1) << ',' << format_double(result.residual_history[i]) << ','
        << format_double(result.change_history[i]) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace atcs

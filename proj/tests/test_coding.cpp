#include <doctest.h>

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "atcs/coding.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"

using namespace atcs;

namespace {

std::vector<Frame> random_frames(int n, int h, int w, std::uint64_t seed) {
  std::vector<Frame> frames;
  for (int t = 0; t < n; ++t)
    frames.push_back(test::random_image(h, w, seed + static_cast<std::uint64_t>(t) * 101));
  return frames;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("coding");

TEST_CASE("mask dimensions widen by n_f_max - 1") {
  const Mask mask = generate_mask(2, 2, 3, 0.5, 9);
  CHECK(mask.height == 2);
  CHECK(mask.width == 4);
}

TEST_CASE("same seed gives bit-identical masks") {
  const Mask a = generate_mask(32, 32, 8, 0.5, 1234);
  const Mask b = generate_mask(32, 32, 8, 0.5, 1234);
  CHECK(a.bits == b.bits);
  const Mask c = generate_mask(32, 32, 8, 0.5, 1235);
  CHECK(a.bits != c.bits);
}

TEST_CASE("density sets the fraction of ones") {
  const Mask mask = generate_mask(64, 64, 16, 0.999, 3);
  double ones = 0;
  for (auto b : mask.bits) ones += b;
  const double fraction = ones / static_cast<double>(mask.bits.size());
  CHECK(fraction >= 0.99);
  CHECK(fraction <= 1.0);
}

TEST_CASE("generate_mask validates inputs") {
  CHECK_THROWS_AS(generate_mask(0, 4, 2, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_mask(4, 4, 0, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_mask(4, 4, 2, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_mask(4, 4, 2, 1.0, 1), std::invalid_argument);
}

TEST_CASE("code windows shift with phase") {
  Mask mask = generate_mask(3, 4, 3, 0.5, 7);
  // plant an all-ones column at index 2
  for (int r = 0; r < 3; ++r) mask.bits[static_cast<std::size_t>(r) * mask.width + 2] = 1;
  const CodeSchedule schedule{mask, 1};

  const Image w0 = code_for_frame(schedule, 0, 3, 4);
  for (int r = 0; r < 3; ++r) CHECK(w0(r, 2) == 1.0);

  const Image w1 = code_for_frame(schedule, 1, 3, 4);
  for (int r = 0; r < 3; ++r) CHECK(w1(r, 1) == 1.0);

  CHECK_THROWS_AS(code_for_frame(schedule, 3, 3, 4), std::out_of_range);
}

TEST_CASE("phase wraps after mask_width - frame_width + 1 steps") {
  const CodeSchedule schedule{generate_mask(4, 8, 5, 0.5, 11), 1};
  const int phases = num_phases(schedule, 8);
  CHECK(phases == 5);
  for (int t = 0; t < 3 * phases; ++t)
    CHECK(phase_for_frame(schedule, t, 8) == t % phases);
}

TEST_CASE("forward with N_F=1 and all-ones mask is the identity") {
  Mask mask = generate_mask(6, 6, 1, 0.5, 2);
  std::fill(mask.bits.begin(), mask.bits.end(), std::uint8_t{1});
  const CodeSchedule schedule{mask, 1};
  const std::vector<Frame> frames = random_frames(1, 6, 6, 21);
  const Measurement m = forward(frames, schedule, 0);
  CHECK(m.n_frames == 1);
  for (std::size_t i = 0; i < m.pixels.size(); ++i)
    CHECK(m.pixels.pixels()[i] == frames[0].pixels()[i]);
}

TEST_CASE("constant frames sum the codes") {
  const CodeSchedule schedule{generate_mask(5, 7, 2, 0.5, 13), 1};
  std::vector<Frame> frames{Frame(5, 7, 1.0), Frame(5, 7, 1.0)};
  const Measurement m = forward(frames, schedule, 0);
  const Image c0 = code_for_frame(schedule, 0, 5, 7);
  const Image c1 = code_for_frame(schedule, 1, 5, 7);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 7; ++c) CHECK(m.pixels(r, c) == c0(r, c) + c1(r, c));
}

TEST_CASE("forward matches the brute-force oracle") {
  const Mask mask = generate_mask(8, 8, 4, 0.5, 17);
  const CodeSchedule schedule{mask, 1};
  const std::vector<Frame> frames = random_frames(4, 8, 8, 99);
  const Measurement m = forward(frames, schedule, 3);
  const Image expect = test::oracle_forward(frames, mask, 1, 3);
  for (std::size_t i = 0; i < m.pixels.size(); ++i)
    CHECK(m.pixels.pixels()[i] == doctest::Approx(expect.pixels()[i]).epsilon(1e-12));
}

TEST_CASE("adjoint of an all-ones mask replicates the measurement") {
  Mask mask = generate_mask(4, 4, 2, 0.5, 3);
  std::fill(mask.bits.begin(), mask.bits.end(), std::uint8_t{1});
  const CodeSchedule schedule{mask, 1};
  Measurement m;
  m.pixels = test::random_image(4, 4, 8);
  m.n_frames = 2;
  m.first_frame_index = 0;
  const std::vector<Frame> frames = adjoint(m, schedule);
  REQUIRE(frames.size() == 2);
  for (const Frame& f : frames)
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(f.pixels()[i] == m.pixels.pixels()[i]);
}

TEST_CASE("zero measurement maps to zero frames") {
  const CodeSchedule schedule{generate_mask(4, 4, 3, 0.5, 5), 1};
  Measurement m;
  m.pixels = Image(4, 4, 0.0);
  m.n_frames = 3;
  for (const Frame& f : adjoint(m, schedule))
    for (double v : f.pixels()) CHECK(v == 0.0);
}

TEST_CASE("adjoint identity <forward(x), y> == <x, adjoint(y)>") {
  const CodeSchedule schedule{generate_mask(6, 6, 3, 0.5, 23), 1};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::vector<Frame> x = random_frames(3, 6, 6, 1000 + seed);
    Measurement y;
    y.pixels = test::random_image(6, 6, 2000 + seed);
    y.n_frames = 3;
    y.first_frame_index = 0;

    const Measurement ax = forward(x, schedule, 0);
    const std::vector<Frame> aty = adjoint(y, schedule);

    const double lhs = dot(ax.pixels.pixels(), y.pixels.pixels());
    double rhs = 0.0;
    for (int t = 0; t < 3; ++t) rhs += dot(x[static_cast<std::size_t>(t)].pixels(),
                                           aty[static_cast<std::size_t>(t)].pixels());
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("forward is linear") {
  const CodeSchedule schedule{generate_mask(8, 8, 4, 0.5, 31), 1};
  std::mt19937_64 rng(55);
  const std::vector<Frame> x = random_frames(4, 8, 8, 3000);
  const std::vector<Frame> y = random_frames(4, 8, 8, 4000);
  const double alpha = 0.37, beta = -1.25;

  std::vector<Frame> combo;
  for (int t = 0; t < 4; ++t) {
    Frame f(8, 8);
    for (std::size_t i = 0; i < f.size(); ++i)
      f.pixels()[i] = alpha * x[static_cast<std::size_t>(t)].pixels()[i] +
                      beta * y[static_cast<std::size_t>(t)].pixels()[i];
    combo.push_back(std::move(f));
  }
  const Measurement mc = forward(combo, schedule, 2);
  const Measurement mx = forward(x, schedule, 2);
  const Measurement my = forward(y, schedule, 2);
  for (std::size_t i = 0; i < mc.pixels.size(); ++i)
    CHECK(mc.pixels.pixels()[i] ==
          doctest::Approx(alpha * mx.pixels.pixels()[i] + beta * my.pixels.pixels()[i])
              .epsilon(1e-9));
}

TEST_CASE("measurement pixels stay within [0, N_F] for unit frames") {
  const CodeSchedule schedule{generate_mask(16, 16, 8, 0.5, 41), 1};
  const std::vector<Frame> frames = random_frames(8, 16, 16, 5000);
  const Measurement m = forward(frames, schedule, 5);
  for (double v : m.pixels.pixels()) {
    CHECK(v >= 0.0);
    CHECK(v <= 8.0);
  }
}

TEST_CASE("dimension mismatches are errors") {
  const CodeSchedule schedule{generate_mask(4, 4, 2, 0.5, 1), 1};
  std::vector<Frame> frames{Frame(4, 4, 0.1), Frame(4, 5, 0.1)};
  CHECK_THROWS_AS(forward(frames, schedule, 0), std::invalid_argument);
  CHECK_THROWS_AS(forward(std::vector<Frame>{}, schedule, 0), std::invalid_argument);
}

TEST_CASE("mask round-trips through PGM plus sidecar") {
  test::TempDir dir("mask");
  const Mask mask = generate_mask(8, 8, 4, 0.5, 77);
  save_mask(mask, dir / "m.pgm");
  const Mask back = load_mask(dir / "m.pgm");
  CHECK(back.bits == mask.bits);
  CHECK(back.seed == 77);
  CHECK(back.density == 0.5);
  CHECK(back.n_f_max == 4);
}

TEST_SUITE_END();

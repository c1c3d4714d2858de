#include <doctest.h>

#include <cmath>
#include <vector>

#include "atcs/motion.hpp"
#include "atcs/synthetic.hpp"
#include "support/oracles.hpp"
#include "support/scenes.hpp"
#include "support/tempdir.hpp"

using namespace atcs;

namespace {

// A/B pair that is a pure integer translation everywhere: both are crops of
// one wider textured field.
struct TranslationPair {
  Image a;
  Image b;
};

Image crop(const Image& src, int x0, int h, int w) {
  Image out(h, w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) out(r, c) = src(r, x0 + c);
  return out;
}

TranslationPair translation_pair(int shift, int h, int w, double texture_scale,
                                 std::uint64_t seed) {
  const int margin = 12;
  Image field(h, w + 2 * margin);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < field.width(); ++c)
      field(r, c) = 0.1 + 0.8 * smooth_noise(c, r, texture_scale, seed);
  return {crop(field, margin, h, w), crop(field, margin - shift, h, w)};
}

bool fields_equal(const MotionField& x, const MotionField& y) {
  if (x.blocks.size() != y.blocks.size()) return false;
  for (std::size_t i = 0; i < x.blocks.size(); ++i) {
    if (x.blocks[i].dx != y.blocks[i].dx || x.blocks[i].dy != y.blocks[i].dy) return false;
    if (x.blocks[i].cost != y.blocks[i].cost) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("motion");

TEST_CASE("identical images give zero displacement and zero cost") {
  const Image a = test::random_image(48, 48, 3);
  for (auto algorithm : {SearchAlgorithm::FullSearch, SearchAlgorithm::CrossDiamond}) {
    BlockMatchParams params;
    params.algorithm = algorithm;
    const MotionField field = block_match(a, a, params);
    REQUIRE(field.blocks.size() == 9);
    for (const BlockMotion& b : field.blocks) {
      CHECK(b.dx == 0);
      CHECK(b.dy == 0);
      CHECK(b.cost == 0.0);
    }
  }
}

TEST_CASE("pure translation is recovered by full search on interior blocks") {
  const auto [a, b] = translation_pair(3, 48, 48, 1.0, 11);
  const MotionField field = full_search(a, b, BlockMatchParams{});
  for (const BlockMotion& blk : field.blocks) {
    if (blk.origin_x + 3 + 16 > 48) continue;
    CHECK(blk.dx == 3);
    CHECK(blk.dy == 0);
  }
}

TEST_CASE("full search equals the independent exhaustive oracle bit for bit") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Image a = test::random_image(48, 48, 9000 + seed);
    const Image b = test::random_image(48, 48, 9500 + seed);
    for (auto metric : {MatchMetric::MSE, MatchMetric::SAD}) {
      BlockMatchParams params;
      params.metric = metric;
      const MotionField impl = full_search(a, b, params);
      const MotionField oracle = test::oracle_block_match(a, b, params);
      CHECK(fields_equal(impl, oracle));
    }
  }
}

TEST_CASE("cross-diamond stops at the centre for identical images") {
  const Image a = test::random_image(64, 64, 42);
  const MotionField field = cross_diamond_search(a, a, BlockMatchParams{});
  for (const BlockMotion& b : field.blocks) {
    CHECK(b.dx == 0);
    CHECK(b.dy == 0);
  }
}

TEST_CASE("cross-diamond equals full search on a (2,0) translation") {
  const auto [a, b] = translation_pair(2, 48, 48, 12.0, 43);
  const MotionField fs = full_search(a, b, BlockMatchParams{});
  const MotionField cds = cross_diamond_search(a, b, BlockMatchParams{});
  for (std::size_t i = 0; i < fs.blocks.size(); ++i) {
    if (fs.blocks[i].origin_x + 2 + 16 > 48) continue;
    CHECK(fs.blocks[i].dx == 2);
    CHECK(cds.blocks[i].dx == fs.blocks[i].dx);
    CHECK(cds.blocks[i].dy == fs.blocks[i].dy);
  }
}

TEST_CASE("cross-diamond cost never beats full search; means stay close") {
  double sum_full = 0.0, sum_cds = 0.0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    // moderately smooth random texture; pattern searches assume a
    // correlated cost surface
    const Image a = [&] {
      Image img(48, 48);
      for (int r = 0; r < 48; ++r)
        for (int c = 0; c < 48; ++c) img(r, c) = smooth_noise(c, r, 3.0, 7000 + seed);
      return img;
    }();
    const Image b = [&] {
      Image img(48, 48);
      for (int r = 0; r < 48; ++r)
        for (int c = 0; c < 48; ++c) img(r, c) = smooth_noise(c, r, 3.0, 7100 + seed);
      return img;
    }();
    const MotionField fs = full_search(a, b, BlockMatchParams{});
    const MotionField cds = cross_diamond_search(a, b, BlockMatchParams{});
    for (std::size_t i = 0; i < fs.blocks.size(); ++i) {
      CHECK(cds.blocks[i].cost >= fs.blocks[i].cost);
      sum_full += fs.blocks[i].cost;
      sum_cds += cds.blocks[i].cost;
    }
  }
  CHECK(sum_cds <= sum_full * 1.10);
}

TEST_CASE("translation recovery holds across the whole window range") {
  for (int shift : {-12, -7, -1, 1, 5, 12}) {
    const auto [a, b] = translation_pair(shift, 48, 48, 1.0, 100 + shift);
    const MotionField field = full_search(a, b, BlockMatchParams{});
    for (const BlockMotion& blk : field.blocks) {
      if (blk.origin_x + shift < 0 || blk.origin_x + shift + 16 > 48) continue;
      CHECK(blk.dx == shift);
      CHECK(blk.dy == 0);
    }
  }
}

TEST_CASE("reversing the image order negates the displacement") {
  const auto [a, b] = translation_pair(4, 48, 48, 1.0, 77);
  const MotionField fwd = full_search(a, b, BlockMatchParams{});
  const MotionField bwd = full_search(b, a, BlockMatchParams{});
  for (std::size_t i = 0; i < fwd.blocks.size(); ++i) {
    const BlockMotion& f = fwd.blocks[i];
    const BlockMotion& r = bwd.blocks[i];
    const bool f_interior = f.origin_x + 4 + 16 <= 48;
    const bool r_interior = r.origin_x - 4 >= 0;
    if (!f_interior || !r_interior) continue;
    CHECK(f.dx == 4);
    CHECK(r.dx == -4);
  }
}

TEST_CASE("errors: size mismatch and too-small images") {
  CHECK_THROWS_AS(full_search(Image(32, 32, 0.0), Image(32, 33, 0.0), BlockMatchParams{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(full_search(Image(8, 8, 0.0), Image(8, 8, 0.0), BlockMatchParams{}),
                  std::invalid_argument);
}

TEST_CASE("segment labels foreground strictly above threshold") {
  MotionField field;
  field.grid_rows = 1;
  field.grid_cols = 3;
  field.block_size = 16;
  field.blocks = {{0, 0, 0, 0, 0, 0, 0.0}, {0, 1, 0, 16, 3, 4, 0.0}, {0, 2, 0, 32, 0, 0, 0.0}};

  SUBCASE("zero field, zero threshold: all background") {
    MotionField zeros = field;
    zeros.blocks[1].dx = zeros.blocks[1].dy = 0;
    const SegmentationMap map = segment(zeros, 0.0);
    for (BlockLabel l : map.labels) CHECK(l == BlockLabel::Background);
  }
  SUBCASE("magnitude-5 block against threshold 2") {
    const SegmentationMap map = segment(field, 2.0);
    CHECK(map.labels[0] == BlockLabel::Background);
    CHECK(map.labels[1] == BlockLabel::Foreground);
    CHECK(map.labels[2] == BlockLabel::Background);
  }
  SUBCASE("threshold brackets the magnitude") {
    CHECK(segment(field, 4.99).labels[1] == BlockLabel::Foreground);
    CHECK(segment(field, 5.01).labels[1] == BlockLabel::Background);
    CHECK(segment(field, 5.0).labels[1] == BlockLabel::Background);  // strict
  }
}

TEST_CASE("raising the threshold never creates foreground") {
  MotionField field;
  field.grid_rows = 2;
  field.grid_cols = 2;
  field.block_size = 16;
  field.blocks = {{0, 0, 0, 0, 1, 1, 0.0},
                  {0, 1, 0, 16, -3, 2, 0.0},
                  {1, 0, 16, 0, 0, 7, 0.0},
                  {1, 1, 16, 16, 2, 2, 0.0}};
  for (double lo = 0.0; lo < 8.0; lo += 0.5) {
    const SegmentationMap a = segment(field, lo);
    const SegmentationMap b = segment(field, lo + 0.5);
    for (std::size_t i = 0; i < a.labels.size(); ++i)
      if (b.labels[i] == BlockLabel::Foreground) CHECK(a.labels[i] == BlockLabel::Foreground);
  }
}

TEST_CASE("scene velocity is the max displacement over frames spanned") {
  MotionField field;
  field.grid_rows = 1;
  field.grid_cols = 2;
  field.block_size = 16;
  field.blocks = {{0, 0, 0, 0, 0, 0, 0.0}, {0, 1, 0, 16, 0, 0, 0.0}};

  SUBCASE("all-zero field gives zero velocity") {
    CHECK(scene_velocity(field, 4).v == 0.0);
  }
  SUBCASE("displacement 8 over 8 frames gives unit velocity") {
    field.blocks[1].dx = 8;
    const SceneVelocity v = scene_velocity(field, 8);
    CHECK(v.max_block_displacement == 8.0);
    CHECK(v.v == 1.0);
  }
  SUBCASE("empty field is an error") {
    field.blocks.clear();
    CHECK_THROWS_AS(scene_velocity(field, 1), std::invalid_argument);
    }
}

TEST_CASE("textured square at 2 px/frame measures near 2 from N_F=4 measurements") {
  const VideoSequence video = test::velocity_scene(2.0, 4 * 4, 17, true);
  const double v = test::measured_velocity(video, 4, 32);
  CHECK(v >= 1.5);
  CHECK(v <= 2.5);
}

TEST_CASE("motion field exports block rows as CSV") {
  test::TempDir dir("motioncsv");
  const Image a = test::random_image(32, 32, 1);
  const Image b = test::random_image(32, 32, 2);
  const MotionField field = full_search(a, b, BlockMatchParams{});
  save_motion_csv(field, dir / "f.csv");
  std::ifstream in(dir / "f.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# atcs motion-field", 0) == 0);
  std::getline(in, line);
  CHECK(line == "block_row,block_col,dx,dy,cost");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == static_cast<int>(field.blocks.size()));
}

TEST_SUITE_END();

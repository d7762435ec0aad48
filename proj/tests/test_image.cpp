#include <fstream>

#include "bongard/error.hpp"
#include "bongard/image.hpp"
#include "bongard/rng.hpp"
#include "test_util.hpp"

using namespace bongard;

namespace {

Image random_image(int w, int h, std::uint64_t seed, double density = 0.4) {
  Rng rng(seed);
  Image img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) img.set(x, y, rng.bernoulli(density) ? 1 : 0);
  }
  return img;
}

std::vector<Image> group(std::uint64_t seed, int side = 8) {
  std::vector<Image> g;
  for (int k = 0; k < kGroupSize; ++k) g.push_back(random_image(side, side, seed + static_cast<std::uint64_t>(k)));
  return g;
}

}  // namespace

TEST_CASE("image rejects bad shapes and values") {
  CHECK_ERROR_CODE(Image(0, 4), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(Image(2, 2, {0, 1, 1}), ErrorCode::DimensionMismatch);
  CHECK_ERROR_CODE(Image(2, 1, {0, 2}), ErrorCode::MalformedFormat);
  Image img(3, 2, {1, 0, 1, 0, 0, 1});
  CHECK(img.at(2, 1) == 1);
  CHECK(img.ink_count() == 3);
}

TEST_CASE("pbm round trip") {
  const Image img = random_image(37, 11, 5);
  CHECK(parse_pbm(to_pbm(img)) == img);

  // Comments, and pixel digits packed without separators.
  const Image packed = parse_pbm("P1\n# comment\n3 2\n101\n# another\n0 1 1\n");
  CHECK(packed == Image(3, 2, {1, 0, 1, 0, 1, 1}));

  CHECK_ERROR_CODE(parse_pbm("P4\n1 1\n0\n"), ErrorCode::MalformedFormat);
  CHECK_ERROR_CODE(parse_pbm("P1\n2 1\n0 2\n"), ErrorCode::MalformedFormat);
  CHECK_ERROR_CODE(parse_pbm("P1\n2 1\n0\n"), ErrorCode::MalformedFormat);
  CHECK_ERROR_CODE(parse_pbm("P1\n1 1\n0 1\n"), ErrorCode::MalformedFormat);
}

TEST_CASE("downsample by an integer factor is a 2x2 majority with ties to ink") {
  const Image img = random_image(16, 16, 9, 0.5);
  const Image small = downsample(img, 8, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      const int ink = img.at(2 * x, 2 * y) + img.at(2 * x + 1, 2 * y) + img.at(2 * x, 2 * y + 1) +
                      img.at(2 * x + 1, 2 * y + 1);
      CHECK(small.at(x, y) == (ink >= 2 ? 1 : 0));
    }
  }
  CHECK(downsample(img, 16, 16) == img);
}

TEST_CASE("downsample keeps uniform images uniform at uneven ratios") {
  Image ones(23, 17, std::vector<std::uint8_t>(23 * 17, 1));
  const Image d = downsample(ones, 7, 5);
  CHECK(d.ink_count() == 35);
  CHECK(downsample(Image(23, 17), 7, 5).ink_count() == 0);
  CHECK_ERROR_CODE(downsample(ones, 24, 5), ErrorCode::InvalidTarget);
  CHECK_ERROR_CODE(downsample(ones, 0, 5), ErrorCode::InvalidTarget);
}

TEST_CASE("problem indexing and pair states") {
  BongardProblem bp(7, group(1), group(100));
  CHECK(bp.image(0) == bp.left()[0]);
  CHECK(bp.image(11) == bp.right()[5]);
  CHECK(bp.group_of(5) == GroupLabel::Left);
  CHECK(bp.group_of(6) == GroupLabel::Right);
  CHECK_FALSE(bp.has_ground_truth());

  const PairState s = make_state(bp.image(1), bp.image(8));
  CHECK(s.channel(0) == bp.image(1));
  CHECK(s.swapped().channel(0) == bp.image(8));
  CHECK(s.swapped().swapped() == s);

  auto short_group = group(1);
  short_group.pop_back();
  CHECK_ERROR_CODE(BongardProblem(0, short_group, group(2)), ErrorCode::InvalidArgument);
  auto mixed = group(1);
  mixed[3] = random_image(9, 8, 4);
  CHECK_ERROR_CODE(BongardProblem(0, mixed, group(2)), ErrorCode::DimensionMismatch);
}

TEST_CASE("save and load a problem directory") {
  TempDir tmp("image");
  const BongardProblem bp(42, group(3, 12), group(30, 12));
  const auto dir = tmp.path / "0042";
  save_bp(bp, dir);
  const BongardProblem loaded = load_bp(dir);
  CHECK(loaded.id() == 42);
  CHECK_FALSE(loaded.solution().has_value());
  for (int i = 0; i < kImagesPerProblem; ++i) CHECK(loaded.image(i) == bp.image(i));

  std::filesystem::remove(dir / "07.pbm");
  CHECK_ERROR_CODE(load_bp(dir), ErrorCode::MissingFile);

  write_pbm(random_image(10, 12, 2), dir / "07.pbm");
  CHECK_ERROR_CODE(load_bp(dir), ErrorCode::DimensionMismatch);
}

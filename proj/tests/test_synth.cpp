#include <cmath>
#include <deque>
#include <numbers>

#include "bongard/error.hpp"
#include "bongard/harness.hpp"
#include "bongard/synth.hpp"
#include "test_util.hpp"

using namespace bongard;

namespace {

// 8-connected ink components, by flood fill.
int count_components(const Image& img) {
  std::vector<int> seen(static_cast<std::size_t>(img.width() * img.height()), 0);
  int components = 0;
  for (int y0 = 0; y0 < img.height(); ++y0) {
    for (int x0 = 0; x0 < img.width(); ++x0) {
      if (!img.at(x0, y0) || seen[static_cast<std::size_t>(y0 * img.width() + x0)]) continue;
      ++components;
      std::deque<std::pair<int, int>> queue{{x0, y0}};
      seen[static_cast<std::size_t>(y0 * img.width() + x0)] = 1;
      while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= img.width() || ny >= img.height() || !img.at(nx, ny)) continue;
            auto& s = seen[static_cast<std::size_t>(ny * img.width() + nx)];
            if (!s) {
              s = 1;
              queue.emplace_back(nx, ny);
            }
          }
        }
      }
    }
  }
  return components;
}

SynthConfig config_with_seed(std::uint64_t seed) {
  SynthConfig c;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("filled circle matches a brute-force disc") {
  for (int size : {6, 8, 10, 12, 16}) {
    const Shape s{ShapeKind::Circle, 16, 16, size, true};
    const Image img = render_scene(make_scene({s}), 32, 32);
    const double r = size / 2.0;
    int expected = 0;
    for (int y = 0; y < 32; ++y) {
      for (int x = 0; x < 32; ++x) {
        const double dx = x + 0.5 - 16, dy = y + 0.5 - 16;
        const bool in = dx * dx + dy * dy <= r * r;
        expected += in;
        CHECK(img.at(x, y) == (in ? 1 : 0));
      }
    }
    CHECK(static_cast<int>(img.ink_count()) == expected);
    CHECK(std::abs(expected - std::numbers::pi * r * r) <= 2 * std::numbers::pi * r);
  }
}

TEST_CASE("square areas and outline rings") {
  const Image filled = render_scene(make_scene({Shape{ShapeKind::Square, 16, 16, 10, true}}), 32, 32);
  CHECK(filled.ink_count() == 100);
  const Image outline = render_scene(make_scene({Shape{ShapeKind::Square, 16, 16, 10, false}}), 32, 32);
  CHECK(outline.ink_count() == 100 - 36);
  const Image tri = render_scene(make_scene({Shape{ShapeKind::Triangle, 16, 16, 16, true}}), 32, 32);
  CHECK(std::abs(static_cast<double>(tri.ink_count()) - 128.0) <= 16.0);
  CHECK_ERROR_CODE(render_scene(make_scene({Shape{ShapeKind::Square, 2, 2, 10, true}}), 32, 32), ErrorCode::OutOfCanvas);
}

TEST_CASE("containment is derived from geometry") {
  const Shape outer{ShapeKind::Circle, 16, 16, 16, false};
  const Shape inner{ShapeKind::Square, 16, 16, 6, true};
  const SceneDescription scene = make_scene({outer, inner});
  REQUIRE(scene.containment.size() == 1);
  CHECK(scene.containment[0] == std::pair{0, 1});
  CHECK(scene_is_valid(scene, 32, 32));
  CHECK(make_scene({Shape{ShapeKind::Circle, 8, 8, 6, true}, Shape{ShapeKind::Circle, 22, 22, 6, true}}).containment.empty());
}

TEST_CASE("generated groups are separated by their concept") {
  for (const std::string& text : harness::kMixedConcepts) {
    CAPTURE(text);
    const Concept rule = parse_concept(text);
    for (bool leading : {false, true}) {
      SynthConfig c = config_with_seed(17);
      c.leading_pairs = leading;
      const BongardProblem bp = generate_bp(rule, c, 3);
      REQUIRE(bp.has_ground_truth());
      for (int i = 0; i < kImagesPerProblem; ++i) {
        CHECK(concept_predicate(rule, bp.scenes()[static_cast<std::size_t>(i)]) == (i < kGroupSize));
        CHECK(scene_is_valid(bp.scenes()[static_cast<std::size_t>(i)], 32, 32));
        CHECK(render_scene(bp.scenes()[static_cast<std::size_t>(i)], 32, 32) == bp.image(i));
      }
    }
  }
}

TEST_CASE("every separated shape renders as one ink component") {
  int scenes_checked = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const BongardProblem bp = generate_bp(parse_concept("fill"), config_with_seed(seed));
    for (int i = 0; i < kImagesPerProblem; ++i) {
      const SceneDescription& scene = bp.scenes()[static_cast<std::size_t>(i)];
      CHECK(count_components(bp.image(i)) == static_cast<int>(scene.shapes.size()));
      ++scenes_checked;
    }
  }
  CHECK(scenes_checked == 120);
}

TEST_CASE("generation is deterministic in the seed") {
  const Concept rule = parse_concept("shape:triangle");
  const BongardProblem a = generate_bp(rule, config_with_seed(5));
  const BongardProblem b = generate_bp(rule, config_with_seed(5));
  const BongardProblem c = generate_bp(rule, config_with_seed(6));
  bool all_equal = true, any_differs = false;
  for (int i = 0; i < kImagesPerProblem; ++i) {
    all_equal = all_equal && a.image(i) == b.image(i);
    any_differs = any_differs || !(a.image(i) == c.image(i));
  }
  CHECK(all_equal);
  CHECK(any_differs);
}

TEST_CASE("factor_count") {
  const BongardProblem bp = generate_bp(parse_concept("fill"), config_with_seed(2));
  for (int i = 0; i < kImagesPerProblem; ++i) CHECK(factor_count(bp, i, i) == 0);
  for (int j = 0; j < kGroupSize; ++j) CHECK(factor_count(bp, j, kGroupSize + j) >= 1);

  const SceneDescription one = make_scene({Shape{ShapeKind::Circle, 10, 10, 6, true}});
  const SceneDescription two = make_scene({Shape{ShapeKind::Square, 10, 10, 14, false}, Shape{ShapeKind::Circle, 24, 24, 6, true}});
  std::vector<SceneDescription> scenes(kImagesPerProblem, one);
  scenes[1] = two;
  std::vector<Image> left, right;
  for (int i = 0; i < kGroupSize; ++i) {
    left.push_back(render_scene(scenes[static_cast<std::size_t>(i)], 32, 32));
    right.push_back(render_scene(one, 32, 32));
  }
  const BongardProblem manual(0, left, right, parse_concept("numerosity:1"), scenes);
  // numerosity, kinds, fills and sizes differ; no enclosure either side.
  CHECK(factor_count(manual, 0, 1) == 4);

  const BongardProblem bare(0, bp.left(), bp.right());
  CHECK_ERROR_CODE(factor_count(bare, 0, 1), ErrorCode::NoGroundTruth);
}

TEST_CASE("concept syntax") {
  CHECK(concept_to_string(parse_concept("fill:outline+shape:!circle")) == "fill:outline+shape:!circle");
  CHECK(parse_concept("numerosity:>=2").k() == 1);
  CHECK(parse_concept("size:large+enclosure").k() == 2);
  const Concept round = concept_from_json(to_json(parse_concept("numerosity:<=2+size:small")));
  CHECK(concept_to_string(round) == "numerosity:<=2+size:small");
  CHECK_ERROR_CODE(parse_concept("colour:red"), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(parse_concept("fill+fill:outline"), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(parse_concept(""), ErrorCode::InvalidArgument);
}

TEST_CASE("impossible concepts run out of retries") {
  CHECK_ERROR_CODE(generate_bp(parse_concept("numerosity:6"), config_with_seed(1)), ErrorCode::UnsatisfiableConcept);
}

TEST_CASE("synth config validation") {
  SynthConfig c;
  c.canvas_w = 8;
  CHECK_ERROR_CODE(validate(c), ErrorCode::InvalidArgument);
  CHECK(min_shape_size(32, 32) == 6);
  CHECK(max_shape_size(32, 32) == 16);
  CHECK(size_threshold(32, 32) == 11);
}

#include "bongard/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "bongard/error.hpp"
#include "bongard/rng.hpp"
#include "geometry.hpp"

namespace bongard {

using nlohmann::json;

void validate(const SynthConfig& config) {
  if (config.canvas_w < 16 || config.canvas_h < 16) {
    throw Error(ErrorCode::InvalidArgument, "synthetic canvas must be at least 16x16");
  }
  if (config.max_shapes < 1) throw Error(ErrorCode::InvalidArgument, "max_shapes must be >= 1");
}

namespace {

int even_floor(int v) { return v - (v % 2); }

}  // namespace

int min_shape_size(int canvas_w, int canvas_h) {
  return std::max(6, even_floor(std::min(canvas_w, canvas_h) / 8));
}

int max_shape_size(int canvas_w, int canvas_h) {
  return std::max(min_shape_size(canvas_w, canvas_h), even_floor(std::min(canvas_w, canvas_h) / 2));
}

int size_threshold(int canvas_w, int canvas_h) {
  return (min_shape_size(canvas_w, canvas_h) + max_shape_size(canvas_w, canvas_h)) / 2;
}

// ---------------------------------------------------------------------------
// Predicates

namespace {

bool atom_holds(const Atom& atom, const SceneDescription& scene) {
  const auto& shapes = scene.shapes;
  return std::visit(
      [&](const auto& a) -> bool {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, NumerosityAtom>) {
          const int n = static_cast<int>(shapes.size());
          switch (a.cmp) {
            case Comparison::Exactly: return n == a.count;
            case Comparison::AtLeast: return n >= a.count;
            case Comparison::AtMost: return n <= a.count;
          }
          return false;
        } else if constexpr (std::is_same_v<T, ShapeClassAtom>) {
          const bool any = std::any_of(shapes.begin(), shapes.end(), [&](const Shape& s) { return s.kind == a.kind; });
          return any == a.present;
        } else if constexpr (std::is_same_v<T, FillAtom>) {
          return std::all_of(shapes.begin(), shapes.end(), [&](const Shape& s) { return s.filled == a.filled; });
        } else if constexpr (std::is_same_v<T, SizeAtom>) {
          return std::all_of(shapes.begin(), shapes.end(),
                             [&](const Shape& s) { return (s.size >= a.threshold) == a.large; });
        } else {
          return scene.containment.empty() != a.present;
        }
      },
      atom);
}

}  // namespace

bool concept_predicate(const Concept& rule, const SceneDescription& scene) {
  return std::all_of(rule.atoms.begin(), rule.atoms.end(),
                     [&](const Atom& atom) { return atom_holds(atom, scene); });
}

// ---------------------------------------------------------------------------
// Scene validity and rendering

namespace {

bool fits(const Shape& s, int w, int h) {
  const PixelBox b = bounding_box(s);
  return s.size >= 2 && b.x0 >= 1 && b.y0 >= 1 && b.x1 <= w - 1 && b.y1 <= h - 1;
}

bool separated(const Shape& a, const Shape& b) {
  const PixelBox p = bounding_box(a);
  const PixelBox q = bounding_box(b);
  return p.x1 < q.x0 || q.x1 < p.x0 || p.y1 < q.y0 || q.y1 < p.y0;
}

bool properly_nested(const Shape& outer, const Shape& inner) {
  if (outer.filled) return false;
  const PixelBox b = bounding_box(inner);
  const double clearance = kOutlineWidth + 1.0;
  return inside_depth(outer, b.x0, b.y0) >= clearance && inside_depth(outer, b.x1, b.y0) >= clearance &&
         inside_depth(outer, b.x0, b.y1) >= clearance && inside_depth(outer, b.x1, b.y1) >= clearance;
}

}  // namespace

bool scene_is_valid(const SceneDescription& scene, int w, int h) {
  const auto& shapes = scene.shapes;
  std::vector<int> role(shapes.size(), 0);  // bit 1 outer, bit 2 inner
  for (const auto& [outer, inner] : scene.containment) {
    role[outer] |= 1;
    role[inner] |= 2;
  }
  for (std::size_t a = 0; a < shapes.size(); ++a) {
    if (!fits(shapes[a], w, h) || role[a] == 3) return false;
    for (std::size_t b = a + 1; b < shapes.size(); ++b) {
      if (separated(shapes[a], shapes[b])) continue;
      if (encloses(shapes[a], shapes[b]) && properly_nested(shapes[a], shapes[b])) continue;
      if (encloses(shapes[b], shapes[a]) && properly_nested(shapes[b], shapes[a])) continue;
      return false;
    }
  }
  return true;
}

Image render_scene(const SceneDescription& scene, int w, int h) {
  Image img(w, h);
  for (const Shape& shape : scene.shapes) {
    if (!fits(shape, w, h)) throw Error(ErrorCode::OutOfCanvas, "shape does not fit the canvas with a 1-pixel margin");
    const PixelBox box = bounding_box(shape);
    for (int y = box.y0; y < box.y1; ++y) {
      for (int x = box.x0; x < box.x1; ++x) {
        const double depth = inside_depth(shape, x + 0.5, y + 0.5);
        if (depth >= 0.0 && (shape.filled || depth < kOutlineWidth)) img.set(x, y, 1);
      }
    }
  }
  return img;
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

class SceneSampler {
 public:
  SceneSampler(const SynthConfig& config, Rng& rng)
      : w_(config.canvas_w), h_(config.canvas_h), max_shapes_(config.max_shapes), rng_(rng),
        min_size_(min_shape_size(w_, h_)), max_size_(max_shape_size(w_, h_)) {}

  int random_size(int lo, int hi) {
    lo += lo % 2;
    hi -= hi % 2;
    if (hi < lo) return lo;
    return lo + 2 * static_cast<int>(rng_.uniform_int(0, (hi - lo) / 2));
  }

  ShapeKind random_kind() { return static_cast<ShapeKind>(rng_.uniform_int(0, 2)); }

  /// Moves `s` to a random position that fits the canvas.
  void random_position(Shape& s) {
    const int lo_x = 1 + s.size / 2;
    const int hi_x = w_ - 1 - s.size + s.size / 2;
    const int lo_y = 1 + s.size / 2;
    const int hi_y = h_ - 1 - s.size + s.size / 2;
    s.cx = static_cast<int>(rng_.uniform_int(lo_x, std::max(lo_x, hi_x)));
    s.cy = static_cast<int>(rng_.uniform_int(lo_y, std::max(lo_y, hi_y)));
  }

  /// Tries to place `s` somewhere free; returns false when no spot is found.
  bool place_free(std::vector<Shape>& shapes, Shape s) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      random_position(s);
      if (!fits(s, w_, h_)) continue;
      if (std::all_of(shapes.begin(), shapes.end(), [&](const Shape& o) { return separated(o, s); })) {
        shapes.push_back(s);
        return true;
      }
    }
    return false;
  }

  /// Center for a shape nested inside `outer`.
  static std::pair<int, int> nest_center(const Shape& outer) {
    if (outer.kind == ShapeKind::Triangle) {
      const PixelBox b = bounding_box(outer);
      return {outer.cx, b.y0 + (2 * outer.size) / 3};
    }
    return {outer.cx, outer.cy};
  }

  bool try_nest(const std::vector<Shape>& shapes, const Shape& outer, Shape& inner) {
    const auto [cx, cy] = nest_center(outer);
    inner.cx = cx;
    inner.cy = cy;
    if (!encloses(outer, inner) || !properly_nested(outer, inner)) return false;
    return std::all_of(shapes.begin(), shapes.end(), [&](const Shape& o) {
      return &o == &outer || separated(o, inner);
    });
  }

  bool random_fill(int mode) {
    if (mode == 0) return true;
    if (mode == 1) return false;
    return rng_.bernoulli(0.5);
  }

  SceneDescription random_scene() {
    const int n = static_cast<int>(rng_.uniform_int(1, max_shapes_));
    const int fill_mode = static_cast<int>(rng_.uniform_int(0, 2));
    std::vector<Shape> shapes;
    if (n >= 2 && rng_.bernoulli(0.3)) {
      Shape outer{random_kind(), 0, 0, random_size(std::min(max_size_, min_size_ + 8), max_size_), false};
      random_position(outer);
      for (int attempt = 0; attempt < 4; ++attempt) {
        Shape inner{random_kind(), 0, 0, random_size(min_size_, outer.size - 6), random_fill(fill_mode)};
        std::vector<Shape> with_outer{outer};
        if (try_nest(with_outer, with_outer.front(), inner)) {
          shapes = {outer, inner};
          break;
        }
      }
    }
    while (static_cast<int>(shapes.size()) < n) {
      Shape s{random_kind(), 0, 0, random_size(min_size_, max_size_), random_fill(fill_mode)};
      if (!place_free(shapes, s)) break;
    }
    return make_scene(std::move(shapes));
  }

  // -- factor mutations used for leading pairs --

  bool mutate_numerosity(std::vector<Shape>& shapes) {
    const int n = static_cast<int>(shapes.size());
    if (max_shapes_ < 2) return false;
    int target = static_cast<int>(rng_.uniform_int(1, max_shapes_ - 1));
    if (target >= n) ++target;
    while (static_cast<int>(shapes.size()) > target) {
      shapes.erase(shapes.begin() + rng_.uniform_int(0, static_cast<std::int64_t>(shapes.size()) - 1));
    }
    while (static_cast<int>(shapes.size()) < target) {
      const auto pick = rng_.uniform_int(0, static_cast<std::int64_t>(shapes.size()) - 1);
      const bool filled = shapes[static_cast<std::size_t>(pick)].filled;
      if (!place_free(shapes, Shape{random_kind(), 0, 0, random_size(min_size_, max_size_), filled})) return false;
    }
    return true;
  }

  template <typename Fn>
  bool mutate_subset(std::vector<Shape>& shapes, Fn&& fn) {
    if (shapes.empty()) return false;
    bool any = false;
    const auto forced = static_cast<std::size_t>(rng_.uniform_int(0, static_cast<std::int64_t>(shapes.size()) - 1));
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      if (i == forced || rng_.bernoulli(0.5)) any |= fn(shapes[i]);
    }
    return any;
  }

  bool mutate_shape_class(std::vector<Shape>& shapes) {
    return mutate_subset(shapes, [&](Shape& s) {
      s.kind = static_cast<ShapeKind>((static_cast<int>(s.kind) + rng_.uniform_int(1, 2)) % 3);
      return true;
    });
  }

  bool mutate_fill(std::vector<Shape>& shapes) {
    return mutate_subset(shapes, [](Shape& s) {
      s.filled = !s.filled;
      return true;
    });
  }

  bool mutate_size(std::vector<Shape>& shapes) {
    return mutate_subset(shapes, [&](Shape& s) {
      const int old = s.size;
      s.size = random_size(min_size_, max_size_);
      return s.size != old;
    });
  }

  bool mutate_enclosure(std::vector<Shape>& shapes) {
    const SceneDescription scene = make_scene(shapes);
    if (!scene.containment.empty()) {
      // Pull every inner shape out to a free spot.
      std::vector<int> inners;
      for (const auto& pair : scene.containment) inners.push_back(pair.second);
      std::sort(inners.begin(), inners.end());
      inners.erase(std::unique(inners.begin(), inners.end()), inners.end());
      std::vector<Shape> kept;
      std::vector<Shape> moved;
      for (int i = 0; i < static_cast<int>(shapes.size()); ++i) {
        (std::binary_search(inners.begin(), inners.end(), i) ? moved : kept).push_back(shapes[i]);
      }
      for (const Shape& s : moved) {
        if (!place_free(kept, s)) return false;
      }
      shapes = std::move(kept);
      return true;
    }
    // Move a shape inside a larger outline shape.
    const int n = static_cast<int>(shapes.size());
    for (int attempt = 0; attempt < 2 * n * n; ++attempt) {
      const int o = static_cast<int>(rng_.uniform_int(0, n - 1));
      const int i = static_cast<int>(rng_.uniform_int(0, n - 1));
      if (o == i || shapes[o].filled) continue;
      std::vector<Shape> others;
      for (int k = 0; k < n; ++k) {
        if (k != i) others.push_back(shapes[k]);
      }
      Shape inner = shapes[i];
      const auto outer_it = std::find(others.begin(), others.end(), shapes[o]);
      if (try_nest(others, *outer_it, inner)) {
        shapes[i] = inner;
        return true;
      }
    }
    return false;
  }

  bool mutate(std::vector<Shape>& shapes, Factor factor) {
    switch (factor) {
      case Factor::Numerosity: return mutate_numerosity(shapes);
      case Factor::ShapeClass: return mutate_shape_class(shapes);
      case Factor::Fill: return mutate_fill(shapes);
      case Factor::Size: return mutate_size(shapes);
      case Factor::Enclosure: return mutate_enclosure(shapes);
    }
    return false;
  }

  Rng& rng() { return rng_; }

 private:
  int w_;
  int h_;
  int max_shapes_;
  Rng& rng_;
  int min_size_;
  int max_size_;
};

SceneDescription sample_matching(const Concept& rule, const SynthConfig& config, std::uint64_t seed,
                                 bool satisfy) {
  Rng rng(seed);
  SceneSampler sampler(config, rng);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    SceneDescription scene = sampler.random_scene();
    if (scene.shapes.empty() || !scene_is_valid(scene, config.canvas_w, config.canvas_h)) continue;
    if (concept_predicate(rule, scene) == satisfy) return scene;
  }
  throw Error(ErrorCode::UnsatisfiableConcept,
              "no scene " + std::string(satisfy ? "satisfying" : "violating") + " '" + concept_to_string(rule) +
                  "' within the retry budget");
}

SceneDescription mutate_counterpart(const Concept& rule, const SynthConfig& config, std::uint64_t seed,
                                    const SceneDescription& source) {
  Rng rng(seed);
  SceneSampler sampler(config, rng);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::vector<Shape> shapes = source.shapes;
    bool changed = false;
    const auto forced = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(rule.k()) - 1));
    for (std::size_t a = 0; a < rule.k(); ++a) {
      if (a == forced || rng.bernoulli(0.5)) changed |= sampler.mutate(shapes, factor_of(rule.atoms[a]));
    }
    if (!changed || shapes.empty()) continue;
    SceneDescription scene = make_scene(std::move(shapes));
    if (scene_is_valid(scene, config.canvas_w, config.canvas_h) && !concept_predicate(rule, scene)) return scene;
  }
  // Some sources admit no valid minimal edit (a nested outer shape that
  // cannot change kind); draw an unrelated violating scene instead.
  return sample_matching(rule, config, derive_seed(seed, 1), false);
}

}  // namespace

BongardProblem generate_bp(const Concept& rule, const SynthConfig& config, int id) {
  validate(rule);
  validate(config);
  std::vector<SceneDescription> scenes(kImagesPerProblem);
  for (int j = 0; j < kGroupSize; ++j) {
    scenes[j] = sample_matching(rule, config, derive_seed(config.seed, j), true);
  }
  for (int j = 0; j < kGroupSize; ++j) {
    const std::uint64_t seed = derive_seed(config.seed, 100 + j);
    scenes[kGroupSize + j] = config.leading_pairs ? mutate_counterpart(rule, config, seed, scenes[j])
                                                  : sample_matching(rule, config, seed, false);
  }
  for (int j = 0; j < kImagesPerProblem; ++j) {
    if (concept_predicate(rule, scenes[j]) != (j < kGroupSize)) {
      throw std::logic_error("generated problem violates group separation");
    }
  }
  std::vector<Image> left;
  std::vector<Image> right;
  for (int j = 0; j < kImagesPerProblem; ++j) {
    (j < kGroupSize ? left : right).push_back(render_scene(scenes[j], config.canvas_w, config.canvas_h));
  }
  return BongardProblem(id, std::move(left), std::move(right), rule, std::move(scenes));
}

// ---------------------------------------------------------------------------
// Factor bookkeeping

namespace {

struct FactorValues {
  int numerosity = 0;
  int kinds = 0;
  int fills = 0;
  int sizes = 0;
  bool enclosure = false;
};

FactorValues factor_values(const SceneDescription& scene, int threshold) {
  FactorValues v;
  v.numerosity = static_cast<int>(scene.shapes.size());
  for (const Shape& s : scene.shapes) {
    v.kinds |= 1 << static_cast<int>(s.kind);
    v.fills |= s.filled ? 1 : 2;
    v.sizes |= s.size >= threshold ? 2 : 1;
  }
  v.enclosure = !scene.containment.empty();
  return v;
}

}  // namespace

int factor_count(const BongardProblem& bp, int i, int j) {
  if (!bp.has_ground_truth()) throw Error(ErrorCode::NoGroundTruth, "problem carries no scene descriptions");
  if (i < 0 || j < 0 || i >= kImagesPerProblem || j >= kImagesPerProblem) {
    throw Error(ErrorCode::InvalidArgument, "image index outside 0..11");
  }
  const int threshold = size_threshold(bp.width(), bp.height());
  const FactorValues a = factor_values(bp.scenes()[i], threshold);
  const FactorValues b = factor_values(bp.scenes()[j], threshold);
  return (a.numerosity != b.numerosity) + (a.kinds != b.kinds) + (a.fills != b.fills) + (a.sizes != b.sizes) +
         (a.enclosure != b.enclosure);
}

// ---------------------------------------------------------------------------
// Text and JSON forms

namespace {

int parse_int(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

Atom parse_atom(std::string_view token, int canvas_w, int canvas_h) {
  const auto colon = token.find(':');
  const std::string_view name = token.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : token.substr(colon + 1);
  auto bad = [&] { return Error(ErrorCode::InvalidArgument, "unknown concept term '" + std::string(token) + "'"); };
  if (name == "fill") {
    if (arg.empty() || arg == "filled") return FillAtom{true};
    if (arg == "outline") return FillAtom{false};
    throw bad();
  }
  if (name == "numerosity") {
    if (arg.empty()) return NumerosityAtom{Comparison::Exactly, 1};
    if (arg.starts_with(">=")) return NumerosityAtom{Comparison::AtLeast, parse_int(arg.substr(2))};
    if (arg.starts_with("<=")) return NumerosityAtom{Comparison::AtMost, parse_int(arg.substr(2))};
    return NumerosityAtom{Comparison::Exactly, parse_int(arg)};
  }
  if (name == "shape") {
    const bool present = !arg.starts_with('!');
    const auto kind = parse_shape_kind(present ? arg : arg.substr(1));
    if (arg.empty()) return ShapeClassAtom{ShapeKind::Triangle, true};
    if (!kind) throw bad();
    return ShapeClassAtom{*kind, present};
  }
  if (name == "size") {
    const int threshold = size_threshold(canvas_w, canvas_h);
    if (arg.empty() || arg == "large") return SizeAtom{true, threshold};
    if (arg == "small") return SizeAtom{false, threshold};
    throw bad();
  }
  if (name == "enclosure") {
    if (arg.empty() || arg == "present") return EnclosureAtom{true};
    if (arg == "absent") return EnclosureAtom{false};
    throw bad();
  }
  throw bad();
}

std::string atom_to_string(const Atom& atom) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, NumerosityAtom>) {
          const char* prefix = a.cmp == Comparison::AtLeast ? ">=" : a.cmp == Comparison::AtMost ? "<=" : "";
          return "numerosity:" + std::string(prefix) + std::to_string(a.count);
        } else if constexpr (std::is_same_v<T, ShapeClassAtom>) {
          return "shape:" + std::string(a.present ? "" : "!") + std::string(to_string(a.kind));
        } else if constexpr (std::is_same_v<T, FillAtom>) {
          return a.filled ? "fill:filled" : "fill:outline";
        } else if constexpr (std::is_same_v<T, SizeAtom>) {
          return a.large ? "size:large" : "size:small";
        } else {
          return a.present ? "enclosure:present" : "enclosure:absent";
        }
      },
      atom);
}

std::string_view comparison_name(Comparison cmp) {
  switch (cmp) {
    case Comparison::Exactly: return "exactly";
    case Comparison::AtLeast: return "at_least";
    case Comparison::AtMost: return "at_most";
  }
  return "exactly";
}

json atom_to_json(const Atom& atom) {
  json j;
  j["factor"] = std::string(to_string(factor_of(atom)));
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, NumerosityAtom>) {
          j["comparison"] = std::string(comparison_name(a.cmp));
          j["count"] = a.count;
        } else if constexpr (std::is_same_v<T, ShapeClassAtom>) {
          j["kind"] = std::string(to_string(a.kind));
          j["present"] = a.present;
        } else if constexpr (std::is_same_v<T, FillAtom>) {
          j["filled"] = a.filled;
        } else if constexpr (std::is_same_v<T, SizeAtom>) {
          j["large"] = a.large;
          j["threshold"] = a.threshold;
        } else {
          j["present"] = a.present;
        }
      },
      atom);
  return j;
}

Atom atom_from_json(const json& j) {
  const std::string factor = j.at("factor").get<std::string>();
  if (factor == "numerosity") {
    const std::string cmp = j.at("comparison").get<std::string>();
    const Comparison c = cmp == "at_least" ? Comparison::AtLeast : cmp == "at_most" ? Comparison::AtMost : Comparison::Exactly;
    return NumerosityAtom{c, j.at("count").get<int>()};
  }
  if (factor == "shape") {
    const auto kind = parse_shape_kind(j.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorCode::MalformedFormat, "unknown shape kind in concept");
    return ShapeClassAtom{*kind, j.at("present").get<bool>()};
  }
  if (factor == "fill") return FillAtom{j.at("filled").get<bool>()};
  if (factor == "size") return SizeAtom{j.at("large").get<bool>(), j.at("threshold").get<int>()};
  if (factor == "enclosure") return EnclosureAtom{j.at("present").get<bool>()};
  throw Error(ErrorCode::MalformedFormat, "unknown factor '" + factor + "'");
}

}  // namespace

Concept parse_concept(std::string_view text, int canvas_w, int canvas_h) {
  Concept rule;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t plus = text.find('+', start);
    const std::string_view token = text.substr(start, plus == std::string_view::npos ? text.npos : plus - start);
    rule.atoms.push_back(parse_atom(token, canvas_w, canvas_h));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  validate(rule);
  return rule;
}

std::string concept_to_string(const Concept& rule) {
  std::string out;
  for (const Atom& atom : rule.atoms) {
    if (!out.empty()) out += '+';
    out += atom_to_string(atom);
  }
  return out;
}

json to_json(const Concept& rule) {
  json factors = json::array();
  for (const Atom& atom : rule.atoms) factors.push_back(atom_to_json(atom));
  return json{{"factors", factors}, {"k", rule.k()}};
}

Concept concept_from_json(const json& j) {
  Concept rule;
  for (const json& a : j.at("factors")) rule.atoms.push_back(atom_from_json(a));
  validate(rule);
  return rule;
}

json to_json(const SceneDescription& scene) {
  json shapes = json::array();
  for (const Shape& s : scene.shapes) {
    shapes.push_back({{"kind", std::string(to_string(s.kind))},
                      {"cx", s.cx},
                      {"cy", s.cy},
                      {"size", s.size},
                      {"filled", s.filled}});
  }
  json containment = json::array();
  for (const auto& [outer, inner] : scene.containment) containment.push_back({outer, inner});
  return json{{"shapes", shapes}, {"containment", containment}};
}

SceneDescription scene_from_json(const json& j) {
  std::vector<Shape> shapes;
  for (const json& s : j.at("shapes")) {
    const auto kind = parse_shape_kind(s.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorCode::MalformedFormat, "unknown shape kind in scene");
    shapes.push_back(Shape{*kind, s.at("cx").get<int>(), s.at("cy").get<int>(), s.at("size").get<int>(),
                           s.at("filled").get<bool>()});
  }
  return make_scene(std::move(shapes));
}

json concept_sidecar(const BongardProblem& bp) {
  if (!bp.solution()) throw Error(ErrorCode::NoGroundTruth, "problem carries no concept");
  json j = to_json(*bp.solution());
  json scenes = json::array();
  for (const SceneDescription& scene : bp.scenes()) scenes.push_back(to_json(scene));
  j["scenes"] = scenes;
  return j;
}

}  // namespace bongard

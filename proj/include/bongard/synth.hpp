#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "bongard/image.hpp"
#include "bongard/scene.hpp"
#include "json.hpp"

namespace bongard {

struct SynthConfig {
  int canvas_w = 32;
  int canvas_h = 32;
  int max_shapes = 4;
  std::uint64_t seed = 0;
  /// Derive right image j from left image j by mutating only the concept's factors.
  bool leading_pairs = false;
};

void validate(const SynthConfig& config);

/// Rejection-sampling attempts per image before giving up.
inline constexpr int kRetryBudget = 1000;

/// Outline shapes are drawn with this boundary width.
inline constexpr int kOutlineWidth = 2;

/// Shape sizes are even and drawn from [min_shape_size, max_shape_size].
int min_shape_size(int canvas_w, int canvas_h);
int max_shape_size(int canvas_w, int canvas_h);
/// Size boundary between "small" and "large" shapes on a canvas.
int size_threshold(int canvas_w, int canvas_h);

bool concept_predicate(const Concept& rule, const SceneDescription& scene);

/// Scene fits the canvas with a 1-pixel margin and shapes are either separated
/// by at least one blank pixel or properly nested inside an outline shape.
bool scene_is_valid(const SceneDescription& scene, int w, int h);

Image render_scene(const SceneDescription& scene, int w, int h);

BongardProblem generate_bp(const Concept& rule, const SynthConfig& config, int id = 0);

/// Number of factors in Γ whose ground-truth value differs between images i and j.
int factor_count(const BongardProblem& bp, int i, int j);

/// Compact concept syntax used by the CLI, e.g. "fill", "fill:outline",
/// "numerosity:3", "numerosity:>=2", "shape:triangle", "shape:!circle",
/// "size:large", "enclosure", "enclosure:absent", joined with '+'.
Concept parse_concept(std::string_view text, int canvas_w = 32, int canvas_h = 32);
std::string concept_to_string(const Concept& rule);

nlohmann::json to_json(const Concept& rule);
nlohmann::json to_json(const SceneDescription& scene);
SceneDescription scene_from_json(const nlohmann::json& j);
Concept concept_from_json(const nlohmann::json& j);

/// The sidecar written next to a generated problem:
/// {"factors":[...], "k":N, "scenes":[...]}.
nlohmann::json concept_sidecar(const BongardProblem& bp);

}  // namespace bongard

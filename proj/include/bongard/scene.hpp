#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bongard {

enum class ShapeKind : std::uint8_t { Circle, Square, Triangle };

/// One primitive of a synthetic scene. `size` is the side of the shape's
/// square bounding box in pixels; (cx, cy) is the box center on the pixel
/// grid (a pixel corner).
struct Shape {
  ShapeKind kind = ShapeKind::Circle;
  int cx = 0;
  int cy = 0;
  int size = 0;
  bool filled = true;

  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Half-open pixel box [x0, x1) x [y0, y1).
struct PixelBox {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

PixelBox bounding_box(const Shape& shape);

/// True when the continuous point (x, y) lies inside the solid shape.
bool covers(const Shape& shape, double x, double y);

struct SceneDescription {
  std::vector<Shape> shapes;
  /// (outer index, inner index) pairs; derived from `shapes`.
  std::vector<std::pair<int, int>> containment;

  friend bool operator==(const SceneDescription&, const SceneDescription&) = default;
};

/// Builds a scene and derives its containment relation.
SceneDescription make_scene(std::vector<Shape> shapes);

/// Outer encloses inner: inner box strictly inside outer box and inner center
/// inside the outer solid.
bool encloses(const Shape& outer, const Shape& inner);

/// Variational factors Γ.
enum class Factor : std::uint8_t { Numerosity, ShapeClass, Fill, Size, Enclosure };

inline constexpr Factor kAllFactors[] = {Factor::Numerosity, Factor::ShapeClass, Factor::Fill,
                                         Factor::Size, Factor::Enclosure};

enum class Comparison : std::uint8_t { Exactly, AtLeast, AtMost };

struct NumerosityAtom {
  Comparison cmp = Comparison::Exactly;
  int count = 1;
  friend bool operator==(const NumerosityAtom&, const NumerosityAtom&) = default;
};

/// `present`: at least one shape of `kind`; otherwise none of that kind.
struct ShapeClassAtom {
  ShapeKind kind = ShapeKind::Triangle;
  bool present = true;
  friend bool operator==(const ShapeClassAtom&, const ShapeClassAtom&) = default;
};

/// Every shape filled (filled = true) or every shape outlined.
struct FillAtom {
  bool filled = true;
  friend bool operator==(const FillAtom&, const FillAtom&) = default;
};

/// Every shape has size >= threshold (large) or < threshold (small).
struct SizeAtom {
  bool large = true;
  int threshold = 10;
  friend bool operator==(const SizeAtom&, const SizeAtom&) = default;
};

/// Some shape encloses another (present) or no enclosure at all.
struct EnclosureAtom {
  bool present = true;
  friend bool operator==(const EnclosureAtom&, const EnclosureAtom&) = default;
};

using Atom = std::variant<NumerosityAtom, ShapeClassAtom, FillAtom, SizeAtom, EnclosureAtom>;

Factor factor_of(const Atom& atom);

/// Ground-truth solution set K: a conjunction of atoms over distinct factors.
/// Left-group scenes satisfy it, right-group scenes violate it.
struct Concept {
  std::vector<Atom> atoms;

  /// k = |K|.
  std::size_t k() const { return atoms.size(); }
  bool uses(Factor factor) const;

  friend bool operator==(const Concept&, const Concept&) = default;
};

/// Throws Error(InvalidArgument) unless the concept is nonempty with distinct factors.
void validate(const Concept& rule);

std::string_view to_string(Factor factor);
std::string_view to_string(ShapeKind kind);
std::optional<ShapeKind> parse_shape_kind(std::string_view name);

}  // namespace bongard
